"""
FilePath: /lie_quotient_rep/src/algebra/filtration.py
Description:
    滤过、权向量与双旗弱适配基

    - Filtration: 递降子空间列 [F(0), F(1), ...]，超出列表的下标取最后一项
    - (g, h)-滤过: F(0) = G, F(1) = H, F(i) = H 的下中心列第 i 项
    - 长度滤过 [M, M, 0] 给出长度权 λ
    - ∞ 用 math.inf 表示，只出现在零向量（或不终止于 0 的滤过的稳定项）上
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from src.algebra.liealg import (
    LieAlgebra,
    Subspace,
    as_vector,
    is_ideal,
    lower_central_series,
    product_space,
)
from src.core.errors import (
    BasisNotAdaptedError,
    DimensionMismatchError,
    FiltrationConditionError,
    FlagError,
    NotAnIdealError,
    NotContainedError,
)
from src.core.exactalg import ScalarLike, Vector, is_zero_vector

logger = logging.getLogger(__name__)

INFINITY = math.inf

Weight = Union[int, float]


@dataclass(frozen=True)
class Filtration:
    ambient: Optional[LieAlgebra]
    spaces: Tuple[Subspace, ...]

    def __post_init__(self):
        spaces = tuple(self.spaces)
        if not spaces:
            raise FlagError("filtration needs at least one subspace")
        n = spaces[0].ambient_dim
        for t, space in enumerate(spaces):
            if space.ambient_dim != n:
                raise DimensionMismatchError(n, space.ambient_dim, f"F({t})")
            if t and not spaces[t - 1].includes(space):
                raise FlagError(f"filtration is not descending at F({t})")
        object.__setattr__(self, "spaces", spaces)

    @property
    def ambient_dim(self) -> int:
        return self.spaces[0].ambient_dim

    def at(self, t: int) -> Subspace:
        if t < 0:
            raise ValueError(f"filtration index must be nonnegative, got {t}")
        return self.spaces[t] if t < len(self.spaces) else self.spaces[-1]

    @property
    def positive(self) -> bool:
        return self.at(0) == self.at(1)

    @property
    def terminates_at_zero(self) -> bool:
        return self.spaces[-1].is_zero()

    def dims(self) -> List[int]:
        return [space.dim for space in self.spaces]

    def check_condition(self, algebra: Optional[LieAlgebra] = None) -> None:
        """
        [F(i), F(j)] ⊆ F(i+j)，对所有存储的 i, j

        Raises:
            FiltrationConditionError: 携带第一个违反的 (i, j)
        """
        algebra = algebra or self.ambient
        if algebra is None:
            raise ValueError("filtration condition needs an ambient Lie algebra")
        count = len(self.spaces)
        for i in range(count):
            for j in range(i, count):
                product = product_space(algebra, self.at(i), self.at(j))
                if not self.at(i + j).includes(product):
                    raise FiltrationConditionError(i, j)


@dataclass(frozen=True)
class WeightVector:
    weights: Tuple[Weight, ...]

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, j: int) -> Weight:
        return self.weights[j]

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.weights)

    def is_positive(self) -> bool:
        return all(w >= 1 for w in self.weights)

    def as_list(self) -> List[Union[int, str]]:
        return ["inf" if w == INFINITY else int(w) for w in self.weights]


# ==================== 构造滤过 ====================


def ideal_filtration(algebra: LieAlgebra, g: Subspace, h: Subspace) -> Filtration:
    """
    (G, H)-滤过 [G, H, H_2, H_3, ...]，截断到 0 或稳定项

    Raises:
        NotContainedError: H ⊄ G
        NotAnIdealError: [G, H] ⊄ H
        FiltrationConditionError: 滤过条件不成立
    """
    if not g.includes(h):
        raise NotContainedError("ideal must be contained in the filtered subalgebra")
    if not h.includes(product_space(algebra, g, h)):
        logger.error("Subspace of dimension %d is not an ideal of G", h.dim)
        raise NotAnIdealError("H is not an ideal of G")
    series = lower_central_series(algebra, h)
    filtration = Filtration(algebra, (g, *series))
    filtration.check_condition()
    logger.debug("Ideal filtration dims: %s", filtration.dims())
    return filtration


def length_filtration(m: Subspace, algebra: Optional[LieAlgebra] = None) -> Filtration:
    """[M, M, 0]，每个基向量的权都是 1"""
    return Filtration(algebra, (m, m, Subspace.zero(m.ambient_dim)))


# ==================== 双旗弱适配基 ====================


def _check_flag(flag: Sequence[Subspace], n: int, name: str) -> None:
    if not flag:
        raise FlagError(f"{name} is empty")
    for t, space in enumerate(flag):
        if space.ambient_dim != n:
            raise DimensionMismatchError(n, space.ambient_dim, f"{name}[{t}]")
        if t and not flag[t - 1].includes(space):
            raise FlagError(f"{name} is not descending at position {t}")
    if not flag[0].is_full():
        raise FlagError(f"{name} must start with the full space")


def adapt_two_flags(flag_a: Sequence[Subspace], flag_b: Sequence[Subspace]) -> List[Vector]:
    """
    构造同时弱适配于两个旗的基

    对 (i, j) 按 i+j 递减（相同时 i 递减）扫描，把
    A_{i+1}∩B_j + A_i∩B_{j+1} 的基扩充为 A_i∩B_j 的基，收集新增向量。
    各组按收集的逆序拼接，组内保持 rref 行序。

    Raises:
        FlagError: 旗不递降或首项不是全空间
        DimensionMismatchError: 两个旗的环境维数不同
    """
    if not flag_a or not flag_b:
        raise FlagError("flags must be non-empty")
    n = flag_a[0].ambient_dim
    _check_flag(flag_a, n, "flag A")
    _check_flag(flag_b, n, "flag B")

    zero = Subspace.zero(n)
    a_ext = list(flag_a) + [zero]
    b_ext = list(flag_b) + [zero]
    pairs = [(i, j) for i in range(len(flag_a)) for j in range(len(flag_b))]
    pairs.sort(key=lambda ij: (-(ij[0] + ij[1]), -ij[0]))

    groups: List[List[Vector]] = []
    for i, j in pairs:
        whole = a_ext[i].intersection(b_ext[j])
        if whole.is_zero():
            continue
        covered = a_ext[i + 1].intersection(b_ext[j]) + a_ext[i].intersection(b_ext[j + 1])
        if covered.dim == whole.dim:
            continue
        group: List[Vector] = []
        current = covered
        for v in whole.basis:
            if not current.contains(v):
                group.append(v)
                current = current + Subspace.span([v], n)
            if current.dim == whole.dim:
                break
        groups.append(group)

    basis = [v for group in reversed(groups) for v in group]
    if len(basis) != n:
        raise FlagError(f"adapted basis has {len(basis)} vectors, expected {n}")
    return basis


def is_weakly_adapted(space: Subspace, basis: Sequence[Vector]) -> bool:
    members = [v for v in basis if space.contains(v)]
    return len(members) == space.dim and Subspace.span(members, space.ambient_dim).dim == space.dim


# ==================== 权 ====================


def weight_of_vector(filtration: Filtration, v: Sequence[ScalarLike]) -> Weight:
    """
    ω(v) = sup{t : v ∈ F(t)}

    Raises:
        NotContainedError: v ∉ F(0)
    """
    v = as_vector(v, filtration.ambient_dim)
    if is_zero_vector(v):
        return INFINITY
    if not filtration.at(0).contains(v):
        raise NotContainedError("vector is not in F(0)")
    weight = 0
    for t, space in enumerate(filtration.spaces):
        if not space.contains(v):
            break
        weight = t
    else:
        # 落在最后一个（非零稳定）项中
        return INFINITY
    return weight


def weights_from_filtration(filtration: Filtration, basis: Sequence[Sequence[ScalarLike]]) -> WeightVector:
    """
    基向量的权

    Raises:
        BasisNotAdaptedError: 某个 F(t) 不由属于它的基向量张成
    """
    vectors = [as_vector(v, filtration.ambient_dim) for v in basis]
    for t, space in enumerate(filtration.spaces):
        if not is_weakly_adapted(space, vectors):
            raise BasisNotAdaptedError(t)
    return WeightVector(tuple(weight_of_vector(filtration, v) for v in vectors))
