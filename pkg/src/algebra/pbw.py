"""
FilePath: /lie_quotient_rep/src/algebra/pbw.py
Description:
    U(m) 中的稀疏运算（PBW 标准单项式基）

    - Monomial 为指数元组 α，对应 x_1^α_1 ⋯ x_d^α_d（生成元下标递增）
    - straighten: x_i · X^α 按 x_i x_j - x_j x_i = [x_i, x_j] 规范化
    - derive: p 中元素 δ 以导子方式作用于 U(m)
    - 规范化与导子作用都用 MemoCache 记忆化，结果与是否命中缓存无关

    使用示例:
        env = EnvelopingAlgebra(heisenberg(1))
        y_times_x = env.mult_generator(1, UElement.generator(3, 0))   # xy - z
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.algebra.filtration import INFINITY, Weight, WeightVector
from src.algebra.liealg import LieAlgebra, as_vector, bracket, change_basis
from src.core.cache import MemoCache
from src.core.errors import BracketLeavesIdealError, DimensionMismatchError, NonPositiveWeightError
from src.core.exactalg import ZERO, Matrix, ScalarLike, Vector, format_scalar, parse_scalar, solve

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Terms = Tuple[Tuple[Monomial, Fraction], ...]


# ==================== UElement ====================


@dataclass(frozen=True)
class UElement:
    """标准单项式的稀疏线性组合；不存零系数，零元为空表"""

    terms: Dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {tuple(a): parse_scalar(c) for a, c in self.terms.items()}
        object.__setattr__(self, "terms", {a: c for a, c in cleaned.items() if c != 0})

    @classmethod
    def zero(cls) -> "UElement":
        return cls()

    @classmethod
    def one(cls, n: int) -> "UElement":
        return cls({(0,) * n: Fraction(1)})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coefficient: ScalarLike = 1) -> "UElement":
        return cls({tuple(alpha): parse_scalar(coefficient)})

    @classmethod
    def generator(cls, n: int, i: int, coefficient: ScalarLike = 1) -> "UElement":
        alpha = [0] * n
        alpha[i] = 1
        return cls.monomial(alpha, coefficient)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Monomial, Fraction]]) -> "UElement":
        acc: Dict[Monomial, Fraction] = {}
        for alpha, c in terms:
            acc[alpha] = acc.get(alpha, ZERO) + c
        return cls(acc)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(alpha), ZERO)

    def monomials(self) -> List[Monomial]:
        return sorted(self.terms, key=grlex_key)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "UElement") -> "UElement":
        return UElement.from_terms(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "UElement") -> "UElement":
        return self + (-other)

    def __neg__(self) -> "UElement":
        return UElement({a: -c for a, c in self.terms.items()})

    def scale(self, c: ScalarLike) -> "UElement":
        c = parse_scalar(c)
        return UElement({a: c * v for a, v in self.terms.items()})

    def __rmul__(self, c: ScalarLike) -> "UElement":
        return self.scale(c)

    __hash__ = None


def grlex_key(alpha: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """分级字典序：先总次数，再按 x1 的指数从大到小"""
    return sum(alpha), tuple(-a for a in alpha)


def format_monomial(alpha: Sequence[int]) -> str:
    parts = []
    for j, a in enumerate(alpha):
        if a == 1:
            parts.append(f"x{j + 1}")
        elif a > 1:
            parts.append(f"x{j + 1}^{a}")
    return "*".join(parts) if parts else "1"


def format_element(x: UElement) -> str:
    if x.is_zero():
        return "0"
    pieces = []
    for alpha in x.monomials():
        c = x.terms[alpha]
        mono = format_monomial(alpha)
        if c == 1:
            pieces.append(mono)
        elif c == -1:
            pieces.append(f"-{mono}")
        else:
            pieces.append(f"{format_scalar(c)}*{mono}" if mono != "1" else format_scalar(c))
    return " + ".join(pieces).replace("+ -", "- ")


def _accumulate(acc: Dict[Monomial, Fraction], terms: Terms, c: Fraction) -> None:
    for alpha, v in terms:
        value = acc.get(alpha, ZERO) + c * v
        if value:
            acc[alpha] = value
        else:
            acc.pop(alpha, None)


# ==================== EnvelopingAlgebra ====================


class EnvelopingAlgebra:
    """
    U(L) 的左乘规范化

    x_i · X^α：设 j 为 α 中最小的非零下标
      - i ≤ j: 已是标准序，结果为 X^{α+e_i}
      - i > j: x_i x_j X^β = x_j (x_i X^β) + [x_i, x_j] X^β，其中 β = α - e_j
    """

    def __init__(self, algebra: LieAlgebra, cache: Optional[MemoCache] = None):
        self.algebra = algebra
        self.dim = algebra.dim
        self.cache = cache if cache is not None else MemoCache(name=f"straighten:{algebra.name}")

    def times_monomial(self, i: int, alpha: Monomial) -> Terms:
        return self.cache.get_or_compute((i, alpha), lambda: self._straighten(i, alpha))

    def _straighten(self, i: int, alpha: Monomial) -> Terms:
        j = next((k for k, a in enumerate(alpha) if a), None)
        if j is None or i <= j:
            result = list(alpha)
            result[i] += 1
            return ((tuple(result), Fraction(1)),)
        rest = list(alpha)
        rest[j] -= 1
        rest = tuple(rest)
        acc: Dict[Monomial, Fraction] = {}
        for beta, c in self.times_monomial(i, rest):
            _accumulate(acc, self.times_monomial(j, beta), c)
        for k, c in self.algebra.structure(i, j):
            _accumulate(acc, self.times_monomial(k, rest), c)
        return tuple(acc.items())

    def _check(self, x: UElement) -> None:
        for alpha in x.terms:
            if len(alpha) != self.dim:
                raise DimensionMismatchError(self.dim, len(alpha), "monomial")

    def mult_generator(self, i: int, x: UElement) -> UElement:
        """x_i · X 的 PBW 标准形"""
        if not 0 <= i < self.dim:
            raise ValueError(f"generator index {i} out of range for dimension {self.dim}")
        self._check(x)
        acc: Dict[Monomial, Fraction] = {}
        for alpha, c in x.terms.items():
            _accumulate(acc, self.times_monomial(i, alpha), c)
        return UElement(acc)

    def left_multiply(self, v: Sequence[ScalarLike], x: UElement) -> UElement:
        """v · X，v 为 L 中任意向量（基坐标）"""
        v = as_vector(v, self.dim)
        self._check(x)
        acc: Dict[Monomial, Fraction] = {}
        for i, a in enumerate(v):
            if not a:
                continue
            for alpha, c in x.terms.items():
                _accumulate(acc, self.times_monomial(i, alpha), a * c)
        return UElement(acc)

    def product(self, x: UElement, y: UElement) -> UElement:
        """X · Y（X 的单项式从右往左逐个左乘）"""
        self._check(x)
        result = UElement.zero()
        for alpha, c in x.terms.items():
            term = y
            for i in reversed(range(self.dim)):
                for _ in range(alpha[i]):
                    term = self.mult_generator(i, term)
            result = result + term.scale(c)
        return result


def straighten_mult(
    algebra: LieAlgebra, i: int, x: UElement, enveloping: Optional[EnvelopingAlgebra] = None
) -> UElement:
    enveloping = enveloping or EnvelopingAlgebra(algebra)
    return enveloping.mult_generator(i, x)


# ==================== 半直积作用 ====================


class SemidirectModule:
    """
    g = p ⋉ m 在 U(m) 上的作用

    m 由 g 中的一组基向量给出（通常是适配基），U(m) 的生成元 x_j 依次对应；
    p 中元素以导子作用：δ ∗ (x_{i1} ⋯ x_{it}) = Σ x_{i1} ⋯ [δ, x_{ij}] ⋯ x_{it}。
    """

    def __init__(
        self,
        algebra: LieAlgebra,
        m_basis: Sequence[Sequence[ScalarLike]],
        cache: Optional[MemoCache] = None,
    ):
        self.algebra = algebra
        self.m_basis = [as_vector(v, algebra.dim) for v in m_basis]
        self.dim = len(self.m_basis)
        self.m_algebra = change_basis(
            algebra, self.m_basis, name=f"{algebra.name}|m", labels=[f"x{j + 1}" for j in range(self.dim)]
        )
        self.enveloping = EnvelopingAlgebra(self.m_algebra, cache)
        self._columns = Matrix.from_rows(
            [tuple(v[k] for v in self.m_basis) for k in range(algebra.dim)], cols=self.dim
        )
        self._derivation_cache = MemoCache(name=f"derive:{algebra.name}")

    def m_coordinates(self, v: Sequence[ScalarLike]) -> Optional[Vector]:
        """g 中向量在 m 基下的坐标；不在 m 中时返回 None"""
        v = as_vector(v, self.algebra.dim)
        if self.dim == 0:
            return () if all(a == 0 for a in v) else None
        return solve(self._columns, v)

    def derivation_matrix(self, delta: Sequence[ScalarLike]) -> Matrix:
        """
        ad(δ) 限制在 m 上的矩阵，第 j 列为 [δ, x_j] 的 m 坐标

        Raises:
            BracketLeavesIdealError: [δ, x_j] ∉ m
        """
        delta = as_vector(delta, self.algebra.dim)
        return self._derivation_cache.get_or_compute(("matrix", delta), lambda: self._derivation_matrix(delta))

    def _derivation_matrix(self, delta: Vector) -> Matrix:
        items: Dict[Tuple[int, int], Fraction] = {}
        for j, x in enumerate(self.m_basis):
            coords = self.m_coordinates(bracket(self.algebra, delta, x))
            if coords is None:
                logger.error("Bracket of derivation with generator %d leaves m", j)
                raise BracketLeavesIdealError(j)
            for k, c in enumerate(coords):
                if c:
                    items[(k, j)] = c
        return Matrix.from_sparse(self.dim, self.dim, items)

    def multiply(self, x: Sequence[ScalarLike], element: UElement) -> UElement:
        """m 中元素（g 坐标）左乘"""
        coords = self.m_coordinates(x)
        if coords is None:
            raise BracketLeavesIdealError(-1)
        return self.enveloping.left_multiply(coords, element)

    def derive(self, delta: Sequence[ScalarLike], element: UElement) -> UElement:
        delta = as_vector(delta, self.algebra.dim)
        matrix = self.derivation_matrix(delta)
        acc: Dict[Monomial, Fraction] = {}
        for alpha, c in element.terms.items():
            _accumulate(acc, self._derive_monomial(delta, matrix, alpha), c)
        return UElement(acc)

    def _derive_monomial(self, delta: Vector, matrix: Matrix, alpha: Monomial) -> Terms:
        return self._derivation_cache.get_or_compute(
            (delta, alpha), lambda: self._compute_derivation(delta, matrix, alpha)
        )

    def _compute_derivation(self, delta: Vector, matrix: Matrix, alpha: Monomial) -> Terms:
        # δ(x_j X^β) = [δ, x_j] X^β + x_j δ(X^β)，j 为 α 的最小下标
        j = next((k for k, a in enumerate(alpha) if a), None)
        if j is None:
            return ()
        rest = list(alpha)
        rest[j] -= 1
        rest = tuple(rest)
        acc: Dict[Monomial, Fraction] = {}
        image = self.enveloping.left_multiply(matrix.column(j), UElement({rest: Fraction(1)}))
        _accumulate(acc, tuple(image.terms.items()), Fraction(1))
        for beta, c in self._derive_monomial(delta, matrix, rest):
            _accumulate(acc, self.enveloping.times_monomial(j, beta), c)
        return tuple(acc.items())


def derive(module: SemidirectModule, delta: Sequence[ScalarLike], x: UElement) -> UElement:
    return module.derive(delta, x)


# ==================== 权与有界枚举 ====================


def mono_weight(w: WeightVector, alpha: Sequence[int]) -> Weight:
    """ω(X^α) = Σ α_j ω(x_j)"""
    if len(alpha) != len(w):
        raise DimensionMismatchError(len(w), len(alpha), "monomial")
    total: Weight = 0
    for a, weight in zip(alpha, w):
        if a:
            total += a * weight
    return total


def elem_weight(w: WeightVector, x: UElement) -> Weight:
    if x.is_zero():
        return INFINITY
    return min(mono_weight(w, alpha) for alpha in x.terms)


def enumerate_bounded(w1: WeightVector, b1: int, w2: WeightVector, b2: int) -> List[Monomial]:
    """
    所有满足 ω1(α) ≤ b1 且 ω2(α) ≤ b2 的单项式，按分级字典序

    Raises:
        NonPositiveWeightError: w1 有非正分量（枚举不有限）
    """
    if len(w1) != len(w2):
        raise DimensionMismatchError(len(w1), len(w2), "weight vector")
    for j, weight in enumerate(w1):
        if weight < 1:
            raise NonPositiveWeightError(j)
    n = len(w1)
    found: List[Monomial] = []
    if b1 < 0 or b2 < 0:
        return found
    prefix: List[int] = []

    def visit(pos: int, budget1: Weight, budget2: Weight) -> None:
        if pos == n:
            found.append(tuple(prefix))
            return
        a = 0
        while True:
            prefix.append(a)
            visit(pos + 1, budget1, budget2)
            prefix.pop()
            budget1 -= w1[pos]
            budget2 -= w2[pos]
            if budget1 < 0 or budget2 < 0:
                break
            a += 1

    visit(0, b1, b2)
    found.sort(key=grlex_key)
    logger.debug("Enumerated %d monomials with budgets (%s, %s)", len(found), b1, b2)
    return found


def monomial_filter(w1: WeightVector, k1: int, w2: WeightVector, k2: int) -> Callable[[Monomial], bool]:
    """保留条件：ω1 < k1 且 ω2 < k2"""

    def keep(alpha: Monomial) -> bool:
        return mono_weight(w1, alpha) < k1 and mono_weight(w2, alpha) < k2

    return keep
