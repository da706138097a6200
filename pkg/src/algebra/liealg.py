"""
FilePath: /lie_quotient_rep/src/algebra/liealg.py
Description:
    李代数（结构常数）与子空间运算

    - LieAlgebra 只存 i < j 的结构常数，反对称性由存储约定保证，validate 只检查 Jacobi
    - Subspace 以规范 rref 行为基，相等 / 包含判断都是纯矩阵运算
    - 幂零根基不做一般计算：幂零代数的幂零根基即自身，其他情况由用户声明维数

    使用示例:
        from src.algebra.families import heisenberg

        h3 = heisenberg(1)
        full = Subspace.full(h3.dim)
        series = lower_central_series(h3, full)   # [h3, span{z}, 0]
        nilpotency_class(h3, full)                 # 2
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import (
    DimensionMismatchError,
    NotASubalgebraError,
    NotContainedError,
    NotNilpotentError,
    SelfCheckError,
)
from src.core.exactalg import (
    ZERO,
    Matrix,
    ScalarLike,
    Vector,
    is_zero_vector,
    kernel_basis,
    linear_combination,
    parse_scalar,
    row_reduce,
    solve,
    unit_vector,
)

logger = logging.getLogger(__name__)

BracketTerms = Tuple[Tuple[int, Fraction], ...]


def as_vector(values: Sequence[ScalarLike], n: int) -> Vector:
    vector = tuple(parse_scalar(x) for x in values)
    if len(vector) != n:
        raise DimensionMismatchError(n, len(vector))
    return vector


# ==================== LieAlgebra ====================


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    dim: int
    basis_labels: Tuple[str, ...]
    brackets: Mapping[Tuple[int, int], BracketTerms]

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError(f"invalid dimension: {self.dim}")
        if len(self.basis_labels) != self.dim:
            raise DimensionMismatchError(self.dim, len(self.basis_labels), "basis labels")
        cleaned: Dict[Tuple[int, int], BracketTerms] = {}
        for (i, j), terms in self.brackets.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < {self.dim}")
            merged: Dict[int, Fraction] = {}
            for k, c in terms:
                if not 0 <= k < self.dim:
                    raise ValueError(f"bracket [{i}, {j}] has target index {k} out of range")
                merged[k] = merged.get(k, ZERO) + parse_scalar(c)
            nonzero = tuple(sorted((k, c) for k, c in merged.items() if c != 0))
            if nonzero:
                cleaned[(i, j)] = nonzero
        object.__setattr__(self, "brackets", cleaned)

    @classmethod
    def from_table(
        cls,
        name: str,
        dim: int,
        table: Mapping[Tuple[int, int], Mapping[int, ScalarLike]],
        labels: Optional[Sequence[str]] = None,
    ) -> "LieAlgebra":
        """
        由 {(i, j): {k: c}} 构造；i > j 的条目按反对称取负存入 (j, i)

        Raises:
            ValueError: i == j 且系数非零
        """
        brackets: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
        for (i, j), terms in table.items():
            if i == j:
                if any(parse_scalar(c) != 0 for c in terms.values()):
                    raise ValueError(f"[x_{i}, x_{i}] must be zero")
                continue
            sign = 1 if i < j else -1
            key = (min(i, j), max(i, j))
            brackets.setdefault(key, []).extend(
                (k, sign * parse_scalar(c)) for k, c in terms.items()
            )
        if labels is None:
            labels = [f"x{k + 1}" for k in range(dim)]
        return cls(name, dim, tuple(labels), {k: tuple(v) for k, v in brackets.items()})

    @cached_property
    def _table(self) -> List[List[BracketTerms]]:
        table: List[List[BracketTerms]] = [[() for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), terms in self.brackets.items():
            table[i][j] = terms
            table[j][i] = tuple((k, -c) for k, c in terms)
        return table

    def structure(self, i: int, j: int) -> BracketTerms:
        """[x_i, x_j] 的稀疏展开 ((k, c_ij^k), ...)"""
        return self._table[i][j]

    def bracket_basis(self, i: int, j: int) -> Vector:
        result = [ZERO] * self.dim
        for k, c in self.structure(i, j):
            result[k] = c
        return tuple(result)

    def is_abelian(self) -> bool:
        return not self.brackets

    def same_structure(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and dict(self.brackets) == dict(other.brackets)

    def __repr__(self) -> str:
        return f"LieAlgebra(name={self.name!r}, dim={self.dim}, brackets={len(self.brackets)})"


# ==================== Subspace ====================


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis_matrix: Matrix

    def __post_init__(self):
        if self.basis_matrix.cols != self.ambient_dim:
            raise DimensionMismatchError(self.ambient_dim, self.basis_matrix.cols, "subspace")

    @classmethod
    def span(cls, vectors: Iterable[Sequence[ScalarLike]], ambient_dim: int) -> "Subspace":
        rows, _ = row_reduce(vectors, ambient_dim)
        return cls(ambient_dim, Matrix.from_rows(rows, cols=ambient_dim))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Matrix.zero(0, n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n))

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int) -> "Subspace":
        indices = sorted(set(indices))
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"coordinate index {i} out of range for dimension {n}")
        return cls.span([unit_vector(n, i) for i in indices], n)

    @property
    def dim(self) -> int:
        return self.basis_matrix.rows

    @property
    def basis(self) -> Tuple[Vector, ...]:
        return tuple(self.basis_matrix.to_rows())

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        pivots = []
        for row in self.basis_matrix.to_rows():
            pivots.append(next(k for k, a in enumerate(row) if a != 0))
        return tuple(pivots)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _residual(self, v: Sequence[Fraction]) -> List[Fraction]:
        residual = list(v)
        for row, p in zip(self.basis_matrix.to_rows(), self.pivots):
            c = residual[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        residual[k] -= c * a
        return residual

    def contains(self, v: Sequence[ScalarLike]) -> bool:
        v = as_vector(v, self.ambient_dim)
        return is_zero_vector(self._residual(v))

    def includes(self, other: "Subspace") -> bool:
        """other ⊆ self"""
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(self.ambient_dim, other.ambient_dim, "subspace")
        if other.dim > self.dim:
            return False
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence[ScalarLike]) -> Vector:
        """
        v 在规范基下的坐标（即主元列上的分量）

        Raises:
            NotContainedError: v 不在子空间中
        """
        v = as_vector(v, self.ambient_dim)
        if not self.contains(v):
            raise NotContainedError("vector is not contained in the subspace")
        return tuple(v[p] for p in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(self.ambient_dim, other.ambient_dim, "subspace")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(self.ambient_dim, other.ambient_dim, "subspace")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        # Σ a_r A_r = Σ b_s B_s
        a_basis, b_basis = self.basis, other.basis
        columns = list(a_basis) + [tuple(-x for x in v) for v in b_basis]
        system = Matrix.from_rows(
            [tuple(col[k] for col in columns) for k in range(self.ambient_dim)],
            cols=len(columns),
        )
        vectors = [
            linear_combination(coeffs[: len(a_basis)], a_basis, self.ambient_dim)
            for coeffs in kernel_basis(system)
        ]
        return Subspace.span(vectors, self.ambient_dim)

    def annihilator(self) -> List[Vector]:
        """线性泛函 f 的基，满足 f·v = 0 对所有 v ∈ self"""
        if self.is_zero():
            return [unit_vector(self.ambient_dim, k) for k in range(self.ambient_dim)]
        return kernel_basis(self.basis_matrix)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


# ==================== 基本运算 ====================


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triple: Optional[Tuple[int, int, int]] = None
    defect: Optional[Vector] = None

    def __bool__(self) -> bool:
        return self.ok


def bracket(algebra: LieAlgebra, u: Sequence[ScalarLike], v: Sequence[ScalarLike]) -> Vector:
    u = as_vector(u, algebra.dim)
    v = as_vector(v, algebra.dim)
    result = [ZERO] * algebra.dim
    v_support = [(j, b) for j, b in enumerate(v) if b]
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in v_support:
            for k, c in algebra.structure(i, j):
                result[k] += a * b * c
    return tuple(result)


def _bracket_basis_vector(algebra: LieAlgebra, i: int, v: Vector) -> Vector:
    result = [ZERO] * algebra.dim
    for j, b in enumerate(v):
        if b:
            for k, c in algebra.structure(i, j):
                result[k] += b * c
    return tuple(result)


def validate(algebra: LieAlgebra) -> JacobiReport:
    """
    检查所有 i < j < k 的 Jacobi 恒等式

    Returns:
        JacobiReport；失败时携带第一个违反的三元组与非零缺陷向量
    """
    n = algebra.dim
    for i, j, k in itertools.combinations(range(n), 3):
        terms = (
            _bracket_basis_vector(algebra, i, algebra.bracket_basis(j, k)),
            _bracket_basis_vector(algebra, j, algebra.bracket_basis(k, i)),
            _bracket_basis_vector(algebra, k, algebra.bracket_basis(i, j)),
        )
        defect = tuple(sum(parts, ZERO) for parts in zip(*terms))
        if not is_zero_vector(defect):
            logger.info("Jacobi violation in %s at triple (%d, %d, %d)", algebra.name, i, j, k)
            return JacobiReport(ok=False, triple=(i, j, k), defect=defect)
    logger.debug("Jacobi identity holds for %s", algebra.name)
    return JacobiReport(ok=True)


def _check_ambient(algebra: LieAlgebra, *spaces: Subspace) -> None:
    for space in spaces:
        if space.ambient_dim != algebra.dim:
            raise DimensionMismatchError(algebra.dim, space.ambient_dim, "subspace")


def product_space(algebra: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """[A, B] = span{[a, b] : a ∈ basis(A), b ∈ basis(B)}"""
    _check_ambient(algebra, a, b)
    products = [bracket(algebra, u, v) for u in a.basis for v in b.basis]
    return Subspace.span(products, algebra.dim)


def is_subalgebra(algebra: LieAlgebra, a: Subspace) -> bool:
    return a.includes(product_space(algebra, a, a))


def is_ideal(algebra: LieAlgebra, a: Subspace) -> bool:
    return a.includes(product_space(algebra, Subspace.full(algebra.dim), a))


def lower_central_series(algebra: LieAlgebra, h: Optional[Subspace] = None) -> List[Subspace]:
    """
    h_1 = H, h_{i+1} = [H, h_i]，直到为 0 或稳定

    Returns:
        [h_1, h_2, ...]；以零子空间结尾（幂零），或以稳定的非零子空间结尾

    Raises:
        NotASubalgebraError: H 对括号不封闭
    """
    h = h if h is not None else Subspace.full(algebra.dim)
    _check_ambient(algebra, h)
    if not is_subalgebra(algebra, h):
        raise NotASubalgebraError("lower central series requires a subalgebra")
    series = [h]
    for _ in range(2 * algebra.dim + 1):
        if series[-1].is_zero():
            break
        nxt = product_space(algebra, h, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    logger.debug("Lower central series dims: %s", [s.dim for s in series])
    return series


def nilpotency_class(algebra: LieAlgebra, h: Optional[Subspace] = None) -> int:
    """
    c(H)：下中心列中最后一个非零项的下标（零子空间为 0）

    Raises:
        NotNilpotentError: 下中心列稳定在非零子空间
    """
    series = lower_central_series(algebra, h)
    if not series[-1].is_zero():
        raise NotNilpotentError(
            f"lower central series stabilizes at dimension {series[-1].dim}",
            stable_dim=series[-1].dim,
        )
    return len(series) - 1


def is_nilpotent(algebra: LieAlgebra, h: Optional[Subspace] = None) -> bool:
    return lower_central_series(algebra, h)[-1].is_zero()


def derived_series(algebra: LieAlgebra, h: Optional[Subspace] = None) -> List[Subspace]:
    h = h if h is not None else Subspace.full(algebra.dim)
    _check_ambient(algebra, h)
    series = [h]
    for _ in range(algebra.dim + 1):
        if series[-1].is_zero():
            break
        nxt = product_space(algebra, series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_solvable(algebra: LieAlgebra, h: Optional[Subspace] = None) -> bool:
    return derived_series(algebra, h)[-1].is_zero()


def centralizer(
    algebra: LieAlgebra,
    p: Subspace,
    m: Subspace,
    target: Optional[Subspace] = None,
) -> Subspace:
    """
    {x ∈ P : [x, M] ⊆ target}，target 默认为 0

    center、action_kernel、上中心列都由它得到。
    """
    target = target if target is not None else Subspace.zero(algebra.dim)
    _check_ambient(algebra, p, m, target)
    if p.is_zero():
        return Subspace.zero(algebra.dim)
    p_basis = p.basis
    functionals = target.annihilator()
    rows = []
    for y in m.basis:
        images = [bracket(algebra, x, y) for x in p_basis]
        for f in functionals:
            rows.append(tuple(sum((a * b for a, b in zip(f, image)), ZERO) for image in images))
    system = Matrix.from_rows(rows, cols=len(p_basis))
    vectors = [linear_combination(c, p_basis, algebra.dim) for c in kernel_basis(system)]
    return Subspace.span(vectors, algebra.dim)


def center(algebra: LieAlgebra) -> Subspace:
    full = Subspace.full(algebra.dim)
    return centralizer(algebra, full, full)


def upper_central_series(algebra: LieAlgebra) -> List[Subspace]:
    """Z_0 = 0, Z_{i+1} = {x : [x, g] ⊆ Z_i}，直到稳定"""
    full = Subspace.full(algebra.dim)
    series = [Subspace.zero(algebra.dim)]
    for _ in range(algebra.dim + 1):
        nxt = centralizer(algebra, full, full, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def action_kernel(algebra: LieAlgebra, p: Subspace, m: Subspace) -> Subspace:
    """p 在 m 上作用的核 {x ∈ P : [x, M] = 0}"""
    return centralizer(algebra, p, m)


def adjoint_matrix(algebra: LieAlgebra, v: Sequence[ScalarLike]) -> Matrix:
    """ad(v)，第 j 列为 [v, x_j] 的坐标"""
    v = as_vector(v, algebra.dim)
    n = algebra.dim
    items: Dict[Tuple[int, int], Fraction] = {}
    for i, a in enumerate(v):
        if not a:
            continue
        for j in range(n):
            for k, c in algebra.structure(i, j):
                items[(k, j)] = items.get((k, j), ZERO) + a * c
    return Matrix.from_sparse(n, n, items)


def killing_form(algebra: LieAlgebra) -> Matrix:
    """κ(x_i, x_j) = tr(ad x_i · ad x_j)"""
    n = algebra.dim
    ad: List[Dict[Tuple[int, int], Fraction]] = []
    for i in range(n):
        entries: Dict[Tuple[int, int], Fraction] = {}
        for j in range(n):
            for k, c in algebra.structure(i, j):
                entries[(k, j)] = c
        ad.append(entries)
    items: Dict[Tuple[int, int], Fraction] = {}
    for i in range(n):
        for j in range(i, n):
            value = sum(
                (c * ad[j].get((l, k), ZERO) for (k, l), c in ad[i].items()), ZERO
            )
            if value:
                items[(i, j)] = value
                items[(j, i)] = value
    return Matrix.from_sparse(n, n, items)


def killing_radical(algebra: LieAlgebra) -> Subspace:
    """
    可解根基 rad(g) = {x : κ(x, [g, g]) = 0}（特征 0）

    Raises:
        SelfCheckError: 结果不是可解理想（不应发生）
    """
    n = algebra.dim
    full = Subspace.full(n)
    derived = product_space(algebra, full, full)
    if derived.is_zero():
        radical = full
    else:
        form = killing_form(algebra)
        rows = [form.apply(y) for y in derived.basis]
        radical = Subspace.span(kernel_basis(Matrix.from_rows(rows, cols=n)), n)
    if not is_ideal(algebra, radical) or not is_solvable(algebra, radical):
        logger.error("Killing radical self-check failed for %s", algebra.name)
        raise SelfCheckError("Killing radical is not a solvable ideal")
    logger.debug("Solvable radical of %s has dimension %d", algebra.name, radical.dim)
    return radical


# ==================== 子代数的结构常数 ====================


def change_basis(
    algebra: LieAlgebra,
    basis: Sequence[Sequence[ScalarLike]],
    name: Optional[str] = None,
    labels: Optional[Sequence[str]] = None,
) -> LieAlgebra:
    """
    以给定向量（张成一个子代数）为基，重新表达结构常数

    Raises:
        NotASubalgebraError: 某个括号不在张成空间中
        ValueError: 向量线性相关
    """
    vectors = [as_vector(v, algebra.dim) for v in basis]
    s = len(vectors)
    if Subspace.span(vectors, algebra.dim).dim != s:
        raise ValueError("basis vectors are linearly dependent")
    columns = Matrix.from_rows(
        [tuple(v[k] for v in vectors) for k in range(algebra.dim)], cols=s
    )
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a, b in itertools.combinations(range(s), 2):
        image = bracket(algebra, vectors[a], vectors[b])
        if is_zero_vector(image):
            continue
        coords = solve(columns, image)
        if coords is None:
            raise NotASubalgebraError(f"bracket of basis vectors {a}, {b} leaves the span")
        table[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    if labels is None:
        labels = [f"v{k + 1}" for k in range(s)]
    return LieAlgebra.from_table(name or f"{algebra.name}|sub", s, table, labels)


def restrict(algebra: LieAlgebra, subspace: Subspace, name: Optional[str] = None) -> LieAlgebra:
    """子代数在其规范基下的结构常数；单位向量沿用原标签"""
    _check_ambient(algebra, subspace)
    labels = []
    for row, p in zip(subspace.basis, subspace.pivots):
        is_unit = sum(1 for a in row if a) == 1
        labels.append(algebra.basis_labels[p] if is_unit else f"v{len(labels) + 1}")
    return change_basis(algebra, subspace.basis, name=name, labels=labels)
