"""
FilePath: /lie_quotient_rep/src/services/repbuilder.py
Description:
    商模表示的构造与验证

    - Decomposition: g = p ⋉ m 以及 m 中的幂零理想 h
    - QuotientModule: U(m) 中满足 ω_(m,m) < k1 且 ω_(m,h) < k2 的标准单项式张成的商模
    - build_quotient_rep / assemble_full: 输出显式矩阵表示
    - verify_homomorphism / verify_faithful: 精确检验，失败时返回反例而不是抛出异常

    使用示例:
        decomposition = Decomposition.nilpotent(heisenberg(1))
        rep = build_quotient_rep(decomposition)     # degree 7
        assert verify_faithful(rep, decomposition.algebra).ok
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.filtration import WeightVector, adapt_two_flags, ideal_filtration, weights_from_filtration
from src.algebra.liealg import (
    LieAlgebra,
    Subspace,
    action_kernel,
    adjoint_matrix,
    center,
    centralizer,
    is_ideal,
    is_nilpotent,
    is_subalgebra,
    nilpotency_class,
    product_space,
    restrict,
)
from src.algebra.pbw import (
    Monomial,
    SemidirectModule,
    UElement,
    enumerate_bounded,
    format_monomial,
    monomial_filter,
)
from src.core.cache import MemoCache
from src.core.config import settings
from src.core.errors import (
    DecompositionError,
    DimensionMismatchError,
    IncompatibleAlgebrasError,
    NotAnIdealError,
    NotASubalgebraError,
    NotContainedError,
    NotNilpotentError,
    PreconditionViolation,
    SelfCheckError,
)
from src.core.exactalg import (
    ZERO,
    Matrix,
    Vector,
    combine_matrices,
    commutator,
    kernel_basis,
    linear_combination,
    solve,
    unit_vector,
)

logger = logging.getLogger(__name__)


# ==================== 数据类型 ====================


@dataclass(frozen=True, eq=False)
class Decomposition:
    algebra: LieAlgebra
    p: Subspace
    m: Subspace
    h: Subspace

    def __post_init__(self):
        g = self.algebra
        for name in ("p", "m", "h"):
            space = getattr(self, name)
            if space.ambient_dim != g.dim:
                raise DimensionMismatchError(g.dim, space.ambient_dim, name)
        if self.p.dim + self.m.dim != g.dim or not (self.p + self.m).is_full():
            raise DecompositionError("g is not the direct sum of p and m")
        if not is_subalgebra(g, self.p):
            raise NotASubalgebraError("p is not a subalgebra")
        if not is_ideal(g, self.m):
            raise NotAnIdealError("m is not an ideal")
        if not is_nilpotent(g, self.m):
            raise NotNilpotentError("m is not nilpotent")
        if not self.m.includes(self.h):
            raise NotContainedError("h is not contained in m")
        if not is_ideal(g, self.h):
            raise NotAnIdealError("h is not an ideal")

    @classmethod
    def nilpotent(cls, algebra: LieAlgebra, h: Optional[Subspace] = None) -> "Decomposition":
        """幂零代数：p = 0, m = g，默认 h = m"""
        full = Subspace.full(algebra.dim)
        return cls(algebra, Subspace.zero(algebra.dim), full, h if h is not None else full)


@dataclass(frozen=True)
class Representation:
    algebra_name: str
    labels: Tuple[str, ...]
    degree: int
    matrices: Tuple[Matrix, ...]
    module_basis: Tuple[str, ...]

    def __post_init__(self):
        if len(self.matrices) != len(self.labels):
            raise DimensionMismatchError(len(self.labels), len(self.matrices), "representation matrices")
        for matrix in self.matrices:
            if matrix.shape != (self.degree, self.degree):
                raise DimensionMismatchError(self.degree, matrix.rows, "representation matrix")
        if len(self.module_basis) != self.degree:
            raise DimensionMismatchError(self.degree, len(self.module_basis), "module basis")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def matrix_of(self, v: Sequence[Fraction]) -> Matrix:
        if len(v) != self.dim:
            raise DimensionMismatchError(self.dim, len(v))
        return combine_matrices(v, self.matrices, self.degree, self.degree)


@dataclass(frozen=True)
class HomomorphismReport:
    ok: bool
    pair: Optional[Tuple[int, int]] = None
    defect: Optional[Matrix] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FaithfulnessReport:
    ok: bool
    kernel: Tuple[Vector, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


# ==================== 验证 ====================


def _check_represents(rep: Representation, algebra: LieAlgebra) -> None:
    if rep.dim != algebra.dim:
        raise DimensionMismatchError(algebra.dim, rep.dim, "represented algebra")


def verify_homomorphism(rep: Representation, algebra: LieAlgebra) -> HomomorphismReport:
    """ρ([x_i, x_j]) = ρ(x_i)ρ(x_j) - ρ(x_j)ρ(x_i)，对所有 i < j"""
    _check_represents(rep, algebra)
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = combine_matrices(
                [c for _, c in algebra.structure(i, j)],
                [rep.matrices[k] for k, _ in algebra.structure(i, j)],
                rep.degree,
                rep.degree,
            )
            defect = commutator(rep.matrices[i], rep.matrices[j]) - lhs
            if not defect.is_zero():
                logger.info("Homomorphism law fails for pair (%d, %d)", i, j)
                return HomomorphismReport(ok=False, pair=(i, j), defect=defect)
    return HomomorphismReport(ok=True)


def representation_kernel(rep: Representation, algebra: LieAlgebra) -> Subspace:
    _check_represents(rep, algebra)
    flat = [matrix.flatten() for matrix in rep.matrices]
    positions = sorted({k for entries in flat for k, value in enumerate(entries) if value})
    rows = [tuple(entries[k] for entries in flat) for k in positions]
    system = Matrix.from_rows(rows, cols=algebra.dim)
    return Subspace.span(kernel_basis(system), algebra.dim)


def verify_faithful(rep: Representation, algebra: LieAlgebra) -> FaithfulnessReport:
    """把 ρ(x_i) 展平成列向量，秩等于 dim g 时忠实；否则返回核的基"""
    kernel = representation_kernel(rep, algebra)
    if kernel.is_zero():
        return FaithfulnessReport(ok=True)
    logger.info("Representation of %s has a kernel of dimension %d", algebra.name, kernel.dim)
    return FaithfulnessReport(ok=False, kernel=kernel.basis)


# ==================== 基本表示 ====================


def abelian_rep(k: int, labels: Optional[Sequence[str]] = None, name: str = "") -> Representation:
    """k 维交换代数：第 i 个生成元映到 E_{i+1,0}"""
    if k < 0:
        raise ValueError(f"abelian dimension must be nonnegative, got {k}")
    labels = tuple(labels) if labels is not None else tuple(f"a{i + 1}" for i in range(k))
    if len(labels) != k:
        raise DimensionMismatchError(k, len(labels), "labels")
    matrices = tuple(Matrix.from_sparse(k + 1, k + 1, {(i + 1, 0): Fraction(1)}) for i in range(k))
    return Representation(
        name or f"abelian{k}", labels, k + 1, matrices, tuple(f"r{i}" for i in range(k + 1))
    )


def adjoint_rep(algebra: LieAlgebra) -> Representation:
    n = algebra.dim
    matrices = tuple(adjoint_matrix(algebra, unit_vector(n, i)) for i in range(n))
    return Representation(algebra.name, algebra.basis_labels, n, matrices, algebra.basis_labels)


def zero_rep(algebra: LieAlgebra) -> Representation:
    return Representation(algebra.name, algebra.basis_labels, 0, tuple(Matrix.zero(0, 0) for _ in range(algebra.dim)), ())


def relabel(rep: Representation, name: str, labels: Sequence[str]) -> Representation:
    return Representation(name, tuple(labels), rep.degree, rep.matrices, rep.module_basis)


def direct_sum(a: Representation, b: Representation) -> Representation:
    """
    块对角和

    Raises:
        IncompatibleAlgebrasError: 两个表示不属于同一个李代数
    """
    if a.algebra_name != b.algebra_name or a.labels != b.labels:
        raise IncompatibleAlgebrasError(
            f"cannot sum representations of {a.algebra_name!r} and {b.algebra_name!r}"
        )
    degree = a.degree + b.degree
    matrices = []
    for ma, mb in zip(a.matrices, b.matrices):
        items = dict(ma.nonzero_items())
        items.update({(i + a.degree, j + a.degree): v for (i, j), v in mb.nonzero_items()})
        matrices.append(Matrix.from_sparse(degree, degree, items))
    module_basis = a.module_basis + b.module_basis
    if len(set(module_basis)) != len(module_basis):
        module_basis = tuple(f"s{k}" for k in range(degree))
    return Representation(a.algebra_name, a.labels, degree, tuple(matrices), module_basis)


def pullback(rep: Representation, algebra: LieAlgebra, coords: Matrix) -> Representation:
    """
    沿线性映射 π: g → (rep 所表示的代数) 拉回

    coords 为 rep.dim × dim g 矩阵，第 i 列是 π(x_i) 的坐标；π 为同态时结果也是表示。
    """
    if coords.shape != (rep.dim, algebra.dim):
        raise DimensionMismatchError(rep.dim * algebra.dim, coords.rows * coords.cols, "pullback map")
    matrices = tuple(rep.matrix_of(coords.column(i)) for i in range(algebra.dim))
    return Representation(algebra.name, algebra.basis_labels, rep.degree, matrices, rep.module_basis)


def _complement(space: Subspace, start: Sequence[Vector], candidates: Sequence[Vector]) -> List[Vector]:
    """从 candidates 中贪心选取向量，把 span(start) 扩充为 space"""
    n = space.ambient_dim
    current = Subspace.span(start, n)
    chosen: List[Vector] = []
    for v in candidates:
        if current.dim == space.dim:
            break
        if not current.contains(v):
            chosen.append(v)
            current = current + Subspace.span([v], n)
    return chosen


def reductive_rep(algebra: LieAlgebra, p0: Subspace) -> Representation:
    """
    p0 的忠实表示

    - p0 = 0: 0 次表示
    - 中心为 0: 伴随表示
    - 交换: abelian_rep(dim p0)
    - 其他: 伴随 ⊕ abelian_rep(dim z)∘(沿 [p0, p0] 的投影)

    返回的表示以 restrict(algebra, p0) 的规范基为基。

    Raises:
        PreconditionViolation: [p0, p0] ∩ Z(p0) ≠ 0（p0 不是约化的），携带该交的基
    """
    sub = restrict(algebra, p0, name=f"{algebra.name}|p0")
    if sub.dim == 0:
        return zero_rep(sub)
    z = center(sub)
    if z.is_zero():
        return adjoint_rep(sub)
    if sub.is_abelian():
        return relabel(abelian_rep(sub.dim), sub.name, sub.basis_labels)

    full = Subspace.full(sub.dim)
    derived = product_space(sub, full, full)
    overlap = derived.intersection(z)
    if not overlap.is_zero():
        kernel = [linear_combination(v, p0.basis, algebra.dim) for v in overlap.basis]
        logger.error("p0 of %s is not reductive: [p0, p0] meets its center in dimension %d", algebra.name, overlap.dim)
        raise PreconditionViolation("p0 is not reductive; no faithful representation of p0 is assembled", kernel=kernel)
    extra = _complement(full, derived.basis, list(z.basis) + [unit_vector(sub.dim, k) for k in range(sub.dim)])
    stacked = Matrix.from_rows(
        [tuple(v[k] for v in list(derived.basis) + extra) for k in range(sub.dim)],
        cols=sub.dim,
    )
    items: Dict[Tuple[int, int], Fraction] = {}
    for i in range(sub.dim):
        coords = solve(stacked, unit_vector(sub.dim, i))
        for q, c in enumerate(coords[derived.dim :]):
            if c:
                items[(q, i)] = c
    projection = Matrix.from_sparse(len(extra), sub.dim, items)
    abelian_part = pullback(abelian_rep(len(extra)), sub, projection)
    return direct_sum(adjoint_rep(sub), abelian_part)


# ==================== 商模 ====================


class QuotientModule:
    """
    U(m) / S，S 由 ω_(m,m) ≥ k1 或 ω_(m,h) ≥ k2 的标准单项式张成

    g 的每个基向量分解为 p 部分（导子作用）与 m 部分（左乘），作用后截断。
    p 在 m 上作用的核在这里作用为 0，忠实性由调用方检查。
    """

    def __init__(
        self,
        decomposition: Decomposition,
        k1: Optional[int] = None,
        k2: Optional[int] = None,
        cache: Optional[MemoCache] = None,
    ):
        self.decomposition = decomposition
        g = decomposition.algebra
        m, h = decomposition.m, decomposition.h

        self.m_algebra = restrict(g, m, name=f"{g.name}|m")
        h_in_m = Subspace.span([m.coordinates(v) for v in h.basis], m.dim)
        full_m = Subspace.full(m.dim)
        self.filtration_mm = ideal_filtration(self.m_algebra, full_m, full_m)
        self.filtration_mh = ideal_filtration(self.m_algebra, full_m, h_in_m)
        self.class_m = nilpotency_class(self.m_algebra, full_m)
        self.class_h = nilpotency_class(self.m_algebra, h_in_m)
        self.dim_h = h.dim

        self.k1 = k1 if k1 is not None else self.class_m + 1
        self.k2 = k2 if k2 is not None else self.class_h + 1
        if self.k1 < 1 or self.k2 < 1:
            raise ValueError(f"truncation parameters must be >= 1, got k1={self.k1}, k2={self.k2}")

        adapted = adapt_two_flags(self.filtration_mm.spaces, self.filtration_mh.spaces)
        self.w1: WeightVector = weights_from_filtration(self.filtration_mm, adapted)
        self.w2: WeightVector = weights_from_filtration(self.filtration_mh, adapted)
        self._keep = monomial_filter(self.w1, self.k1, self.w2, self.k2)
        self.m_basis = [linear_combination(b, m.basis, g.dim) for b in adapted]
        self.module = SemidirectModule(g, self.m_basis, cache)

        self.kept: List[Monomial] = enumerate_bounded(self.w1, self.k1 - 1, self.w2, self.k2 - 1)
        if len(self.kept) > settings.MAX_MODULE_DIM:
            logger.error("Quotient module would have %d monomials", len(self.kept))
            raise PreconditionViolation(
                f"quotient module dimension {len(self.kept)} exceeds MAX_MODULE_DIM={settings.MAX_MODULE_DIM}"
            )
        self.index = {alpha: position for position, alpha in enumerate(self.kept)}
        self._parts = self._split_generators()
        logger.debug(
            "QuotientModule: dim m=%d, c(m)=%d, c(h)=%d, k1=%d, k2=%d, kept=%d",
            m.dim,
            self.class_m,
            self.class_h,
            self.k1,
            self.k2,
            len(self.kept),
        )

    @property
    def degree(self) -> int:
        return len(self.kept)

    def _split_generators(self) -> List[Tuple[Vector, Vector]]:
        g = self.decomposition.algebra
        p_basis = list(self.decomposition.p.basis)
        columns = p_basis + self.m_basis
        stacked = Matrix.from_rows(
            [tuple(v[k] for v in columns) for k in range(g.dim)], cols=len(columns)
        )
        parts = []
        for i in range(g.dim):
            coords = solve(stacked, unit_vector(g.dim, i))
            delta = linear_combination(coords[: len(p_basis)], p_basis, g.dim)
            parts.append((delta, coords[len(p_basis) :]))
        return parts

    def is_kept(self, alpha: Monomial) -> bool:
        return self._keep(alpha)

    def project(self, x: UElement) -> UElement:
        return UElement({alpha: c for alpha, c in x.terms.items() if self.is_kept(alpha)})

    def act(self, i: int, x: UElement, project: bool = True) -> UElement:
        """g 的第 i 个基向量作用于 X"""
        delta, m_part = self._parts[i]
        image = self.module.enveloping.left_multiply(m_part, x)
        if any(delta):
            image = image + self.module.derive(delta, x)
        return self.project(image) if project else image

    def _column(self, alpha: Monomial) -> List[Dict[int, Fraction]]:
        source = UElement({alpha: Fraction(1)})
        column = []
        for i in range(self.decomposition.algebra.dim):
            image = self.act(i, source)
            column.append({self.index[beta]: c for beta, c in image.terms.items()})
        return column

    def representation(self, threads: Optional[int] = None) -> Representation:
        g = self.decomposition.algebra
        threads = threads if threads is not None else settings.BUILD_THREADS
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                columns = list(executor.map(self._column, self.kept))
        else:
            columns = [self._column(alpha) for alpha in self.kept]
        items: List[Dict[Tuple[int, int], Fraction]] = [{} for _ in range(g.dim)]
        for col, column in enumerate(columns):
            for i, entries in enumerate(column):
                for row, c in entries.items():
                    items[i][(row, col)] = c
        matrices = tuple(Matrix.from_sparse(self.degree, self.degree, entries) for entries in items)
        basis = tuple(format_monomial(alpha) for alpha in self.kept)
        return Representation(g.name, g.basis_labels, self.degree, matrices, basis)


def build_quotient_rep(
    decomposition: Decomposition,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    threads: Optional[int] = None,
) -> Representation:
    """
    g = p ⋉ m 在截断商模上的表示；默认 k1 = c(m)+1, k2 = c(h)+1

    Raises:
        PreconditionViolation: p 在 m 上的作用不忠实（携带核的基）
    """
    g = decomposition.algebra
    kernel = action_kernel(g, decomposition.p, decomposition.m)
    if not kernel.is_zero():
        logger.error("p acts on m with a kernel of dimension %d", kernel.dim)
        raise PreconditionViolation("p does not act faithfully on m; split off p0 first", kernel=kernel.basis)
    quotient = QuotientModule(decomposition, k1, k2)
    if quotient.k1 > quotient.class_m >= 1 and quotient.k2 > quotient.class_h:
        n = quotient.m_algebra.dim
        required = [(0,) * n] + [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        missing = [alpha for alpha in required if alpha not in quotient.index]
        if missing:
            raise SelfCheckError(f"kept basis misses monomials {missing}")
    rep = quotient.representation(threads)
    logger.info("Built quotient representation of %s with degree %d", g.name, rep.degree)
    return rep


# ==================== p0 拆分与完整组装 ====================


def split_p0(decomposition: Decomposition) -> Tuple[Subspace, Subspace]:
    """
    p0 = p 在 m 上作用的核；p_eff 为 p0 在 p 中的补

    p_eff 取 [p, p] ∩ C_p(p0) 加上 C_p(p0) 中对 p0 的贪心补，
    约化情形下 p_eff ⊕ m 是 g 的理想。
    """
    g = decomposition.algebra
    p = decomposition.p
    p0 = action_kernel(g, p, decomposition.m)
    if p0.is_zero():
        return p0, p
    commutant = centralizer(g, p, p0)
    semisimple_part = product_space(g, p, p).intersection(commutant)
    start = list(semisimple_part.basis) + list(commutant.intersection(p0).basis)
    extra = _complement(commutant, start, commutant.basis)
    p_eff = Subspace.span(list(semisimple_part.basis) + extra, g.dim)
    if p_eff.dim + p0.dim != p.dim or not p_eff.intersection(p0).is_zero():
        extra = _complement(p, p0.basis, p.basis)
        p_eff = Subspace.span(extra, g.dim)
    logger.debug("split_p0: dim p0=%d, dim p_eff=%d", p0.dim, p_eff.dim)
    return p0, p_eff


@dataclass(frozen=True)
class Assembly:
    representation: Representation
    p0: Subspace
    p_eff: Subspace
    reductive_degree: int
    quotient_degree: int
    class_m: int
    class_h: int
    k1: int
    k2: int


def assemble(
    decomposition: Decomposition,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    threads: Optional[int] = None,
) -> Assembly:
    """
    g 的忠实表示：reductive_rep(p0) 沿 g → p0 拉回 ⊕ 商模表示（p0 作用为 0）

    Raises:
        DecompositionError: p_eff ⊕ m 不是理想，无法沿 p0 投影
        SelfCheckError: 商模表示的核不等于 p0
    """
    g = decomposition.algebra
    p0, p_eff = split_p0(decomposition)
    quotient = QuotientModule(decomposition, k1, k2)
    quotient_rep = quotient.representation(threads)

    def result(rep: Representation, reductive_degree: int) -> Assembly:
        return Assembly(
            representation=rep,
            p0=p0,
            p_eff=p_eff,
            reductive_degree=reductive_degree,
            quotient_degree=quotient_rep.degree,
            class_m=quotient.class_m,
            class_h=quotient.class_h,
            k1=quotient.k1,
            k2=quotient.k2,
        )

    if p0.is_zero():
        logger.info("Assembled representation of %s with degree %d", g.name, quotient_rep.degree)
        return result(quotient_rep, 0)

    if quotient.k1 > quotient.class_m and quotient.k2 > quotient.class_h:
        if representation_kernel(quotient_rep, g) != p0:
            raise SelfCheckError("kernel of the quotient representation differs from p0")

    complement = p_eff + decomposition.m
    if not is_ideal(g, complement):
        logger.error("p_eff + m is not an ideal; cannot project onto p0")
        raise DecompositionError("no ideal complement of p0 found")
    columns = list(p0.basis) + list(complement.basis)
    stacked = Matrix.from_rows([tuple(v[k] for v in columns) for k in range(g.dim)], cols=g.dim)
    items: Dict[Tuple[int, int], Fraction] = {}
    for i in range(g.dim):
        coords = solve(stacked, unit_vector(g.dim, i))
        for q in range(p0.dim):
            if coords[q] != ZERO:
                items[(q, i)] = coords[q]
    projection = Matrix.from_sparse(p0.dim, g.dim, items)
    reductive = pullback(reductive_rep(g, p0), g, projection)
    reductive = Representation(
        g.name, g.basis_labels, reductive.degree, reductive.matrices, tuple(f"r{k}" for k in range(reductive.degree))
    )
    rep = direct_sum(reductive, quotient_rep)
    logger.info(
        "Assembled representation of %s: reductive degree %d + quotient degree %d",
        g.name,
        reductive.degree,
        quotient_rep.degree,
    )
    return result(rep, reductive.degree)


def assemble_full(
    decomposition: Decomposition,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    threads: Optional[int] = None,
) -> Representation:
    return assemble(decomposition, k1, k2, threads).representation
