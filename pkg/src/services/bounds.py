"""
FilePath: /lie_quotient_rep/src/services/bounds.py
Description:
    组合量与维数上界

    - Sylvester 计数函数 Δ(t; M) 及其二项式上界
    - 商模维数上界、忠实表示次数上界、Birkhoff 维数
    - 幂零亏量 ε(r, n) = dim(r/n) + c(n) 的求值与启发式搜索（结果是上界）

    二项式一律用 math.comb 精确计算，约定 b < 0 或 b > a 时 binom(a, b) = 0。
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from src.algebra.filtration import adapt_two_flags
from src.algebra.liealg import (
    LieAlgebra,
    Subspace,
    derived_series,
    is_ideal,
    is_nilpotent,
    killing_radical,
    lower_central_series,
    nilpotency_class,
    restrict,
    upper_central_series,
)
from src.core.config import settings
from src.core.errors import (
    InconsistentDimensionsError,
    NonPositiveWeightError,
    NotAnIdealError,
    NotContainedError,
)
from src.core.exactalg import linear_combination
from src.schemas.algebra import BoundReport

logger = logging.getLogger(__name__)


def binomial(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


# ==================== 计数函数 ====================


def _check_parts(parts: Sequence[int]) -> None:
    for index, part in enumerate(parts):
        if part < 1:
            raise NonPositiveWeightError(index)


def denumerant(t: int, parts: Sequence[int]) -> int:
    """
    Δ(t; M)：Σ a_i m_i = t 的非负整数解个数（按部件动态规划）

    Raises:
        NonPositiveWeightError: 存在非正部件
    """
    if t < 0:
        _check_parts(parts)
        return 0
    return weighted_monomial_counts(parts, t)[t]


def denumerant_bound(t: int, p: int) -> int:
    """binom(p+t-1, t-1)；t = 0 时取 1（Δ(0; M) = 1）"""
    if t == 0:
        return 1
    return binomial(p + t - 1, t - 1)


def cumulative_denumerant(limit: int, parts: Sequence[int]) -> int:
    """Σ_{0 ≤ t ≤ T} Δ(t; M)"""
    _check_parts(parts)
    return sum(weighted_monomial_counts(parts, limit))


def cumulative_denumerant_bound(limit: int, p: int) -> int:
    return binomial(p + limit, limit)


def weighted_monomial_counts(weights: Sequence[int], limit: int) -> List[int]:
    """各权重层 t = 0..T 上的单项式个数 Δ(t; weights)"""
    _check_parts(weights)
    if limit < 0:
        return []
    ways = [1] + [0] * limit
    for weight in weights:
        for s in range(weight, limit + 1):
            ways[s] += ways[s - weight]
    return ways


# ==================== 维数上界 ====================


def prop_bound(dim_m: int, codim_h: int, class_h: int) -> int:
    """binom(dim m + dim(m/h), dim(m/h)) · binom(dim m + c(h), c(h))"""
    if codim_h > dim_m or min(dim_m, codim_h, class_h) < 0:
        raise InconsistentDimensionsError(f"codim(h)={codim_h} exceeds dim(m)={dim_m}")
    return binomial(dim_m + codim_h, codim_h) * binomial(dim_m + class_h, class_h)


def crude_bound(dim_m: int, dim_h: int, class_m: int, class_h: int) -> int:
    """binom(dim(m/h) + c(m), c(m)) · binom(dim h + c(h), c(h))"""
    if dim_h > dim_m:
        raise InconsistentDimensionsError(f"dim(h)={dim_h} exceeds dim(m)={dim_m}")
    return binomial(dim_m - dim_h + class_m, class_m) * binomial(dim_h + class_h, class_h)


def theorem_bound(d: int, n: int, r: int, e1: int, e2: int) -> int:
    """
    d - n + binom(r + ε1, ε1) · binom(r + ε2, ε2)

    Raises:
        InconsistentDimensionsError: 不满足 n ≤ r ≤ d
    """
    if not 0 <= n <= r <= d:
        raise InconsistentDimensionsError(f"expected 0 <= n <= r <= d, got n={n}, r={r}, d={d}")
    if e1 < 0 or e2 < 0:
        raise InconsistentDimensionsError("class and codimension must be nonnegative")
    return d - n + binomial(r + e1, e1) * binomial(r + e2, e2)


def p_epsilon(e: int, d: int) -> int:
    """d + (d+ε)⋯(d+1) / (⌊ε/2⌋! ⌈ε/2⌉!) = d + binom(d+ε, ε) · binom(ε, ⌊ε/2⌋)"""
    if e < 0 or d < 0:
        raise InconsistentDimensionsError("epsilon and dimension must be nonnegative")
    return d + binomial(d + e, e) * binomial(e, e // 2)


def binomial_chain_holds(r: int, e1: int, e2: int) -> bool:
    """binom(r+ε1, ε1) · binom(r+ε2, ε2) ≤ (r+ε)! / (r! ⌊ε/2⌋! ⌈ε/2⌉!)，ε = ε1 + ε2"""
    e = e1 + e2
    lhs = binomial(r + e1, e1) * binomial(r + e2, e2)
    rhs = math.factorial(r + e) // (math.factorial(r) * math.factorial(e // 2) * math.factorial(e - e // 2))
    return lhs <= rhs


def birkhoff_dim(d: int, c: int) -> int:
    """Σ_{i=0}^{c} d^i"""
    if d < 1:
        raise InconsistentDimensionsError(f"Birkhoff dimension needs d >= 1, got {d}")
    return sum(d**i for i in range(c + 1))


def filiform_ideal_class_bound(c: int, a: int) -> int:
    """⌈(c+1)/a⌉ - 1，a > 1"""
    if a <= 1:
        raise ValueError(f"ideal step must be > 1, got {a}")
    return -(-(c + 1) // a) - 1


def filiform_nil_defect_bound(d: int) -> float:
    return 2 * math.sqrt(d) + 1


# ==================== 幂零亏量 ====================


def nil_defect_of_ideal(algebra: LieAlgebra, r: Subspace, h: Subspace) -> int:
    """
    dim(R) - dim(H) + c(H)

    Raises:
        NotContainedError / NotAnIdealError / NotNilpotentError
    """
    if not r.includes(h):
        raise NotContainedError("ideal is not contained in the radical")
    if not is_ideal(algebra, h):
        raise NotAnIdealError("subspace is not an ideal")
    return r.dim - h.dim + nilpotency_class(algebra, h)


@dataclass(frozen=True)
class NilDefectResult:
    epsilon: int
    witness: Subspace
    witness_class: int
    candidates: int


def _candidate_ideals(algebra: LieAlgebra, r: Subspace, max_subset: int) -> Iterable[Subspace]:
    yield r
    yield from lower_central_series(algebra, r)
    yield from derived_series(algebra, r)
    for term in upper_central_series(algebra):
        yield term.intersection(r)
    yield Subspace.zero(algebra.dim)

    if r.is_zero():
        return
    radical = restrict(algebra, r, name=f"{algebra.name}|rad")
    adapted = adapt_two_flags(lower_central_series(radical), derived_series(radical))
    vectors = [linear_combination(b, r.basis, algebra.dim) for b in adapted]
    for size in range(1, min(max_subset, len(vectors)) + 1):
        for removed in itertools.combinations(range(len(vectors)), size):
            kept = [v for k, v in enumerate(vectors) if k not in removed]
            yield Subspace.span(kept, algebra.dim)


def nil_defect_search(
    algebra: LieAlgebra, r: Optional[Subspace] = None, max_subset: Optional[int] = None
) -> NilDefectResult:
    """
    候选理想上 ε(r, n) 的最小值（真实幂零亏量的上界）

    候选：R、R 的下中心列与导出列、上中心列与 R 的交、0、
    以及从适配基中去掉至多 max_subset 个向量后张成的子空间。
    """
    r = r if r is not None else killing_radical(algebra)
    max_subset = max_subset if max_subset is not None else settings.NIL_DEFECT_MAX_SUBSET
    best: Optional[Tuple[int, Subspace, int]] = None
    seen = set()
    for candidate in _candidate_ideals(algebra, r, max_subset):
        if candidate in seen:
            continue
        seen.add(candidate)
        if not r.includes(candidate) or not is_ideal(algebra, candidate):
            continue
        if not is_nilpotent(algebra, candidate):
            continue
        c = nilpotency_class(algebra, candidate)
        epsilon = r.dim - candidate.dim + c
        if best is None or epsilon < best[0]:
            best = (epsilon, candidate, c)
    logger.info(
        "Nil-defect search on %s: epsilon <= %d over %d candidates", algebra.name, best[0], len(seen)
    )
    return NilDefectResult(epsilon=best[0], witness=best[1], witness_class=best[2], candidates=len(seen))


# ==================== 报告 ====================


def build_bound_report(
    *,
    d: int,
    n: int,
    r: int,
    dim_m: int,
    dim_h: int,
    class_m: int,
    class_h: int,
    quotient_dim: int,
    achieved_degree: int,
) -> BoundReport:
    """ε1 = c(h)，ε2 = r - dim h（h 在根基中的余维数）"""
    e1 = class_h
    e2 = r - dim_h
    if e2 < 0:
        raise InconsistentDimensionsError(f"dim(h)={dim_h} exceeds radical dimension r={r}")
    return BoundReport(
        achieved_degree=achieved_degree,
        quotient_dim=quotient_dim,
        prop_bound=prop_bound(dim_m, dim_m - dim_h, class_h),
        crude_bound=crude_bound(dim_m, dim_h, class_m, class_h),
        theorem_bound=theorem_bound(d, n, r, e1, e2),
        p_epsilon=p_epsilon(e1 + e2, d),
        birkhoff=birkhoff_dim(dim_m, class_m) if dim_m else 1,
        d=d,
        n=n,
        r=r,
        e1=e1,
        e2=e2,
        class_m=class_m,
        class_h=class_h,
    )
