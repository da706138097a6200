"""
FilePath: /lie_quotient_rep/src/core/exactalg.py
Description:
    精确有理数与稠密线性代数

    - Scalar 使用 fractions.Fraction（分母恒正、约分、0 表示为 0/1）
    - 行化简委托给 sympy 的 DomainMatrix(QQ)，全程无浮点
    - rref 为规范形（主元为 1，主元列其余为 0），子空间相等即矩阵相等

    所有值构造后不可变，所有函数都是纯函数，可在多线程中直接调用。
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.core.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

Scalar = Fraction
Vector = Tuple[Fraction, ...]
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(value: ScalarLike) -> Fraction:
    """
    解析 "p/q" 或 "p" 形式的有理数

    Raises:
        ValueError: 格式无效或分母为 0
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"invalid scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    match = _SCALAR_PATTERN.match(str(value))
    if not match:
        raise ValueError(f"invalid scalar: {value!r} (expected 'p/q' or 'p')")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ValueError(f"invalid scalar: {value!r} (zero denominator)")
    return Fraction(numerator, denominator)


def format_scalar(value: ScalarLike) -> str:
    """序列化为 "p/q"，分母为 1 时为 "p" """
    value = parse_scalar(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


# ==================== 向量工具 ====================


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError(len(u), len(v))
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def linear_combination(
    coefficients: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int
) -> Vector:
    """Σ c_i v_i；n 为环境维数（vectors 为空时也需要）"""
    result = [ZERO] * n
    for c, v in zip(coefficients, vectors):
        if c == 0:
            continue
        for k, a in enumerate(v):
            if a:
                result[k] += c * a
    return tuple(result)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


# ==================== Matrix ====================


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"invalid matrix shape ({self.rows}, {self.cols})")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                self.rows * self.cols, len(self.entries), "matrix entries"
            )

    # ---------- 构造 ----------

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[ScalarLike]], cols: Optional[int] = None
    ) -> "Matrix":
        parsed = [tuple(parse_scalar(x) for x in row) for row in rows]
        if cols is None:
            cols = len(parsed[0]) if parsed else 0
        for row in parsed:
            if len(row) != cols:
                raise DimensionMismatchError(cols, len(row), "matrix row")
        return cls(len(parsed), cols, tuple(x for row in parsed for x in row))

    @classmethod
    def from_sparse(
        cls, rows: int, cols: int, items: Dict[Tuple[int, int], Fraction]
    ) -> "Matrix":
        entries = [ZERO] * (rows * cols)
        for (i, j), value in items.items():
            entries[i * cols + j] = Fraction(value)
        return cls(rows, cols, tuple(entries))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_sparse(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        entries = [ZERO] * (rows * cols)
        for i, row in dm.to_sparse().rep.items():
            for j, value in row.items():
                entries[i * cols + j] = _from_qq(value)
        return cls(rows, cols, tuple(entries))

    # ---------- 访问 ----------

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def flatten(self) -> Vector:
        return self.entries

    def nonzero_items(self) -> Iterator[Tuple[Tuple[int, int], Fraction]]:
        for index, value in enumerate(self.entries):
            if value:
                yield divmod(index, self.cols), value

    def is_zero(self) -> bool:
        return not any(self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @cached_property
    def domain(self) -> DomainMatrix:
        """稀疏 DomainMatrix(QQ) 视图，用于行化简与乘法"""
        rep: Dict[int, Dict[int, object]] = {}
        for (i, j), value in self.nonzero_items():
            rep.setdefault(i, {})[j] = _to_qq(value)
        return DomainMatrix(rep, (self.rows, self.cols), QQ)

    # ---------- 运算 ----------

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(self.rows * self.cols, other.rows * other.cols, "matrix")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: ScalarLike) -> "Matrix":
        c = parse_scalar(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(self.cols, other.rows, "matrix product")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zero(self.rows, other.cols)
        return Matrix.from_domain(self.domain.matmul(other.domain))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """矩阵乘列向量"""
        if len(v) != self.cols:
            raise DimensionMismatchError(self.cols, len(v))
        result = [ZERO] * self.rows
        for (i, j), value in self.nonzero_items():
            if v[j]:
                result[i] += value * v[j]
        return tuple(result)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """[A, B] = AB - BA"""
    return a @ b - b @ a


def combine_matrices(coefficients: Sequence[Fraction], matrices: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    """Σ c_i M_i（稀疏累加）"""
    items: Dict[Tuple[int, int], Fraction] = {}
    for c, m in zip(coefficients, matrices):
        if c == 0:
            continue
        for key, value in m.nonzero_items():
            items[key] = items.get(key, ZERO) + c * value
    return Matrix.from_sparse(rows, cols, items)


# ==================== 行化简 ====================


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """
    规范行最简形

    Returns:
        (rref 矩阵, 递增的主元列下标)
    """
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return m, []
    reduced, pivots = m.domain.rref()
    return Matrix.from_domain(reduced), sorted(int(p) for p in pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> List[Vector]:
    """
    零空间 {v : Mv = 0} 的一组基

    自由列置 1、主元列取 rref 中对应元素的相反数，长度恒为 cols - rank。
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, free]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence[ScalarLike]) -> Optional[Vector]:
    """
    求 Mx = b 的一个解（自由变量取 0）

    Returns:
        解向量；无解时返回 None
    """
    b = tuple(parse_scalar(x) for x in b)
    if len(b) != m.rows:
        raise DimensionMismatchError(m.rows, len(b), "right-hand side")
    augmented = Matrix.from_rows(
        [m.row(i) + (b[i],) for i in range(m.rows)], cols=m.cols + 1
    )
    reduced, pivots = rref(augmented)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = reduced[r, m.cols]
    return tuple(x)


def row_reduce(vectors: Iterable[Sequence[ScalarLike]], n: int) -> Tuple[List[Vector], List[int]]:
    """张成空间的规范基（rref 非零行）及主元列"""
    rows = [tuple(parse_scalar(x) for x in v) for v in vectors]
    if not rows:
        return [], []
    reduced, pivots = rref(Matrix.from_rows(rows, cols=n))
    return [reduced.row(r) for r in range(len(pivots))], pivots
