"""
FilePath: /lie_quotient_rep/src/core/errors.py
Description:
    领域异常

    所有异常均继承 LieAlgebraError (ValueError)，CLI 将其映射为退出码 1。
    异常对象携带出错的数据（下标、核向量等），便于上层输出诊断信息。
"""

from typing import Any, Optional, Sequence


class LieAlgebraError(ValueError):
    """领域错误基类"""

    pass


class DimensionMismatchError(LieAlgebraError):
    """向量 / 子空间 / 矩阵维数不匹配"""

    def __init__(self, expected: int, actual: int, what: str = "vector"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} dimension mismatch: expected {expected}, got {actual}")


class NotASubalgebraError(LieAlgebraError):
    """子空间对括号不封闭"""

    pass


class NotAnIdealError(LieAlgebraError):
    """子空间不是理想"""

    pass


class NotNilpotentError(LieAlgebraError):
    """下中心列稳定在非零子空间"""

    def __init__(self, message: str, stable_dim: int = 0):
        self.stable_dim = stable_dim
        super().__init__(message)


class NotContainedError(LieAlgebraError):
    """子空间包含关系不成立"""

    pass


class FiltrationConditionError(LieAlgebraError):
    """[F(i), F(j)] ⊄ F(i+j)"""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"filtration condition violated: [F({i}), F({j})] not in F({i + j})")


class FlagError(LieAlgebraError):
    """旗不满足递降或首项不是全空间"""

    pass


class BasisNotAdaptedError(LieAlgebraError):
    """基不弱适配于滤过"""

    def __init__(self, level: int):
        self.level = level
        super().__init__(f"basis is not weakly adapted: F({level}) not spanned by basis vectors")


class BracketLeavesIdealError(LieAlgebraError):
    """[δ, x_j] 不在 m 中"""

    def __init__(self, generator: int):
        self.generator = generator
        super().__init__(f"bracket with generator {generator} leaves m")


class NonPositiveWeightError(LieAlgebraError):
    """权向量存在 0 分量，枚举不有限"""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"weight vector has a non-positive entry at index {index}")


class DecompositionError(LieAlgebraError):
    """p ⋉ m 分解数据无效"""

    pass


class PreconditionViolation(LieAlgebraError):
    """构造前置条件不满足（如 p 在 m 上的作用不忠实）"""

    def __init__(self, message: str, kernel: Optional[Sequence[Any]] = None):
        self.kernel = list(kernel) if kernel is not None else []
        super().__init__(message)


class IncompatibleAlgebrasError(LieAlgebraError):
    """两个表示不属于同一个李代数"""

    pass


class InconsistentDimensionsError(LieAlgebraError):
    """维数参数不满足 n ≤ r ≤ d 等约束"""

    pass


class SelfCheckError(LieAlgebraError):
    """内部自检失败（结果不满足应有的结构性质）"""

    pass
