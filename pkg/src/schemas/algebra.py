"""
Pydantic 数据模型定义

用于:
1. 李代数 / 表示文件的解析与校验
2. 界报告与 CLI 任务配置的类型安全传递
"""

from typing import Annotated, Dict, List, Literal, Optional

from pydantic import AfterValidator, BaseModel, Field, model_validator

SCALAR_PATTERN = r"^[+-]?\d+(/\d+)?$"


def _check_denominator(value: str) -> str:
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in scalar {value!r}")
    return value


ScalarStr = Annotated[str, Field(pattern=SCALAR_PATTERN), AfterValidator(_check_denominator)]
RowList = List[List[ScalarStr]]


# ==================== 李代数文件 ====================


class BracketTermModel(BaseModel):
    """[x_i, x_j] 展开中的一项 c·x_k"""

    k: int = Field(ge=0)
    c: ScalarStr


class BracketEntryModel(BaseModel):
    i: int = Field(ge=0)
    j: int = Field(ge=0)
    terms: List[BracketTermModel] = Field(default_factory=list)

    @model_validator(mode="after")
    def _ordered(self) -> "BracketEntryModel":
        if self.i >= self.j:
            raise ValueError(f"bracket entry needs i < j, got ({self.i}, {self.j})")
        return self


class DecompositionModel(BaseModel):
    """
    p ⋉ m 分解与幂零理想 h（均为行向量列表）

    m 缺省时取 g；h 缺省时取 m。nilradical_dim 仅用于维数上界的计算。
    """

    p: RowList = Field(default_factory=list)
    m: Optional[RowList] = None
    h: Optional[RowList] = None
    nilradical_dim: Optional[int] = Field(default=None, ge=0)


class LieAlgebraFile(BaseModel):
    name: str
    dim: int = Field(ge=0)
    basis: List[str]
    brackets: List[BracketEntryModel] = Field(default_factory=list)
    decomposition: Optional[DecompositionModel] = None

    model_config = {"extra": "ignore"}

    @model_validator(mode="after")
    def _consistent(self) -> "LieAlgebraFile":
        if len(self.basis) != self.dim:
            raise ValueError(f"basis has {len(self.basis)} labels, expected {self.dim}")
        seen = set()
        for entry in self.brackets:
            if entry.j >= self.dim or any(t.k >= self.dim for t in entry.terms):
                raise ValueError(f"bracket ({entry.i}, {entry.j}) refers to an index >= {self.dim}")
            if (entry.i, entry.j) in seen:
                raise ValueError(f"duplicate bracket entry ({entry.i}, {entry.j})")
            seen.add((entry.i, entry.j))
        if self.decomposition is not None:
            rows = list(self.decomposition.p)
            rows += self.decomposition.m or []
            rows += self.decomposition.h or []
            for row in rows:
                if len(row) != self.dim:
                    raise ValueError(f"decomposition row has length {len(row)}, expected {self.dim}")
        return self


# ==================== 表示文件 ====================


class RepresentationFile(BaseModel):
    degree: int = Field(ge=0)
    algebra: str
    module_basis: List[str]
    matrices: Dict[str, RowList]

    @model_validator(mode="after")
    def _square(self) -> "RepresentationFile":
        if len(self.module_basis) != self.degree:
            raise ValueError(f"module_basis has {len(self.module_basis)} entries, expected {self.degree}")
        for label, rows in self.matrices.items():
            if len(rows) != self.degree or any(len(row) != self.degree for row in rows):
                raise ValueError(f"matrix {label!r} is not {self.degree}x{self.degree}")
        return self


# ==================== 报告 ====================


class BoundReport(BaseModel):
    """构造所得次数与各上界"""

    achieved_degree: int
    quotient_dim: int
    prop_bound: int
    crude_bound: int
    theorem_bound: int
    p_epsilon: int
    birkhoff: int
    d: int
    n: int
    r: int
    e1: int
    e2: int
    class_m: int
    class_h: int

    @property
    def within_prop_bound(self) -> bool:
        return self.quotient_dim <= self.prop_bound


# ==================== CLI 任务 ====================

Command = Literal["validate", "analyze", "build-rep", "verify-rep", "bound", "denumerant", "nil-defect"]


class JobConfig(BaseModel):
    command: Command
    input: Optional[str] = None
    algebra: Optional[str] = None
    output: Optional[str] = None
    ideal: Optional[str] = None
    k1: Optional[int] = Field(default=None, ge=1)
    k2: Optional[int] = Field(default=None, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)
    max_subset: Optional[int] = Field(default=None, ge=0)
    d: Optional[int] = Field(default=None, ge=0)
    n: Optional[int] = Field(default=None, ge=0)
    r: Optional[int] = Field(default=None, ge=0)
    e1: Optional[int] = Field(default=None, ge=0)
    e2: Optional[int] = Field(default=None, ge=0)
    nil_class: Optional[int] = Field(default=None, ge=0)
    t: Optional[int] = Field(default=None, ge=0)
    parts: List[int] = Field(default_factory=list)
    json_output: bool = False

    @model_validator(mode="after")
    def _options_for_command(self) -> "JobConfig":
        if self.command in ("validate", "analyze", "build-rep", "verify-rep", "nil-defect") and not self.input:
            raise ValueError(f"command {self.command!r} needs an input file")
        if self.command == "bound":
            missing = [name for name in ("d", "n", "r", "e1", "e2") if getattr(self, name) is None]
            if missing:
                raise ValueError(f"bound needs --{', --'.join(missing)}")
        if self.command == "denumerant" and (self.t is None or not self.parts):
            raise ValueError("denumerant needs --t and --parts")
        return self
