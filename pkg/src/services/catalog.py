"""
FilePath: /lie_quotient_rep/src/services/catalog.py
Description:
    目录文件读写与分解解析

    负责 JSON 文件 <-> 领域对象 的转换，以及 p ⋉ m 分解、理想选择器的解析。
    解析错误（JSON / pydantic ValidationError / 文件不存在）原样抛出，由 CLI 映射为退出码 2。
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from src.algebra.liealg import (
    LieAlgebra,
    Subspace,
    center,
    is_ideal,
    is_nilpotent,
    killing_radical,
)
from src.core.config import settings
from src.core.errors import (
    DecompositionError,
    IncompatibleAlgebrasError,
    InconsistentDimensionsError,
    NotAnIdealError,
    NotContainedError,
    NotNilpotentError,
)
from src.core.exactalg import Matrix, format_scalar, parse_scalar
from src.schemas.algebra import (
    BracketEntryModel,
    BracketTermModel,
    DecompositionModel,
    LieAlgebraFile,
    RepresentationFile,
)
from src.services.repbuilder import Decomposition, Representation

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# ==================== 李代数文件 ====================


def load_algebra_file(path: PathLike) -> LieAlgebraFile:
    text = Path(path).read_text(encoding="utf-8")
    model = LieAlgebraFile.model_validate(json.loads(text))
    logger.debug("Loaded algebra file %s (%s, dim=%d)", path, model.name, model.dim)
    return model


def algebra_from_model(model: LieAlgebraFile) -> LieAlgebra:
    table = {
        (entry.i, entry.j): {term.k: parse_scalar(term.c) for term in entry.terms}
        for entry in model.brackets
    }
    return LieAlgebra.from_table(model.name, model.dim, table, model.basis)


def subspace_from_rows(rows: Sequence[Sequence[str]], dim: int) -> Subspace:
    return Subspace.span([[parse_scalar(x) for x in row] for row in rows], dim)


def subspace_to_rows(space: Subspace) -> List[List[str]]:
    return [[format_scalar(x) for x in row] for row in space.basis]


def algebra_to_model(
    algebra: LieAlgebra, decomposition: Optional[DecompositionModel] = None
) -> LieAlgebraFile:
    brackets = [
        BracketEntryModel(
            i=i, j=j, terms=[BracketTermModel(k=k, c=format_scalar(c)) for k, c in terms]
        )
        for (i, j), terms in sorted(algebra.brackets.items())
    ]
    return LieAlgebraFile(
        name=algebra.name,
        dim=algebra.dim,
        basis=list(algebra.basis_labels),
        brackets=brackets,
        decomposition=decomposition,
    )


# ==================== 分解与理想 ====================


def resolve_ideal(algebra: LieAlgebra, m: Subspace, selector: str) -> Subspace:
    """
    理想选择器: "full" (h = m) | "center" (Z(g) ∩ m) | "span:i,j,..." (坐标子空间)

    Raises:
        ValueError: 选择器格式无效
        NotContainedError / NotAnIdealError / NotNilpotentError: 结果不是 m 中的幂零理想
    """
    selector = selector.strip()
    if selector == "full":
        h = m
    elif selector == "center":
        h = center(algebra).intersection(m)
    elif selector.startswith("span:"):
        body = selector[len("span:") :]
        try:
            indices = [int(x) for x in body.split(",") if x.strip()]
        except ValueError as e:
            raise ValueError(f"invalid ideal selector {selector!r}") from e
        h = Subspace.coordinate(indices, algebra.dim)
    else:
        raise ValueError(f"invalid ideal selector {selector!r} (expected full, center or span:i,j,...)")
    if not m.includes(h):
        raise NotContainedError(f"ideal {selector!r} is not contained in m")
    if not is_ideal(algebra, h):
        raise NotAnIdealError(f"{selector!r} does not span an ideal")
    if not is_nilpotent(algebra, h):
        raise NotNilpotentError(f"{selector!r} does not span a nilpotent ideal")
    return h


@dataclass(frozen=True, eq=False)
class ResolvedAlgebra:
    algebra: LieAlgebra
    decomposition: Decomposition
    nilradical_dim: int
    radical_dim: int


def resolve_decomposition(model: LieAlgebraFile, ideal: Optional[str] = None) -> ResolvedAlgebra:
    """
    文件中的分解；缺省时要求输入幂零（p = 0, m = g）。h 的优先级：选择器 > 文件 > m

    Raises:
        DecompositionError: 非幂零输入缺少分解
        InconsistentDimensionsError: 声明的幂零根基维数超过根基维数
    """
    algebra = algebra_from_model(model)
    nilpotent = is_nilpotent(algebra)
    block = model.decomposition

    if block is None:
        if not nilpotent:
            logger.error("Algebra %s is not nilpotent and declares no decomposition", algebra.name)
            raise DecompositionError("non-nilpotent input needs an explicit decomposition block")
        p = Subspace.zero(algebra.dim)
        m = Subspace.full(algebra.dim)
        h_rows = None
    else:
        p = subspace_from_rows(block.p, algebra.dim)
        m = subspace_from_rows(block.m, algebra.dim) if block.m is not None else Subspace.full(algebra.dim)
        h_rows = block.h

    if ideal is not None:
        h = resolve_ideal(algebra, m, ideal)
    elif h_rows is not None:
        h = subspace_from_rows(h_rows, algebra.dim)
    else:
        h = m
    decomposition = Decomposition(algebra, p, m, h)

    radical_dim = killing_radical(algebra).dim
    if nilpotent:
        nilradical_dim = algebra.dim
    elif block is not None and block.nilradical_dim is not None:
        nilradical_dim = block.nilradical_dim
    else:
        nilradical_dim = m.dim
        logger.warning(
            "Nilradical dimension of %s not declared; falling back to dim(m)=%d", algebra.name, m.dim
        )
    if nilradical_dim > radical_dim:
        raise InconsistentDimensionsError(
            f"nilradical dimension {nilradical_dim} exceeds radical dimension {radical_dim}"
        )
    return ResolvedAlgebra(algebra, decomposition, nilradical_dim, radical_dim)


# ==================== 表示文件 ====================


def representation_to_model(rep: Representation) -> RepresentationFile:
    matrices: Dict[str, List[List[str]]] = {}
    for label, matrix in zip(rep.labels, rep.matrices):
        matrices[label] = [[format_scalar(x) for x in row] for row in matrix.to_rows()]
    return RepresentationFile(
        degree=rep.degree,
        algebra=rep.algebra_name,
        module_basis=list(rep.module_basis),
        matrices=matrices,
    )


def representation_from_model(model: RepresentationFile, algebra: LieAlgebra) -> Representation:
    """
    Raises:
        IncompatibleAlgebrasError: 文件中的矩阵标签与李代数的基不一致
    """
    if set(model.matrices) != set(algebra.basis_labels):
        raise IncompatibleAlgebrasError(
            f"representation labels {sorted(model.matrices)} do not match basis of {algebra.name!r}"
        )
    matrices = tuple(
        Matrix.from_rows(model.matrices[label], cols=model.degree) for label in algebra.basis_labels
    )
    return Representation(algebra.name, algebra.basis_labels, model.degree, matrices, tuple(model.module_basis))


def load_representation_file(path: PathLike) -> RepresentationFile:
    return RepresentationFile.model_validate(json.loads(Path(path).read_text(encoding="utf-8")))


def write_model(path: PathLike, model) -> None:
    """确定性输出：固定缩进与键序"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(model.model_dump(exclude_none=True), indent=2, ensure_ascii=False)
    path.write_text(text + "\n", encoding="utf-8")
    logger.debug("Wrote %s", path)


def catalog_path(name: str, catalog_dir: Optional[PathLike] = None) -> Path:
    return Path(catalog_dir or settings.CATALOG_DIR) / f"{name}.json"


def list_catalog(catalog_dir: Optional[PathLike] = None) -> List[Path]:
    return sorted(Path(catalog_dir or settings.CATALOG_DIR).glob("*.json"))
