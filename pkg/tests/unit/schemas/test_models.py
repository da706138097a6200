import pytest
from pydantic import ValidationError

from src.schemas.algebra import (
    BoundReport,
    BracketEntryModel,
    JobConfig,
    LieAlgebraFile,
    RepresentationFile,
)


def h3_payload(**overrides) -> dict:
    payload = {
        "name": "heisenberg3",
        "dim": 3,
        "basis": ["x", "y", "z"],
        "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": "1"}]}],
    }
    payload.update(overrides)
    return payload


# =============================================================================
# LieAlgebraFile 边界测试
# =============================================================================


class TestLieAlgebraFileBoundary:
    """LieAlgebraFile 模型边界测试"""

    def test_valid_file(self):
        model = LieAlgebraFile.model_validate(h3_payload())
        assert model.dim == 3
        assert model.decomposition is None

    def test_unknown_keys_ignored(self):
        """测试未知字段被忽略"""
        model = LieAlgebraFile.model_validate(h3_payload(comment="from a notebook"))
        assert not hasattr(model, "comment")

    @pytest.mark.parametrize(
        "overrides, message",
        [
            pytest.param({"basis": ["x", "y"]}, "basis", id="basis_length"),
            pytest.param(
                {"brackets": [{"i": 0, "j": 3, "terms": []}]}, "index", id="index_out_of_range"
            ),
            pytest.param(
                {"brackets": [{"i": 0, "j": 1, "terms": []}, {"i": 0, "j": 1, "terms": []}]},
                "duplicate",
                id="duplicate_entry",
            ),
            pytest.param(
                {"decomposition": {"p": [["1", "0"]]}}, "length", id="decomposition_row_length"
            ),
        ],
    )
    def test_inconsistent_file(self, overrides: dict, message: str):
        """测试不一致的文件抛出 ValidationError"""
        with pytest.raises(ValidationError) as exc_info:
            LieAlgebraFile.model_validate(h3_payload(**overrides))
        assert message in str(exc_info.value)

    @pytest.mark.parametrize(
        "coefficient",
        [
            pytest.param("1.5", id="decimal"),
            pytest.param("1/0", id="zero_denominator"),
            pytest.param("x", id="not_a_number"),
        ],
    )
    def test_invalid_scalar(self, coefficient: str):
        payload = h3_payload(brackets=[{"i": 0, "j": 1, "terms": [{"k": 2, "c": coefficient}]}])
        with pytest.raises(ValidationError):
            LieAlgebraFile.model_validate(payload)

    def test_bracket_entry_order(self):
        """测试 i < j 约束"""
        with pytest.raises(ValidationError):
            BracketEntryModel.model_validate({"i": 1, "j": 0, "terms": []})


# =============================================================================
# RepresentationFile 边界测试
# =============================================================================


class TestRepresentationFileBoundary:
    """RepresentationFile 模型边界测试"""

    def test_square_matrices(self):
        model = RepresentationFile.model_validate(
            {
                "degree": 2,
                "algebra": "abelian1",
                "module_basis": ["r0", "r1"],
                "matrices": {"x1": [["0", "0"], ["1", "0"]]},
            }
        )
        assert model.matrices["x1"][1][0] == "1"

    def test_non_square_rejected(self):
        with pytest.raises(ValidationError):
            RepresentationFile.model_validate(
                {
                    "degree": 2,
                    "algebra": "abelian1",
                    "module_basis": ["r0", "r1"],
                    "matrices": {"x1": [["0", "0", "0"], ["1", "0", "0"]]},
                }
            )

    def test_module_basis_length(self):
        with pytest.raises(ValidationError):
            RepresentationFile.model_validate(
                {"degree": 1, "algebra": "a", "module_basis": [], "matrices": {}}
            )


# =============================================================================
# BoundReport / JobConfig 测试
# =============================================================================


class TestBoundReport:
    def test_within_prop_bound(self):
        report = BoundReport(
            achieved_degree=7, quotient_dim=7, prop_bound=10, crude_bound=10, theorem_bound=10,
            p_epsilon=23, birkhoff=13, d=3, n=3, r=3, e1=2, e2=0, class_m=2, class_h=2,
        )
        assert report.within_prop_bound
        assert "within_prop_bound" not in report.model_dump()


class TestJobConfig:
    """CLI 任务配置校验测试"""

    def test_input_required(self):
        with pytest.raises(ValidationError) as exc_info:
            JobConfig.model_validate({"command": "validate"})
        assert "input" in str(exc_info.value)

    def test_bound_requires_all_parameters(self):
        with pytest.raises(ValidationError) as exc_info:
            JobConfig.model_validate({"command": "bound", "d": 3, "n": 1, "r": 2})
        assert "--e1" in str(exc_info.value)

    def test_denumerant_requires_parts(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate({"command": "denumerant", "t": 4})

    def test_unknown_command(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate({"command": "explode", "input": "x.json"})

    def test_truncation_must_be_positive(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate({"command": "build-rep", "input": "x.json", "k1": 0})
