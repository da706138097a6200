"""
lie-rep 命令行单元测试
"""

import json

import pytest

from src.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main
from src.core.config import settings


def run_json(capsys, argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


class TestParser:
    """参数解析测试"""

    def test_command_required(self):
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args([])
        assert exc_info.value.code == 2

    def test_bound_requires_parameters(self):
        with pytest.raises(SystemExit):
            main(["bound", "--d", "3"])

    def test_class_option(self):
        args = build_parser().parse_args(
            ["bound", "--d", "3", "--n", "1", "--r", "2", "--e1", "1", "--e2", "0", "--class", "2"]
        )
        assert args.nil_class == 2

    def test_parts_list(self):
        args = build_parser().parse_args(["denumerant", "--t", "4", "--parts", "1,2,3"])
        assert args.parts == [1, 2, 3]


class TestValidateCommand:
    """validate 命令测试"""

    def test_valid_algebra(self, capsys, catalog_dir):
        assert main(["validate", str(catalog_dir / "heisenberg3.json")]) == EXIT_OK
        assert "heisenberg3: ok" in capsys.readouterr().out

    def test_jacobi_failure(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text(
            json.dumps(
                {
                    "name": "broken",
                    "dim": 3,
                    "basis": ["a", "b", "c"],
                    "brackets": [
                        {"i": 0, "j": 1, "terms": [{"k": 1, "c": "1"}]},
                        {"i": 1, "j": 2, "terms": [{"k": 0, "c": "1"}]},
                    ],
                }
            )
        )
        code, payload = run_json(capsys, ["validate", str(path)])
        assert code == EXIT_FAILURE
        assert payload["triple"] == [0, 1, 2]
        assert payload["defect"] == ["-1", "0", "0"]

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["validate", str(path)]) == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_USAGE


class TestAnalyzeCommand:
    """analyze 命令测试"""

    def test_heisenberg(self, capsys, catalog_dir):
        code, payload = run_json(capsys, ["analyze", str(catalog_dir / "heisenberg3.json")])
        assert code == EXIT_OK
        assert payload["lower_central_series"] == [3, 1, 0]
        assert payload["class"] == 2
        assert payload["center_dim"] == 1

    def test_with_center_ideal(self, capsys, catalog_dir):
        """h = Z(h3): 滤过 [3, 1, 0]，权 {0, 0, 1}"""
        code, payload = run_json(
            capsys, ["analyze", str(catalog_dir / "heisenberg3.json"), "--ideal", "center"]
        )
        assert code == EXIT_OK
        assert payload["filtration"] == [3, 1, 0]
        assert sorted(payload["weights"]) == [0, 0, 1]

    def test_not_nilpotent(self, capsys, catalog_dir):
        code, payload = run_json(capsys, ["analyze", str(catalog_dir / "sl2.json")])
        assert code == EXIT_OK
        assert payload["class"] is None
        assert payload["radical_dim"] == 0


class TestBuildRepCommand:
    """build-rep 命令测试"""

    def test_heisenberg(self, capsys, catalog_dir, tmp_path):
        output = tmp_path / "h3.rep.json"
        code, payload = run_json(
            capsys, ["build-rep", str(catalog_dir / "heisenberg3.json"), "-o", str(output)]
        )
        assert code == EXIT_OK
        assert output.exists()
        assert payload["achieved_degree"] == 7
        assert payload["prop_bound"] == 10
        assert payload["theorem_bound"] == 10
        assert payload["faithful"] is True

    def test_semidirect_with_p0(self, capsys, catalog_dir, tmp_path):
        code, payload = run_json(
            capsys,
            ["build-rep", str(catalog_dir / "semidirect5.json"), "-o", str(tmp_path / "s.json")],
        )
        assert code == EXIT_OK
        assert payload["p0_dim"] == 1
        assert payload["reductive_degree"] == 2
        assert payload["achieved_degree"] == 9

    def test_table_output(self, capsys, catalog_dir, tmp_path):
        code = main(["build-rep", str(catalog_dir / "abelian2.json"), "-o", str(tmp_path / "a.json")])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "achieved degree" in out
        assert "faithful" in out

    def test_non_reductive_p0(self, capsys, tmp_path):
        """p = h3 在 m = ⟨a⟩ 上作用为 0，p0 = h3 非约化：失败且不写出文件"""
        path = tmp_path / "h3_plus_a.json"
        path.write_text(
            json.dumps(
                {
                    "name": "h3_plus_a",
                    "dim": 4,
                    "basis": ["x", "y", "z", "a"],
                    "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": "1"}]}],
                    "decomposition": {
                        "p": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]],
                        "m": [["0", "0", "0", "1"]],
                    },
                }
            )
        )
        output = tmp_path / "h3_plus_a.rep.json"
        assert main(["build-rep", str(path), "-o", str(output)]) == EXIT_FAILURE
        assert "not reductive" in capsys.readouterr().out
        assert not output.exists()

    def test_ideal_not_an_ideal(self, catalog_dir, tmp_path):
        code = main(
            ["build-rep", str(catalog_dir / "heisenberg3.json"), "--ideal", "span:0", "-o", str(tmp_path / "x.json")]
        )
        assert code == EXIT_FAILURE

    def test_bad_selector(self, catalog_dir, tmp_path):
        code = main(
            ["build-rep", str(catalog_dir / "heisenberg3.json"), "--ideal", "bogus", "-o", str(tmp_path / "x.json")]
        )
        assert code == EXIT_USAGE

    def test_non_positive_truncation(self, catalog_dir):
        assert main(["build-rep", str(catalog_dir / "heisenberg3.json"), "--k1", "0"]) == EXIT_USAGE


class TestVerifyRepCommand:
    """verify-rep 命令测试"""

    @pytest.fixture
    def built(self, catalog_dir, tmp_path):
        output = tmp_path / "h3.rep.json"
        assert main(["build-rep", str(catalog_dir / "heisenberg3.json"), "-o", str(output)]) == EXIT_OK
        return output

    def test_with_algebra_path(self, capsys, catalog_dir, built):
        capsys.readouterr()
        code, payload = run_json(
            capsys, ["verify-rep", str(built), "--algebra", str(catalog_dir / "heisenberg3.json")]
        )
        assert code == EXIT_OK
        assert payload["homomorphism"] is True
        assert payload["faithful"] is True

    def test_catalog_lookup(self, capsys, monkeypatch, catalog_dir, built):
        """未给 --algebra 时按 CATALOG_DIR/<algebra>.json 查找"""
        monkeypatch.setattr(settings, "CATALOG_DIR", str(catalog_dir))
        capsys.readouterr()
        code, payload = run_json(capsys, ["verify-rep", str(built)])
        assert code == EXIT_OK
        assert payload["degree"] == 7

    def test_tampered_matrix(self, capsys, catalog_dir, built):
        data = json.loads(built.read_text(encoding="utf-8"))
        data["matrices"]["x"] = [["0"] * data["degree"] for _ in range(data["degree"])]
        built.write_text(json.dumps(data), encoding="utf-8")
        capsys.readouterr()
        code, payload = run_json(
            capsys, ["verify-rep", str(built), "--algebra", str(catalog_dir / "heisenberg3.json")]
        )
        assert code == EXIT_FAILURE
        assert payload["homomorphism"] is False
        assert payload["failing_pair"] == [0, 1]


class TestCalculatorCommands:
    """bound / denumerant / nil-defect 命令测试"""

    def test_bound(self, capsys):
        code, payload = run_json(
            capsys, ["bound", "--d", "3", "--n", "3", "--r", "3", "--e1", "2", "--e2", "0", "--class", "2"]
        )
        assert code == EXIT_OK
        assert payload["theorem_bound"] == 10
        assert payload["p_epsilon"] == 23
        assert payload["birkhoff"] == 13

    def test_bound_inconsistent(self):
        assert main(["bound", "--d", "3", "--n", "3", "--r", "2", "--e1", "1", "--e2", "0"]) == EXIT_FAILURE

    def test_denumerant(self, capsys):
        code, payload = run_json(capsys, ["denumerant", "--t", "4", "--parts", "1,2,3"])
        assert code == EXIT_OK
        assert payload["denumerant"] == 4
        assert payload["bound"] == 20

    def test_denumerant_zero_part(self):
        assert main(["denumerant", "--t", "4", "--parts", "1,0"]) == EXIT_FAILURE

    def test_nil_defect(self, capsys, catalog_dir):
        code, payload = run_json(capsys, ["nil-defect", str(catalog_dir / "heisenberg3.json")])
        assert code == EXIT_OK
        assert payload["epsilon_upper_bound"] == 2
        assert payload["witness_dim"] == 3
