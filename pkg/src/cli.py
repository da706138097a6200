"""
FilePath: /lie_quotient_rep/src/cli.py
Description:
    命令行入口 lie-rep

    命令列表:
    - validate: 检查 Jacobi 恒等式
    - analyze: 下中心列、类、中心、可解根基，以及给定理想的 (g, h)-滤过与权
    - build-rep: 构造忠实表示并写出 JSON，打印所得次数与各上界
    - verify-rep: 重新检验已保存表示的同态性与忠实性
    - bound: 维数上界计算器
    - denumerant: Δ(t; M) 与其二项式上界
    - nil-defect: 幂零亏量的启发式搜索

    退出码: 0 成功 / 已验证，1 语义失败，2 解析或用法错误。
    stdout 只输出命令结果，日志写到 stderr（存在 log/ 目录时写到 log/lie-rep.log）。
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from src.algebra.filtration import adapt_two_flags, ideal_filtration, weights_from_filtration
from src.algebra.liealg import (
    Subspace,
    center,
    killing_radical,
    lower_central_series,
    validate,
)
from src.core.config import settings
from src.core.errors import LieAlgebraError
from src.core.exactalg import format_scalar
from src.schemas.algebra import JobConfig
from src.services import bounds
from src.services.catalog import (
    algebra_from_model,
    catalog_path,
    load_algebra_file,
    load_representation_file,
    representation_from_model,
    representation_to_model,
    resolve_decomposition,
    resolve_ideal,
    subspace_to_rows,
    write_model,
)
from src.services.repbuilder import assemble, verify_faithful, verify_homomorphism

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def configure_logging() -> None:
    if logging.root.handlers:
        return
    log_dir = Path("log")
    if log_dir.exists() and log_dir.is_dir():
        logging.basicConfig(
            level=settings.get_log_level(),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            filename=str(log_dir / "lie-rep.log"),
            filemode="a",
            encoding="utf-8",
        )
    else:
        logging.basicConfig(
            level=settings.get_log_level(),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            stream=sys.stderr,
        )


def _emit(config: JobConfig, payload: Dict[str, Any], rows: List[str]) -> None:
    if config.json_output:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for row in rows:
            print(row)


def _table(pairs: Sequence[tuple]) -> List[str]:
    width = max(len(str(key)) for key, _ in pairs)
    return [f"{str(key):<{width}}  {value}" for key, value in pairs]


# ==================== 命令实现 ====================


def _cmd_validate(config: JobConfig) -> int:
    algebra = algebra_from_model(load_algebra_file(config.input))
    report = validate(algebra)
    if report.ok:
        _emit(config, {"ok": True, "algebra": algebra.name}, [f"{algebra.name}: ok"])
        return EXIT_OK
    i, j, k = report.triple
    labels = [algebra.basis_labels[x] for x in (i, j, k)]
    defect = [format_scalar(c) for c in report.defect]
    _emit(
        config,
        {"ok": False, "algebra": algebra.name, "triple": [i, j, k], "defect": defect},
        [
            f"{algebra.name}: Jacobi identity fails for ({', '.join(labels)}) at indices ({i}, {j}, {k})",
            f"defect: [{', '.join(defect)}]",
        ],
    )
    return EXIT_FAILURE


def _cmd_analyze(config: JobConfig) -> int:
    algebra = algebra_from_model(load_algebra_file(config.input))
    series = lower_central_series(algebra)
    nilpotent = series[-1].is_zero()
    payload: Dict[str, Any] = {
        "algebra": algebra.name,
        "dim": algebra.dim,
        "lower_central_series": [s.dim for s in series],
        "class": len(series) - 1 if nilpotent else None,
        "center_dim": center(algebra).dim,
        "radical_dim": killing_radical(algebra).dim,
    }
    pairs = [
        ("dim", algebra.dim),
        ("lower central series", payload["lower_central_series"]),
        ("class", payload["class"] if nilpotent else "not nilpotent"),
        ("center dim", payload["center_dim"]),
        ("radical dim", payload["radical_dim"]),
    ]
    if config.ideal:
        full = Subspace.full(algebra.dim)
        h = resolve_ideal(algebra, full, config.ideal)
        filtration = ideal_filtration(algebra, full, h)
        basis = adapt_two_flags(filtration.spaces, filtration.spaces)
        weights = weights_from_filtration(filtration, basis).as_list()
        payload["filtration"] = filtration.dims()
        payload["weights"] = weights
        payload["adapted_basis"] = [[format_scalar(x) for x in v] for v in basis]
        pairs += [("filtration dims", filtration.dims()), ("weights", weights)]
    _emit(config, payload, _table(pairs))
    return EXIT_OK


def _cmd_build_rep(config: JobConfig) -> int:
    model = load_algebra_file(config.input)
    resolved = resolve_decomposition(model, config.ideal)
    decomposition = resolved.decomposition
    algebra = resolved.algebra
    assembly = assemble(decomposition, config.k1, config.k2, config.threads)
    rep = assembly.representation

    homomorphism = verify_homomorphism(rep, algebra)
    faithful = verify_faithful(rep, algebra)
    output = Path(config.output) if config.output else Path(f"{algebra.name}.rep.json")
    write_model(output, representation_to_model(rep))

    report = bounds.build_bound_report(
        d=algebra.dim,
        n=resolved.nilradical_dim,
        r=resolved.radical_dim,
        dim_m=decomposition.m.dim,
        dim_h=decomposition.h.dim,
        class_m=assembly.class_m,
        class_h=assembly.class_h,
        quotient_dim=assembly.quotient_degree,
        achieved_degree=rep.degree,
    )
    payload = {
        "algebra": algebra.name,
        "output": str(output),
        "k1": assembly.k1,
        "k2": assembly.k2,
        "p0_dim": assembly.p0.dim,
        "reductive_degree": assembly.reductive_degree,
        "homomorphism": homomorphism.ok,
        "faithful": faithful.ok,
        **report.model_dump(),
    }
    pairs = [
        ("algebra", algebra.name),
        ("k1, k2", f"{assembly.k1}, {assembly.k2}"),
        ("quotient dim", report.quotient_dim),
        ("achieved degree", report.achieved_degree),
        ("prop_bound", report.prop_bound),
        ("crude_bound", report.crude_bound),
        ("theorem_bound", report.theorem_bound),
        ("homomorphism", str(homomorphism.ok).lower()),
        ("faithful", str(faithful.ok).lower()),
        ("written to", output),
    ]
    _emit(config, payload, _table(pairs))
    return EXIT_OK if homomorphism.ok else EXIT_FAILURE


def _cmd_verify_rep(config: JobConfig) -> int:
    rep_model = load_representation_file(config.input)
    algebra_path = Path(config.algebra) if config.algebra else catalog_path(rep_model.algebra)
    algebra = algebra_from_model(load_algebra_file(algebra_path))
    rep = representation_from_model(rep_model, algebra)
    homomorphism = verify_homomorphism(rep, algebra)
    faithful = verify_faithful(rep, algebra)
    payload: Dict[str, Any] = {
        "algebra": algebra.name,
        "degree": rep.degree,
        "homomorphism": homomorphism.ok,
        "faithful": faithful.ok,
    }
    pairs = [
        ("algebra", algebra.name),
        ("degree", rep.degree),
        ("homomorphism", str(homomorphism.ok).lower()),
        ("faithful", str(faithful.ok).lower()),
    ]
    if not homomorphism.ok:
        payload["failing_pair"] = list(homomorphism.pair)
        pairs.append(("failing pair", homomorphism.pair))
    if not faithful.ok:
        kernel = [[format_scalar(x) for x in v] for v in faithful.kernel]
        payload["kernel"] = kernel
        pairs.append(("kernel", kernel))
    _emit(config, payload, _table(pairs))
    return EXIT_OK if homomorphism.ok and faithful.ok else EXIT_FAILURE


def _cmd_bound(config: JobConfig) -> int:
    value = bounds.theorem_bound(config.d, config.n, config.r, config.e1, config.e2)
    epsilon = config.e1 + config.e2
    payload: Dict[str, Any] = {
        "d": config.d,
        "n": config.n,
        "r": config.r,
        "e1": config.e1,
        "e2": config.e2,
        "theorem_bound": value,
        "p_epsilon": bounds.p_epsilon(epsilon, config.d),
    }
    pairs = [("theorem_bound", value), (f"P_{epsilon}({config.d})", payload["p_epsilon"])]
    if config.nil_class is not None:
        payload["birkhoff"] = bounds.birkhoff_dim(config.d, config.nil_class)
        pairs.append(("birkhoff", payload["birkhoff"]))
    _emit(config, payload, _table(pairs))
    return EXIT_OK


def _cmd_denumerant(config: JobConfig) -> int:
    value = bounds.denumerant(config.t, config.parts)
    bound = bounds.denumerant_bound(config.t, len(config.parts))
    payload = {"t": config.t, "parts": config.parts, "denumerant": value, "bound": bound}
    _emit(config, payload, _table([("denumerant", value), ("bound", bound)]))
    return EXIT_OK


def _cmd_nil_defect(config: JobConfig) -> int:
    algebra = algebra_from_model(load_algebra_file(config.input))
    result = bounds.nil_defect_search(algebra, max_subset=config.max_subset)
    witness = subspace_to_rows(result.witness)
    payload = {
        "algebra": algebra.name,
        "epsilon_upper_bound": result.epsilon,
        "witness_dim": result.witness.dim,
        "witness_class": result.witness_class,
        "witness": witness,
        "candidates": result.candidates,
    }
    pairs = [
        ("epsilon <=", result.epsilon),
        ("witness dim", result.witness.dim),
        ("witness class", result.witness_class),
        ("witness", witness),
    ]
    _emit(config, payload, _table(pairs))
    return EXIT_OK


COMMANDS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "build-rep": _cmd_build_rep,
    "verify-rep": _cmd_verify_rep,
    "bound": _cmd_bound,
    "denumerant": _cmd_denumerant,
    "nil-defect": _cmd_nil_defect,
}


def run(config: JobConfig) -> int:
    """执行一个命令并返回退出码"""
    logger.debug("Running command %s", config.command)
    try:
        return COMMANDS[config.command](config)
    except (ValidationError, json.JSONDecodeError, FileNotFoundError) as e:
        logger.error("Input error: %s", e)
        print(f"error: {e}")
        return EXIT_USAGE
    except LieAlgebraError as e:
        logger.error("%s: %s", type(e).__name__, e)
        print(f"error: {e}")
        return EXIT_FAILURE
    except ValueError as e:
        logger.error("Invalid argument: %s", e)
        print(f"error: {e}")
        return EXIT_USAGE


# ==================== 参数解析 ====================


def _parts(value: str) -> List[int]:
    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid parts list {value!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lie-rep", description="Faithful representations of Lie algebras via truncated enveloping algebras"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", dest="json_output", action="store_true", help="machine-readable output")
        return p

    p = with_json(sub.add_parser("validate", help="check the Jacobi identity"))
    p.add_argument("input")

    p = with_json(sub.add_parser("analyze", help="series, class, center and radical"))
    p.add_argument("input")
    p.add_argument("--ideal", help="full | center | span:i,j,...")

    p = with_json(sub.add_parser("build-rep", help="build a faithful representation"))
    p.add_argument("input")
    p.add_argument("--ideal", help="full | center | span:i,j,...")
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--output", "-o")

    p = with_json(sub.add_parser("verify-rep", help="re-check a stored representation"))
    p.add_argument("input")
    p.add_argument("--algebra", help="algebra file (default: CATALOG_DIR/<algebra>.json)")

    p = with_json(sub.add_parser("bound", help="dimension bound calculator"))
    for name in ("d", "n", "r", "e1", "e2"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--class", dest="nil_class", type=int)

    p = with_json(sub.add_parser("denumerant", help="number of M-partitions of t"))
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--parts", type=_parts, required=True)

    p = with_json(sub.add_parser("nil-defect", help="heuristic nil-defect search"))
    p.add_argument("input")
    p.add_argument("--max-subset", dest="max_subset", type=int)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        config = JobConfig.model_validate({k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as e:
        print(f"error: {e}")
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
