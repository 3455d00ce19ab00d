#!/usr/bin/env python3
"""
SUBHYP - Submodular Hypergraph Spectral Clustering CLI
子模超图谱聚类命令行工具

Usage:

    # CSV → hypergraph JSON
    python3 subhyp.py ingest --csv data.csv --label class --alpha 0.04 --bins 10 --out H.json

    # Cluster (IPM on submodular and homogeneous weights, optionally SDP)
    python3 subhyp.py cluster --hypergraph H.json --inner rcdm --restarts 3 --seed 0 --out report.jsonl

    # λ̂ traces, eigenpair certificates, nodal domains
    python3 subhyp.py spectrum --hypergraph H.json --p 2 --method sdp

    # Property suites on random instances
    python3 subhyp.py verify --suite all --seed 0

    # Query available options
    python3 subhyp.py capabilities

配置优先级: stdin JSON < --config 文件 < 命令行参数。
"""

from __future__ import annotations

import argparse
import concurrent.futures as futures
import json
import logging
import os
import select
import sys
import time
from typing import Any

from subhyp_version import __version__

# Ensure project root on path
_script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, _script_dir)

from spectral.errors import ConfigError, NotConnected, SubhypError  # noqa: E402

logger = logging.getLogger("subhyp")

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _error_exit(message, errors=None, code=1):
    """输出结构化 JSON 错误并退出 - Print structured JSON error to stdout and exit"""
    result = {"status": "error", "message": message}
    if errors:
        result["errors"] = errors
    print(json.dumps(result, ensure_ascii=False))
    sys.exit(code)


def _setup_logging(level):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(getattr(logging, level))


def _read_stdin_json():
    """Non-blocking read of a JSON object from stdin; {} when nothing is piped."""
    if sys.stdin is None or sys.stdin.isatty():
        return {}
    try:
        ready, _, _ = select.select([sys.stdin], [], [], 0.1)
        if ready:
            raw = sys.stdin.read()
            if raw.strip():
                return json.loads(raw)
    except json.JSONDecodeError as e:
        _error_exit(f"Invalid stdin JSON: {e}")
    except (IOError, OSError, ValueError):
        pass
    return {}


def _merge_config(args, flags):
    """stdin JSON < --config file < CLI flags (only flags given on the command line)."""
    data = dict(_read_stdin_json())
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as f:
                data.update(json.load(f))
        except FileNotFoundError:
            _error_exit(f"Config file not found: {args.config}")
        except json.JSONDecodeError as e:
            _error_exit(f"Invalid config JSON: {e}")
    for key in flags:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    return data


def _emit(record):
    print(json.dumps(record, ensure_ascii=False))


# ==================== ingest ====================


def cmd_ingest(args):
    """
    数据集 → 超图 - Ingest a CSV (or registry dataset) into hypergraph JSON
    """
    from lib.dataset import DatasetSpec, build_hypergraph, dataset_spec, load_frame, summarize
    from spectral.hypergraph import save_hypergraph

    overrides = {
        "label": args.label,
        "bins": args.bins,
        "alpha": args.alpha,
        "theta": args.theta,
        "binning": args.binning,
        "categorical": args.categorical,
        "numerical": args.numerical,
    }
    if args.dataset:
        spec = dataset_spec(args.dataset, download=args.download, **overrides)
    elif args.csv:
        spec = DatasetSpec(source=args.csv, **{k: v for k, v in overrides.items() if v is not None})
    else:
        raise ConfigError("ingest needs --csv or --dataset")

    frame, dropped = load_frame(spec)
    G = build_hypergraph(frame, spec)
    path = save_hypergraph(G, args.out)
    output = {"status": "ok", "path": os.path.abspath(path), "dropped_rows": dropped}
    output.update(summarize(G))
    _emit(output)


# ==================== cluster ====================


def _weighted(G, alpha):
    from spectral.hypergraph import with_weights

    if alpha is None:
        return G
    return with_weights(G, {"kind": "alpha", "params": {"alpha": alpha}})


def _run_one(G, algorithm, alpha, config):
    from lib.report import RunReport, clustering_error, side_assignment
    from spectral.hypergraph import conductance, with_weights
    from spectral.ipm import cluster_ipm
    from spectral.sdp import minimize_r2

    started = time.perf_counter()
    H = _weighted(G, alpha)
    if algorithm == "ipm-s":
        result = cluster_ipm(H, inner=config.inner, restarts=config.restarts, seed=config.seed,
                             **config.ipm_kwargs())
        value, side, details = result.lambda_hat, result.sweep.side, result.to_dict()
    elif algorithm == "ipm-h":
        base = with_weights(G, {"kind": "homogeneous"})
        result = cluster_ipm(base, inner=config.inner, restarts=config.restarts, seed=config.seed,
                             **config.ipm_kwargs())
        value, side, details = result.lambda_hat, result.sweep.side, result.to_dict()
    else:
        run = minimize_r2(H, restarts=config.sdp_restarts, seed=config.seed, tol=config.sdp_tol)
        value, side, details = run.sdp_opt, run.sweep.side, run.to_dict()

    error = None
    if G.labels is not None:
        error = clustering_error(side_assignment(G.n, side), G.labels)
    return RunReport(
        algorithm=algorithm,
        value=value,
        conductance=conductance(H, side),
        error=error,
        side=list(side),
        wall_time=time.perf_counter() - started,
        seed=config.seed,
        alpha=alpha,
        config=config.echo(),
        details=details,
    )


def cmd_cluster(args):
    """
    聚类 - IPM-S / IPM-H / SDP on a hypergraph, one report per (α, algorithm)

    报告按 α 升序、算法顺序逐行输出到 stdout (JSON lines)。
    """
    from lib.report import make_config, write_matrix, write_reports
    from spectral.hypergraph import load_hypergraph

    data = _merge_config(args, ["algorithms", "inner", "restarts", "seed", "alpha", "workers",
                                "eps_outer", "max_outer", "sdp_restarts"])
    config = make_config(data)
    G = load_hypergraph(args.hypergraph)

    runs = [(alpha, algorithm) for alpha in (config.alpha or [None]) for algorithm in config.algorithms]
    logger.info("cluster: %d runs on %r with %d workers", len(runs), G, config.workers)
    if config.workers > 1 and len(runs) > 1:
        with futures.ThreadPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(lambda run: _run_one(G, run[1], run[0], config), runs))
    else:
        reports = [_run_one(G, algorithm, alpha, config) for alpha, algorithm in runs]

    if args.out:
        write_reports(reports, args.out)
    if args.matrix_out:
        if not config.alpha:
            config.warnings.append("--matrix-out ignored: no --alpha grid given")
        else:
            write_matrix(reports, args.matrix_out)
    for report in reports:
        record = {"status": "ok"}
        record.update(report.to_dict())
        if config.warnings:
            record["warnings"] = config.warnings
        _emit(record)


# ==================== spectrum ====================


def _certificate(G, x, lam, p, warnings):
    from spectral.eigenpair import certify_eigenpair

    try:
        return certify_eigenpair(G, x, lam, p).to_dict()
    except NotConnected as e:
        warnings.append(f"eigenpair certificate skipped: {e}")
        return None


def cmd_spectrum(args):
    """
    谱信息 - λ̂ trace (ipm), SDP bound (sdp) or exact graph spectrum (dense)
    """
    from lib.report import make_config
    from spectral.ipm import cluster_ipm
    from spectral.hypergraph import load_hypergraph
    from spectral.nodal import nodal_domains
    from spectral.oracle import dense_graph_spectrum
    from spectral.sdp import minimize_r2

    data = _merge_config(args, ["p", "method", "inner", "restarts", "seed"])
    config = make_config(data)
    G = load_hypergraph(args.hypergraph)
    warnings = list(config.warnings)
    output: dict[str, Any] = {"status": "ok", "method": config.method, "p": config.p}

    if config.method == "ipm":
        result = cluster_ipm(G, inner=config.inner, restarts=config.restarts, seed=config.seed,
                             **config.ipm_kwargs())
        output["ipm"] = result.to_dict()
        output["certificate"] = _certificate(G, result.x, result.lambda_hat, config.p, warnings)
        output["nodal_domains"] = nodal_domains(G, result.x).to_dict()
    elif config.method == "sdp":
        run = minimize_r2(G, restarts=config.sdp_restarts, seed=config.seed, tol=config.sdp_tol)
        output["sdp"] = run.to_dict()
        output["nodal_domains"] = nodal_domains(G, run.x).to_dict()
    else:
        values, vectors = dense_graph_spectrum(G)
        output["eigenvalues"] = [float(v) for v in values]
        output["eigenvectors"] = [[float(v) for v in vectors[:, k]] for k in range(G.n)]
        output["nodal_counts"] = [
            {"strong": d.strong_count, "weak": d.weak_count}
            for d in (nodal_domains(G, vectors[:, k]) for k in range(G.n))
        ]
        if G.n >= 2:
            output["certificate"] = _certificate(G, vectors[:, 1], values[1], config.p, warnings)

    if warnings:
        output["warnings"] = warnings
    _emit(output)


# ==================== verify ====================


def cmd_verify(args):
    """
    性质检查 - Run property suites on random instances or a given hypergraph

    全部通过时退出码 0，否则 3。
    """
    from lib.report import make_config
    from lib.suites import run_suites
    from spectral.hypergraph import load_hypergraph

    data = _merge_config(args, ["suite", "seed", "instances", "max_n"])
    config = make_config(data)
    instances = [load_hypergraph(args.hypergraph)] if args.hypergraph else None
    summary = run_suites(config.suite, instances, count=config.instances, max_n=config.max_n, seed=config.seed)
    output = {"status": "ok" if summary["passed"] else "failed", "seed": config.seed}
    output.update(summary)
    if config.warnings:
        output["warnings"] = config.warnings
    _emit(output)
    if not summary["passed"]:
        sys.exit(3)


# ==================== capabilities ====================


def cmd_capabilities(args):
    """
    输出能力描述 - Output capabilities schema

    Returns JSON describing weight kinds, solvers, suites, datasets and output schemas.
    """
    from lib.dataset import BINNING_MODES, DATASETS
    from lib.report import ALGORITHMS, SPECTRUM_METHODS
    from lib.suites import SUITE_REGISTRY
    from spectral.ipm import INNER_SOLVERS
    from spectral.submodular.weights import WEIGHT_REGISTRY

    capabilities = {
        "version": __version__,
        "description": "SUBHYP - spectral clustering on submodular hypergraphs.",
        "commands": {
            "ingest": "CSV or registry dataset → hypergraph JSON",
            "cluster": "IPM-S / IPM-H / SDP clustering, one JSON report per run",
            "spectrum": "λ̂ traces, eigenpair certificates and nodal domains",
            "verify": "Property suites on random instances",
            "capabilities": "This command - list all options",
        },
        "weight_kinds": sorted(WEIGHT_REGISTRY),
        "inner_solvers": {name: norm for name, (norm, _) in sorted(INNER_SOLVERS.items())},
        "algorithms": list(ALGORITHMS),
        "spectrum_methods": list(SPECTRUM_METHODS),
        "suites": {name: suite.description for name, suite in SUITE_REGISTRY.items()},
        "datasets": {name: source.description for name, source in sorted(DATASETS.items())},
        "binning": list(BINNING_MODES),
        "exit_codes": {"0": "ok", "1": "config error", "2": "data error", "3": "numerical failure"},
        "input_schema": {
            "algorithms": "list[str] - subset of algorithms (default ['ipm-s', 'ipm-h'])",
            "inner": "string - inner solver (rcdm|sfm)",
            "restarts": "int - IPM restarts (1-1000, default 3)",
            "start_draws": "int - random sweeps behind each IPM start (1-10000, default 64)",
            "seed": "int - reproducibility seed",
            "alpha": "list[float] - α grid in (0, 0.5] for AlphaCardinality weights",
            "workers": "int - parallel runs (1-64)",
            "eps_outer": "float - IPM relative improvement threshold",
            "max_outer": "int - IPM outer iteration cap",
            "sdp_restarts": "int - Gaussian rounding draws",
            "p": "float - p for spectrum",
            "method": "string - spectrum method (ipm|sdp|dense)",
            "suite": "string - verify suite name or 'all'",
            "instances": "int - random instances for verify",
            "max_n": "int - largest random instance for verify (2-12)",
        },
        "output_schema": {
            "ingest": {
                "status": "string (ok|error)",
                "path": "string - absolute path to hypergraph JSON",
                "n": "int - vertices", "m": "int - hyperedges", "total_size": "int - Σ|e|",
                "edges": "list[{label, size}]",
                "dropped_rows": "int - rows dropped for missing values",
            },
            "cluster": {
                "status": "string (ok|error)",
                "algorithm": "string", "alpha": "float|null",
                "value": "float - λ̂ (ipm) or sdp_opt (sdp)",
                "conductance": "float - conductance of the returned cut",
                "error": "int|null - clustering error vs labels",
                "side": "list[int]", "wall_time": "float", "seed": "int",
                "warnings": "list[string]|absent - present when inputs were sanitized",
            },
            "spectrum": {
                "status": "string (ok|error)",
                "ipm|sdp|eigenvalues": "method-specific result",
                "certificate": "{lambda, p, residual, valid, x, witnesses}|null",
            },
            "verify": {
                "status": "string (ok|failed|error)",
                "passed": "bool",
                "suites": "dict[name, {instances, checks, failures}]",
            },
        },
    }

    format_type = args.format if hasattr(args, "format") else "json"
    if format_type == "json":
        print(json.dumps(capabilities, ensure_ascii=False, indent=2))
    else:
        print("=== SUBHYP Capabilities ===\n")
        print(f"Weight kinds: {', '.join(capabilities['weight_kinds'])}")
        print(f"Inner solvers: {', '.join(capabilities['inner_solvers'])}")
        print(f"Algorithms: {', '.join(capabilities['algorithms'])}")
        print(f"Suites ({len(SUITE_REGISTRY)}):")
        for name, description in capabilities["suites"].items():
            print(f"  {name:<14} {description}")
        print(f"Datasets: {', '.join(capabilities['datasets'])}")


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors: JSON on stdout, exit code 1."""

    def error(self, message):
        _error_exit(f"{self.prog}: {message}", code=1)


def build_parser():
    """构建 CLI 解析器 - Build CLI parser"""
    parser = _Parser(
        prog="subhyp",
        description="SUBHYP - spectral clustering on submodular hypergraphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=_LOG_LEVELS, default="WARNING", help="stderr 日志级别")
    subparsers = parser.add_subparsers(dest="command", help="子命令 Subcommand")

    # === ingest ===
    ing = subparsers.add_parser("ingest", help="CSV → 超图 JSON")
    ing.add_argument("--csv", help="CSV 路径 (相对路径也在 SUBHYP_DATA_DIR 下查找)")
    ing.add_argument("--dataset", help="注册表数据集名 (如 mushrooms)")
    ing.add_argument("--download", action="store_true", help="允许下载未缓存的数据集")
    ing.add_argument("--label", help="真实标签列")
    ing.add_argument("--alpha", type=float, help="AlphaCardinality α, (0, 0.5]")
    ing.add_argument("--bins", type=int, help="数值列箱数 (默认 10)")
    ing.add_argument("--binning", choices=["width", "frequency"], help="分箱方式 (默认 width)")
    ing.add_argument("--theta", type=float, help="超边尺度 ϑ_e (默认 1)")
    ing.add_argument("--categorical", nargs="*", help="类别列")
    ing.add_argument("--numerical", nargs="*", help="数值列")
    ing.add_argument("--out", required=True, help="输出超图 JSON")

    # === cluster ===
    clu = subparsers.add_parser("cluster", help="聚类 Cluster")
    clu.add_argument("--hypergraph", required=True, help="超图 JSON")
    clu.add_argument("--algorithms", nargs="*", choices=["ipm-s", "ipm-h", "sdp"], help="算法")
    clu.add_argument("--inner", help="内层求解器 (rcdm|sfm)")
    clu.add_argument("--restarts", type=int, help="IPM 重启次数")
    clu.add_argument("--seed", type=int, help="随机种子")
    clu.add_argument("--alpha", type=float, nargs="*", help="α 网格")
    clu.add_argument("--workers", type=int, help="并行运行数")
    clu.add_argument("--eps-outer", type=float, dest="eps_outer", help="IPM 相对改进阈值")
    clu.add_argument("--max-outer", type=int, dest="max_outer", help="IPM 外层迭代上限")
    clu.add_argument("--sdp-restarts", type=int, dest="sdp_restarts", help="SDP 舍入次数")
    clu.add_argument("--config", help="JSON 配置文件")
    clu.add_argument("--out", help="报告 JSON lines 文件")
    clu.add_argument("--matrix-out", dest="matrix_out", help="每个 α 一行的 CSV 矩阵")

    # === spectrum ===
    spe = subparsers.add_parser("spectrum", help="谱信息 Spectrum")
    spe.add_argument("--hypergraph", required=True, help="超图 JSON")
    spe.add_argument("--p", type=float, help="p ≥ 1")
    spe.add_argument("--method", choices=["ipm", "sdp", "dense"], help="方法")
    spe.add_argument("--inner", help="IPM 内层求解器")
    spe.add_argument("--restarts", type=int, help="IPM 重启次数")
    spe.add_argument("--seed", type=int, help="随机种子")
    spe.add_argument("--config", help="JSON 配置文件")

    # === verify ===
    ver = subparsers.add_parser("verify", help="性质检查 Verify")
    ver.add_argument("--suite", help="套件名或 all")
    ver.add_argument("--seed", type=int, help="随机种子")
    ver.add_argument("--instances", type=int, help="随机实例数")
    ver.add_argument("--max-n", type=int, dest="max_n", help="随机实例最大顶点数")
    ver.add_argument("--hypergraph", help="改为在该超图上运行")
    ver.add_argument("--config", help="JSON 配置文件")

    # === capabilities ===
    cap = subparsers.add_parser("capabilities", help="列出所有可用选项")
    cap.add_argument(
        "--format",
        choices=["json", "text"],
        default="json",
        help="输出格式 (default: json)",
    )

    return parser


_COMMANDS = {
    "ingest": cmd_ingest,
    "cluster": cmd_cluster,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "capabilities": cmd_capabilities,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.log_level)

    command = _COMMANDS.get(args.command)
    if command is None:
        parser.print_help()
        sys.exit(1)
    try:
        command(args)
    except SubhypError as e:
        _error_exit(str(e), code=e.exit_code)


if __name__ == "__main__":
    main()
