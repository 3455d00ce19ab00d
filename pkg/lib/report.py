"""
运行配置与报告 - Run configuration and reports

配置由 stdin JSON、--config 文件与命令行参数合并后传入 make_config。
越界数值被裁剪并记录在 warnings 中; 未知枚举值直接报 ConfigError。
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
import pandas as pd

from spectral.errors import ConfigError, LabelArityMismatch
from spectral.ipm import DEFAULT_RESTARTS, INNER_SOLVERS, START_DRAWS
from spectral.rcdm import RCDM_EPS, RCDM_MAX_EPOCHS
from spectral.sdp import SDP_TOL

__all__ = [
    "ALGORITHMS",
    "SPECTRUM_METHODS",
    "RunConfig",
    "make_config",
    "RunReport",
    "clustering_error",
    "side_assignment",
    "write_reports",
    "write_matrix",
]

ALGORITHMS = ("ipm-s", "ipm-h", "sdp")
"""ipm-s: 子模 α 权重上的 IPM; ipm-h: 齐次权重基线; sdp: SDP 松弛 + 舍入"""

SPECTRUM_METHODS = ("ipm", "sdp", "dense")


@dataclass
class RunConfig:
    """
    运行配置 - Sanitised run configuration

    属性:
        algorithms: 'cluster' 运行的算法 (ALGORITHMS 的子集)
        inner: IPM 内层求解器 ('rcdm' | 'sfm')
        restarts: IPM 重启次数
        start_draws: IPM 初始点的随机扫描次数
        seed: 随机种子
        alpha: α 网格; 空表示沿用超图文件中的权重
        eps_outer / max_outer: IPM 外层停止条件
        eps_inner / max_epochs: RCDM 停止条件
        sdp_restarts / sdp_tol: SDP 舍入次数与求解精度
        workers: α 网格与重启的并行度
        p / method: 'spectrum' 的 p 与方法
        suite / instances / max_n: 'verify' 的套件与随机实例规模
        warnings: 清洗过程中的提示
    """

    algorithms: list[str] = field(default_factory=lambda: ["ipm-s", "ipm-h"])
    inner: str = "rcdm"
    restarts: int = DEFAULT_RESTARTS
    start_draws: int = START_DRAWS
    seed: int = 0
    alpha: list[float] = field(default_factory=list)
    eps_outer: float = 1e-6
    max_outer: int = 100
    eps_inner: float = RCDM_EPS
    max_epochs: int = RCDM_MAX_EPOCHS
    sdp_restarts: int = 32
    sdp_tol: float = SDP_TOL
    workers: int = 1
    p: float = 1.0
    method: str = "ipm"
    suite: str = "all"
    instances: int = 10
    max_n: int = 8
    warnings: list[str] = field(default_factory=list)

    def ipm_kwargs(self) -> dict[str, Any]:
        return {
            "eps_outer": self.eps_outer,
            "max_outer": self.max_outer,
            "eps_inner": self.eps_inner,
            "max_epochs": self.max_epochs,
            "start_draws": self.start_draws,
        }

    def echo(self) -> dict[str, Any]:
        data = asdict(self)
        data.pop("warnings")
        return data


def _number(data, key, default, cast, lo, hi, warnings):
    raw = data.get(key, default)
    try:
        value = cast(raw)
    except (TypeError, ValueError):
        warnings.append(f"{key} ignored: invalid value {raw!r}, using default {default}")
        return default
    if value < lo or value > hi:
        clamped = max(lo, min(value, hi))
        warnings.append(f"{key} clamped from {value} to {clamped} (range {lo}-{hi})")
        value = clamped
    return value


def _choice(data, key, default, valid):
    value = data.get(key, default)
    if value not in valid:
        raise ConfigError(f"Unknown {key} '{value}', valid: {sorted(valid)}")
    return value


def make_config(data: dict[str, Any] | None = None) -> RunConfig:
    """
    创建标准化的 RunConfig - Create a sanitised RunConfig

    Args:
        data: 合并后的原始配置字典

    Raises:
        ConfigError: 未知算法、内层求解器、方法或套件; alpha 越界
    """
    from lib.suites import SUITE_REGISTRY

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
    warnings: list[str] = []

    algorithms = data.get("algorithms", ["ipm-s", "ipm-h"])
    if isinstance(algorithms, str):
        algorithms = [algorithms]
    for name in algorithms:
        if name not in ALGORITHMS:
            raise ConfigError(f"Unknown algorithm '{name}', valid: {list(ALGORITHMS)}")
    if not algorithms:
        raise ConfigError("at least one algorithm is required")

    alpha = data.get("alpha") or []
    if not isinstance(alpha, (list, tuple)):
        alpha = [alpha]
    try:
        alpha = [float(a) for a in alpha]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"alpha must be numeric: {exc}") from exc
    for a in alpha:
        if not 0.0 < a <= 0.5:
            raise ConfigError(f"alpha must lie in (0, 0.5], got {a}")

    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {seed!r}")

    p = _number(data, "p", 1.0, float, 1.0, 64.0, warnings)
    method = _choice(data, "method", "ipm", SPECTRUM_METHODS)
    # ipm minimises 𝓡₁; sdp and dense work with 𝓡₂
    forced = 1.0 if method == "ipm" else 2.0
    if "p" in data and p != forced:
        warnings.append(f"method '{method}' works at p = {forced:g}; p changed from {p} to {forced}")
    p = forced

    return RunConfig(
        algorithms=list(dict.fromkeys(algorithms)),
        inner=_choice(data, "inner", "rcdm", set(INNER_SOLVERS)),
        restarts=_number(data, "restarts", DEFAULT_RESTARTS, int, 1, 1000, warnings),
        start_draws=_number(data, "start_draws", START_DRAWS, int, 1, 10000, warnings),
        seed=seed,
        alpha=sorted(set(alpha)),
        eps_outer=_number(data, "eps_outer", 1e-6, float, 1e-12, 1e-1, warnings),
        max_outer=_number(data, "max_outer", 100, int, 1, 10000, warnings),
        eps_inner=_number(data, "eps_inner", RCDM_EPS, float, 1e-16, 1e-3, warnings),
        max_epochs=_number(data, "max_epochs", RCDM_MAX_EPOCHS, int, 1, 1_000_000, warnings),
        sdp_restarts=_number(data, "sdp_restarts", 32, int, 1, 10000, warnings),
        sdp_tol=_number(data, "sdp_tol", SDP_TOL, float, 1e-10, 1e-1, warnings),
        workers=_number(data, "workers", 1, int, 1, 64, warnings),
        p=p,
        method=method,
        suite=_choice(data, "suite", "all", set(SUITE_REGISTRY) | {"all"}),
        instances=_number(data, "instances", 10, int, 1, 1000, warnings),
        max_n=_number(data, "max_n", 8, int, 2, 12, warnings),
        warnings=warnings,
    )


def side_assignment(n: int, side: Iterable[int]) -> np.ndarray:
    """0/1 vector with 1 on `side`."""
    out = np.zeros(n, dtype=np.int64)
    out[list(side)] = 1
    return out


def clustering_error(partition: Sequence[Any], labels: Sequence[Any]) -> int:
    """
    聚类错误数 - Misclassified vertices under the better side-to-label matching

    partition 为每个顶点的侧 (两种取值)，labels 为二值标签。

    clustering_error([0, 0, 1, 1], ['a', 'a', 'b', 'b'])  → 0
    clustering_error([1, 1, 0, 0], ['a', 'a', 'b', 'b'])  → 0

    Raises:
        LabelArityMismatch: 长度不一致，或侧/标签取值超过两种
    """
    partition = list(partition)
    labels = list(labels)
    if len(partition) != len(labels):
        raise LabelArityMismatch(f"partition has {len(partition)} vertices, labels {len(labels)}")
    sides = sorted(set(partition), key=str)
    classes = sorted(set(labels), key=str)
    if len(sides) > 2 or len(classes) > 2:
        raise LabelArityMismatch(
            f"clustering error needs 2 sides and 2 labels, got {len(sides)} sides and {len(classes)} labels"
        )
    side_ids = np.array([sides.index(s) for s in partition])
    label_ids = np.array([classes.index(c) for c in labels])
    direct = int(np.sum(side_ids != label_ids))
    return min(direct, len(partition) - direct)


@dataclass
class RunReport:
    """
    运行报告 - One JSON line per run

    属性:
        algorithm: 'ipm-s' | 'ipm-h' | 'sdp'
        value: λ̂ (IPM) 或 sdp_opt (SDP)
        conductance: 最终阈值切分的导率
        error: 相对真实标签的聚类错误数 (无标签时为 None)
        side: 切分的一侧
        wall_time: 秒
        seed: 种子
        alpha: α (沿用文件权重时为 None)
        config: 配置回显
        details: 算法自身的结果字典
    """

    algorithm: str
    value: float
    conductance: float
    error: int | None
    side: list[int]
    wall_time: float
    seed: int
    alpha: float | None = None
    config: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "alpha": self.alpha,
            "value": float(self.value),
            "conductance": float(self.conductance),
            "error": self.error,
            "side": list(self.side),
            "wall_time": float(self.wall_time),
            "seed": self.seed,
            "config": self.config,
            "details": self.details,
        }


def write_reports(reports: Sequence[RunReport], path: str | Path) -> Path:
    """JSON lines, one report per line, in run order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for report in reports:
            f.write(json.dumps(report.to_dict(), ensure_ascii=False) + "\n")
    return path


def write_matrix(reports: Sequence[RunReport], path: str | Path) -> Path:
    """
    α 矩阵 - CSV with one row per α and one column group per algorithm

    列: alpha, <algorithm>_conductance, <algorithm>_error
    """
    rows = [
        {"alpha": r.alpha, "algorithm": r.algorithm, "conductance": r.conductance, "error": r.error}
        for r in reports
    ]
    frame = pd.DataFrame(rows, columns=["alpha", "algorithm", "conductance", "error"])
    wide = frame.pivot(index="alpha", columns="algorithm", values=["conductance", "error"])
    wide.columns = [f"{algorithm}_{metric}" for metric, algorithm in wide.columns]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    wide.reset_index().to_csv(path, index=False)
    return path
