"""
数据集 → 超图 - Dataset ingestion

CSV 每行一个顶点。每个 (类别特征, 取值) 生成一条超边，包含该取值的所有行;
数值特征先分箱 (默认 10 个等宽箱)，每个 (特征, 箱) 一条超边。
|e| ≤ 1 的超边丢弃，ϑ_e = 1，权重为 AlphaCardinality(α)，μ = 度数。

超边标签: 类别为 'feature=value'，数值为 'feature[bin]'。

可选的 UCI 数据集通过 DATASETS 注册表下载，缓存在 SUBHYP_DATA_DIR，
默认不联网。
"""

from __future__ import annotations

import logging
import os
import urllib.error
import urllib.request
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from spectral.errors import ConfigError, DataError, EmptyHypergraph, ParseError
from spectral.hypergraph import Hyperedge, SubmodularHypergraph
from spectral.submodular.weights import AlphaCardinalityWeight

logger = logging.getLogger(__name__)

__all__ = [
    "BINNING_MODES",
    "DATASETS",
    "DatasetSource",
    "DatasetSpec",
    "data_dir",
    "resolve_source",
    "fetch_dataset",
    "dataset_spec",
    "load_frame",
    "build_hypergraph",
    "ingest",
    "summarize",
]

BINNING_MODES = ("width", "frequency")
"""数值分箱: width → 观测范围上的等宽箱 (pd.cut); frequency → 等频箱 (pd.qcut)"""

DATA_DIR_ENV = "SUBHYP_DATA_DIR"


@dataclass
class DatasetSpec:
    """
    数据集规格 - How a CSV becomes a hypergraph

    属性:
        source: CSV 路径 (相对路径在 SUBHYP_DATA_DIR 下查找)
        label: 真实标签列 (不生成超边)
        categorical: 类别列; None 时按 dtype 推断 (非数值即类别)
        numerical: 数值列; None 时按 dtype 推断
        bins: 数值列的箱数 (≥ 2)
        alpha: AlphaCardinality 参数，(0, 0.5]
        theta: 超边尺度 ϑ_e
        binning: 'width' | 'frequency'
        names: 无表头 CSV 的列名
        keep_labels: 仅保留这些标签值的行 (None 表示全部)
    """

    source: str
    label: str | None = None
    categorical: list[str] | None = None
    numerical: list[str] | None = None
    bins: int = 10
    alpha: float = 0.04
    theta: float = 1.0
    binning: str = "width"
    names: list[str] | None = None
    keep_labels: list[str] | None = None

    def __post_init__(self):
        self.source = str(self.source)
        if int(self.bins) < 2:
            raise ConfigError(f"bins must be ≥ 2, got {self.bins}")
        self.bins = int(self.bins)
        if not (0.0 < float(self.alpha) <= 0.5):
            raise ConfigError(f"alpha must lie in (0, 0.5], got {self.alpha}")
        self.alpha = float(self.alpha)
        if not float(self.theta) > 0:
            raise ConfigError(f"theta must be positive, got {self.theta}")
        self.theta = float(self.theta)
        if self.binning not in BINNING_MODES:
            raise ConfigError(f"binning must be one of {BINNING_MODES}, got '{self.binning}'")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class DatasetSource:
    """A downloadable dataset: where it lives and how to read it."""

    url: str
    filename: str
    label: str
    names: tuple[str, ...] = ()
    numerical: tuple[str, ...] = ()
    description: str = ""
    keep_labels: tuple[str, ...] = field(default_factory=tuple)


_MUSHROOM_COLUMNS = (
    "class", "cap-shape", "cap-surface", "cap-color", "bruises", "odor",
    "gill-attachment", "gill-spacing", "gill-size", "gill-color", "stalk-shape",
    "stalk-root", "stalk-surface-above-ring", "stalk-surface-below-ring",
    "stalk-color-above-ring", "stalk-color-below-ring", "veil-type", "veil-color",
    "ring-number", "ring-type", "spore-print-color", "population", "habitat",
)

DATASETS: dict[str, DatasetSource] = {
    "mushrooms": DatasetSource(
        url="https://archive.ics.uci.edu/ml/machine-learning-databases/mushroom/agaricus-lepiota.data",
        filename="agaricus-lepiota.data",
        label="class",
        names=_MUSHROOM_COLUMNS,
        description="UCI Mushrooms: 8124 rows, 22 categorical features, edible/poisonous",
    ),
}
"""
数据集注册表 - Dataset Registry

名称 → DatasetSource。'?' (缺失) 作为普通类别保留，|V| 保持 8124。
"""


def data_dir() -> Path:
    """Dataset cache directory from SUBHYP_DATA_DIR (default ~/.cache/subhyp)."""
    return Path(os.environ.get(DATA_DIR_ENV) or Path.home() / ".cache" / "subhyp")


def resolve_source(source: str | Path) -> Path:
    """Existing path as given, else the same relative name under the cache directory."""
    path = Path(source)
    if path.exists() or path.is_absolute():
        return path
    cached = data_dir() / path
    return cached if cached.exists() else path


def fetch_dataset(name: str, download: bool = False) -> Path:
    """
    获取数据集 - Cached path of a registry dataset

    缓存中不存在且 download=False 时报错，不会隐式联网。

    Raises:
        ConfigError: 未知数据集
        DataError: 未缓存且未允许下载，或下载失败
    """
    if name not in DATASETS:
        raise ConfigError(f"Unknown dataset '{name}', valid: {sorted(DATASETS)}")
    source = DATASETS[name]
    path = data_dir() / source.filename
    if path.exists():
        return path
    if not download:
        raise DataError(f"dataset '{name}' is not cached at {path}; pass --download to fetch it")
    path.parent.mkdir(parents=True, exist_ok=True)
    logger.info("dataset: downloading %s to %s", source.url, path)
    try:
        urllib.request.urlretrieve(source.url, path)
    except (urllib.error.URLError, OSError) as exc:
        path.unlink(missing_ok=True)
        raise DataError(f"could not download '{name}' from {source.url}: {exc}") from exc
    return path


def dataset_spec(name: str, download: bool = False, **overrides: Any) -> DatasetSpec:
    """DatasetSpec for a registry dataset, fetching it first if allowed."""
    path = fetch_dataset(name, download=download)
    source = DATASETS[name]
    params: dict[str, Any] = {
        "source": str(path),
        "label": source.label,
        "names": list(source.names) or None,
        "numerical": list(source.numerical) or None,
        "keep_labels": list(source.keep_labels) or None,
    }
    if source.names and not source.numerical:
        params["categorical"] = [c for c in source.names if c != source.label]
        params["numerical"] = []
    params.update({k: v for k, v in overrides.items() if v is not None})
    return DatasetSpec(**params)


def load_frame(spec: DatasetSpec) -> tuple[pd.DataFrame, int]:
    """
    读取 CSV - Read the CSV and drop rows with missing values

    返回 (数据帧, 丢弃行数)。所有列按字符串读取，数值列稍后转换。

    Raises:
        ParseError: 文件缺失或无法解析
    """
    path = resolve_source(spec.source)
    try:
        frame = pd.read_csv(
            path,
            header=None if spec.names else "infer",
            names=spec.names,
            dtype=str,
            skipinitialspace=True,
        )
    except FileNotFoundError as exc:
        raise ParseError(f"dataset file not found: {path}") from exc
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ParseError(f"could not parse {path}: {exc}") from exc

    if spec.label is not None and spec.label not in frame.columns:
        raise ParseError(f"label column '{spec.label}' not found", column=spec.label)
    if spec.keep_labels is not None:
        frame = frame[frame[spec.label].isin([str(v) for v in spec.keep_labels])]
    before = len(frame)
    frame = frame.dropna(how="any").reset_index(drop=True)
    dropped = before - len(frame)
    if dropped:
        logger.warning("dataset: dropped %d rows with missing values", dropped)
    return frame, dropped


def _column_kinds(frame: pd.DataFrame, spec: DatasetSpec) -> tuple[list[str], list[str]]:
    features = [c for c in frame.columns if c != spec.label]
    for name in (spec.categorical or []) + (spec.numerical or []):
        if name not in frame.columns:
            raise ParseError(f"column '{name}' not found", column=name)
    if spec.categorical is not None and spec.numerical is not None:
        return list(spec.categorical), list(spec.numerical)
    categorical, numerical = [], []
    for c in features:
        if spec.categorical is not None and c in spec.categorical:
            categorical.append(c)
        elif spec.numerical is not None and c in spec.numerical:
            numerical.append(c)
        elif spec.numerical is None and pd.to_numeric(frame[c], errors="coerce").notna().all():
            numerical.append(c)
        elif spec.categorical is None:
            categorical.append(c)
    return categorical, numerical


def _numeric(frame: pd.DataFrame, column: str) -> pd.Series:
    values = pd.to_numeric(frame[column], errors="coerce")
    bad = np.flatnonzero(values.isna().to_numpy())
    if bad.size:
        row = int(bad[0])
        raise ParseError(f"non-numeric value {frame[column].iloc[row]!r}", row=row + 1, column=column)
    return values


def _bin(values: pd.Series, spec: DatasetSpec) -> np.ndarray:
    if spec.binning == "width":
        codes = pd.cut(values, spec.bins, labels=False, include_lowest=True)
    else:
        codes = pd.qcut(values, spec.bins, labels=False, duplicates="drop")
    return np.asarray(codes, dtype=np.int64)


def build_hypergraph(frame: pd.DataFrame, spec: DatasetSpec) -> SubmodularHypergraph:
    """
    构建超图 - One hyperedge per (feature, value) or (feature, bin)

    示例 (内置 toy.csv, 12 行, 两个类别列分别 3 与 2 个取值):
        → 5 条超边

    Raises:
        ParseError: 数值列含非数值
        EmptyHypergraph: 没有 |e| ≥ 2 的超边
    """
    n = len(frame)
    if n == 0:
        raise EmptyHypergraph("dataset has no rows")
    categorical, numerical = _column_kinds(frame, spec)

    groups: list[tuple[str, np.ndarray]] = []
    for column in categorical:
        values = frame[column].astype(str).to_numpy()
        for value in sorted(set(values)):
            groups.append((f"{column}={value}", np.flatnonzero(values == value)))
    for column in numerical:
        codes = _bin(_numeric(frame, column), spec)
        for code in np.unique(codes):
            groups.append((f"{column}[{int(code)}]", np.flatnonzero(codes == code)))

    edges = []
    skipped = 0
    for label, members in groups:
        if members.size <= 1:
            skipped += 1
            continue
        weight = AlphaCardinalityWeight(int(members.size), spec.alpha)
        edges.append(Hyperedge(tuple(int(v) for v in members), spec.theta, weight, label))
    if skipped:
        logger.debug("dataset: skipped %d singleton hyperedges", skipped)
    if not edges:
        raise EmptyHypergraph("no feature value is shared by two or more rows")

    mu = np.zeros(n)
    for e in edges:
        mu[list(e.members)] += e.theta
    isolated = np.flatnonzero(mu == 0)
    if isolated.size:
        logger.warning("dataset: %d rows share no feature value with any other row; using μ = 1", isolated.size)
        mu[isolated] = 1.0
    labels = tuple(frame[spec.label].astype(str)) if spec.label is not None else None
    return SubmodularHypergraph(n, mu, tuple(edges), labels)


def ingest(spec: DatasetSpec) -> SubmodularHypergraph:
    """CSV → submodular hypergraph (see build_hypergraph)."""
    frame, _ = load_frame(spec)
    G = build_hypergraph(frame, spec)
    logger.info("dataset: %s → |V|=%d, |E|=%d", spec.source, G.n, G.m)
    return G


def summarize(G: SubmodularHypergraph) -> dict[str, Any]:
    """|V|, |E|, Σ|e| and per-hyperedge label/size."""
    return {
        "n": G.n,
        "m": G.m,
        "total_size": int(sum(e.arity for e in G.edges)),
        "edges": [{"label": e.label, "size": e.arity} for e in G.edges],
    }
