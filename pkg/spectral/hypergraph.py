"""
子模超图 - Submodular Hypergraphs

数据模型与集合函数: 体积、边界体积、导率、连通性，以及保持权重的超边约简。

    vol(S)   = Σ_{v∈S} μ_v
    vol(∂S)  = Σ_e ϑ_e w_e(S ∩ e)
    c(S)     = vol(∂S) / min(vol S, vol S̄)

顶点编号从 0 开始。超边成员的顺序决定权重的局部位掩码 (bit i ↔ members[i])。

用法::

    from spectral.hypergraph import SubmodularHypergraph, Hyperedge, conductance
    from spectral.submodular import HomogeneousWeight

    edges = [Hyperedge((i, i + 1), 1.0, HomogeneousWeight(2)) for i in range(3)]
    p4 = SubmodularHypergraph(4, [1, 2, 2, 1], edges)
    conductance(p4, {0, 1})   # 1/3

JSON 格式::

    {"n": 4, "mu": [1, 2, 2, 1] | "degree",
     "edges": [{"members": [0, 1], "theta": 1.0,
                "weight": {"kind": "homogeneous", "params": {}}, "label": "..."}],
     "labels": [0, 0, 1, 1]}
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from spectral.errors import EmptySide, InvalidHypergraph, NotSubmodular, TooLarge
from spectral.submodular.weights import (
    CutWeightFn,
    RestrictedWeight,
    make_weight,
    validate_weight,
)

logger = logging.getLogger(__name__)

__all__ = [
    "Hyperedge",
    "SubmodularHypergraph",
    "ZERO_CUT_TOL",
    "ALL_SUBSETS_CAP",
    "as_indicator",
    "volume",
    "boundary_volume",
    "boundary_volumes_all",
    "conductance",
    "degrees",
    "tau",
    "zeta",
    "is_connected",
    "connected_components",
    "reduce",
    "with_weights",
    "from_dict",
    "to_dict",
    "load_hypergraph",
    "save_hypergraph",
]

ZERO_CUT_TOL = 1e-12
"""约简时视为零割的绝对阈值"""

ALL_SUBSETS_CAP = 24
"""boundary_volumes_all 的最大顶点数"""


@dataclass(frozen=True)
class Hyperedge:
    """
    超边 - Hyperedge

    属性:
        members: 有序的顶点编号
        theta: 正尺度 ϑ_e
        weight: 成员子集上的割函数 w_e
        label: 可选名称 (如 'odor=a', 'age[3]')
    """

    members: tuple[int, ...]
    theta: float
    weight: CutWeightFn
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(v) for v in self.members))
        object.__setattr__(self, "theta", float(self.theta))
        if len(set(self.members)) != len(self.members):
            raise InvalidHypergraph(f"hyperedge members must be distinct, got {self.members}")
        if not self.members:
            raise InvalidHypergraph("hyperedge must have at least one member")
        if not self.theta > 0:
            raise InvalidHypergraph(f"hyperedge theta must be positive, got {self.theta}")
        if self.weight.arity != len(self.members):
            raise InvalidHypergraph(
                f"weight arity {self.weight.arity} does not match {len(self.members)} members"
            )

    @property
    def arity(self) -> int:
        return len(self.members)

    def value(self, inside: np.ndarray) -> float:
        """ϑ_e·w_e(S ∩ e) for a vertex indicator over the whole vertex set."""
        return self.theta * self.weight.at_indicator(inside[list(self.members)])


@dataclass(frozen=True, eq=False)
class SubmodularHypergraph:
    """
    子模超图 - Submodular hypergraph

    属性:
        n: 顶点数
        mu: 顶点测度 μ (长度 n，严格为正)
        edges: 超边列表
        labels: 可选的真实簇标签 (长度 n)

    构造后不可变，可在线程间共享。
    """

    n: int
    mu: np.ndarray
    edges: tuple[Hyperedge, ...] = field(default_factory=tuple)
    labels: tuple[Any, ...] | None = None

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 1:
            raise InvalidHypergraph(f"n must be positive, got {self.n}")
        if mu.shape != (self.n,):
            raise InvalidHypergraph(f"mu must have length {self.n}, got shape {mu.shape}")
        if not np.all(mu > 0):
            raise InvalidHypergraph("mu must be strictly positive")
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        for idx, e in enumerate(self.edges):
            if min(e.members) < 0 or max(e.members) >= self.n:
                raise InvalidHypergraph(f"edge {idx} has members outside [0, {self.n})")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise InvalidHypergraph(f"labels must have length {self.n}, got {len(labels)}")
            object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_volume(self) -> float:
        return float(self.mu.sum())

    def __repr__(self) -> str:
        return f"SubmodularHypergraph(n={self.n}, m={self.m})"


# ==================== 集合函数 ====================


def as_indicator(G: SubmodularHypergraph, S: Iterable[int] | np.ndarray) -> np.ndarray:
    """Boolean indicator of a vertex set; accepts ids or an existing boolean vector."""
    if isinstance(S, np.ndarray) and S.dtype == bool:
        if S.shape != (G.n,):
            raise ValueError(f"indicator must have length {G.n}")
        return S
    inside = np.zeros(G.n, dtype=bool)
    ids = np.fromiter((int(v) for v in S), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= G.n):
        raise ValueError(f"vertex ids must lie in [0, {G.n})")
    inside[ids] = True
    return inside


def volume(G: SubmodularHypergraph, S: Iterable[int] | np.ndarray) -> float:
    """vol(S) = Σ_{v∈S} μ_v"""
    return float(G.mu[as_indicator(G, S)].sum())


def boundary_volume(G: SubmodularHypergraph, S: Iterable[int] | np.ndarray) -> float:
    """vol(∂S) = Σ_e ϑ_e w_e(S ∩ e); 0 for S ∈ {∅, V}."""
    inside = as_indicator(G, S)
    return float(sum(e.value(inside) for e in G.edges))


def boundary_volumes_all(G: SubmodularHypergraph) -> np.ndarray:
    """
    全子集边界体积 - vol(∂S) for every bitmask S of V

    下标为顶点位掩码 (bit v ↔ 顶点 v)。

    Raises:
        TooLarge: n > 24
    """
    if G.n > ALL_SUBSETS_CAP:
        raise TooLarge(f"boundary_volumes_all enumerates 2^n subsets; n={G.n} exceeds {ALL_SUBSETS_CAP}")
    masks = np.arange(1 << G.n, dtype=np.int64)
    total = np.zeros(masks.size)
    for e in G.edges:
        local = np.zeros_like(masks)
        for i, v in enumerate(e.members):
            local |= ((masks >> v) & 1) << i
        total += e.theta * e.weight.values_at(local)
    return total


def conductance(G: SubmodularHypergraph, S: Iterable[int] | np.ndarray) -> float:
    """
    导率 - c(S) = vol(∂S) / min(vol S, vol S̄)

    Raises:
        EmptySide: S 或其补集为空
    """
    inside = as_indicator(G, S)
    if not inside.any() or inside.all():
        raise EmptySide("conductance needs a proper nonempty subset")
    side = float(G.mu[inside].sum())
    other = float(G.mu[~inside].sum())
    return boundary_volume(G, inside) / min(side, other)


def degrees(G: SubmodularHypergraph) -> np.ndarray:
    """d_v = Σ_{e∋v} ϑ_e"""
    d = np.zeros(G.n)
    for e in G.edges:
        d[list(e.members)] += e.theta
    return d


def tau(G: SubmodularHypergraph) -> float:
    """τ = max_v d_v/μ_v"""
    return float(np.max(degrees(G) / G.mu))


def zeta(G: SubmodularHypergraph) -> int:
    """ζ(E) = max |e| (0 without hyperedges)."""
    return max((e.arity for e in G.edges), default=0)


# ==================== 约简 ====================


def _split_positions(mask: int, arity: int) -> tuple[list[int], list[int]]:
    first = [i for i in range(arity) if mask >> i & 1]
    second = [i for i in range(arity) if not mask >> i & 1]
    return first, second


def _check_splitting(e: Hyperedge, values: np.ndarray, cut: int, seed: int = 0) -> None:
    """ϑw(S) = ϑw(S∩S₁) + ϑw(S∖S₁), exhaustively for |e| ≤ 12, sampled above."""
    k = e.arity
    if k <= 12:
        masks = np.arange(1 << k, dtype=np.int64)
    else:
        masks = np.random.default_rng(seed).integers(0, 1 << k, size=1000, dtype=np.int64)
    lhs = values[masks]
    rhs = values[masks & cut] + values[masks & ~cut & ((1 << k) - 1)]
    err = float(np.max(np.abs(lhs - rhs))) * e.theta
    if err > ZERO_CUT_TOL * max(1.0, e.theta):
        raise NotSubmodular(
            f"hyperedge {e.members} has a zero cut but violates the splitting identity (error {err:.3e})"
        )


def _child(e: Hyperedge, values: np.ndarray, positions: list[int]) -> Hyperedge | None:
    if len(positions) < 2:
        return None
    k = len(positions)
    sub = np.arange(1 << k, dtype=np.int64)
    embedded = np.zeros_like(sub)
    for i, pos in enumerate(positions):
        embedded |= ((sub >> i) & 1) << pos
    peak = float(np.max(values[embedded])) * e.theta
    if peak <= ZERO_CUT_TOL:
        return None
    parent, parent_positions, parent_scale = e.weight, positions, 1.0
    if isinstance(parent, RestrictedWeight):
        parent_positions = [parent.positions[p] for p in positions]
        parent_scale = parent.scale
        parent = parent.parent
    weight = RestrictedWeight(parent, parent_positions, parent_scale * e.theta / peak)
    return Hyperedge(tuple(e.members[p] for p in positions), peak, weight, e.label)


def reduce(G: SubmodularHypergraph) -> SubmodularHypergraph:
    """
    超边约简 - Split hyperedges along zero proper cuts

    若 w_e(S₁) = 0 (S₁ 为 e 的非空真子集)，将 e 拆成 S₁ 与 e∖S₁，
    子超边尺度 ϑ_i = max_{S⊆e_i} ϑ_e w_e(S)，权重为缩放后的限制。递归直至无零割;
    大小为 1 或权重恒为 0 的子超边被丢弃。所有子集上的边界体积保持不变。

    Raises:
        NotSubmodular: 存在零割但拆分恒等式不成立
    """
    out: list[Hyperedge] = []
    queue = deque(G.edges)
    splits = dropped = 0
    while queue:
        e = queue.popleft()
        if e.arity < 2:
            dropped += 1
            continue
        if e.weight.is_cardinality_based:
            # a concave profile with zero ends and one interior zero is identically zero
            if np.all(e.weight.profile[1:-1] > ZERO_CUT_TOL):
                out.append(e)
            else:
                dropped += 1
            continue
        values = e.weight.table()
        full = (1 << e.arity) - 1
        proper = values[1:full]
        if np.all(np.abs(proper) <= ZERO_CUT_TOL):
            dropped += 1
            continue
        zeros = np.flatnonzero(np.abs(proper) <= ZERO_CUT_TOL)
        if zeros.size == 0:
            out.append(e)
            continue
        cut = int(zeros[0]) + 1
        _check_splitting(e, values, cut)
        splits += 1
        for positions in _split_positions(cut, e.arity):
            child = _child(e, values, positions)
            if child is None:
                dropped += 1
            else:
                queue.append(child)
    if splits or dropped:
        logger.info("reduce: %d splits, %d hyperedges dropped, %d remain", splits, dropped, len(out))
    return replace(G, edges=tuple(out))


# ==================== 连通性 ====================


def connected_components(
    G: SubmodularHypergraph,
    active: Iterable[int] | np.ndarray | None = None,
    reduced: bool = False,
) -> list[tuple[int, ...]]:
    """
    连通分量 - Components of the hypergraph restricted to `active`

    约简后，连通性 (任何分离 u, v 的 S 都有 vol(∂S) > 0) 等价于
    顶点-超边关联图上的可达性。reduced=True 表示 G 已约简。

    返回按最小顶点排序的分量，每个分量为排序后的顶点元组。
    """
    H = G if reduced else reduce(G)
    inside = np.ones(G.n, dtype=bool) if active is None else as_indicator(G, active)
    rows: list[int] = []
    cols: list[int] = []
    for e in H.edges:
        present = [v for v in e.members if inside[v]]
        # a chain through the present members spans the same component as the clique
        rows.extend(present[:-1])
        cols.extend(present[1:])
    adjacency = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(G.n, G.n))
    _, labels = _cc(adjacency, directed=False)
    groups: dict[int, list[int]] = {}
    for v in np.flatnonzero(inside):
        groups.setdefault(int(labels[v]), []).append(int(v))
    return sorted((tuple(vs) for vs in groups.values()), key=lambda c: c[0])


def is_connected(G: SubmodularHypergraph, reduced: bool = False) -> bool:
    return len(connected_components(G, reduced=reduced)) == 1


# ==================== 变换与序列化 ====================


def with_weights(
    G: SubmodularHypergraph,
    factory: Callable[[int], CutWeightFn] | dict[str, Any],
) -> SubmodularHypergraph:
    """
    替换权重 - Rebuild every hyperedge with another weight kind

    factory 为 arity -> CutWeightFn 的函数，或 JSON 权重描述 {kind, params}。
    with_weights(G, {"kind": "homogeneous"}) 得到齐次基线。
    """
    if isinstance(factory, dict):
        descriptor = factory

        def factory(arity: int) -> CutWeightFn:
            return make_weight(descriptor, arity)

    edges = tuple(replace(e, weight=factory(e.arity)) for e in G.edges)
    return replace(G, edges=edges)


def from_dict(data: dict[str, Any], validate: bool = True) -> SubmodularHypergraph:
    """
    从 JSON 字典构建超图 - Build a hypergraph from its JSON form

    mu 缺省或为 "degree" 时取 μ = d。validate=True 时逐边校验割函数。

    Raises:
        InvalidHypergraph: 结构错误
        NotSubmodular: 割函数校验失败
        ConfigError: 未知权重类型
    """
    if not isinstance(data, dict):
        raise InvalidHypergraph(f"hypergraph JSON must be an object, got {type(data).__name__}")
    try:
        n = int(data["n"])
        raw_edges = data.get("edges", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidHypergraph(f"hypergraph JSON needs an integer 'n': {exc}") from exc

    edges = []
    for idx, raw in enumerate(raw_edges):
        try:
            members = tuple(int(v) for v in raw["members"])
            theta = float(raw.get("theta", 1.0))
            descriptor = raw.get("weight") or {"kind": "homogeneous"}
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidHypergraph(f"edge {idx}: malformed entry ({exc})") from exc
        try:
            weight = make_weight(descriptor, len(members))
        except ValueError as exc:
            raise InvalidHypergraph(f"edge {idx}: {exc}") from exc
        if validate:
            try:
                validate_weight(weight)
            except NotSubmodular as exc:
                raise NotSubmodular(f"edge {idx}: {exc}") from exc
        edges.append(Hyperedge(members, theta, weight, raw.get("label")))

    mu = data.get("mu", "degree")
    if isinstance(mu, str):
        if mu != "degree":
            raise InvalidHypergraph(f"mu must be a list or 'degree', got '{mu}'")
        d = np.zeros(n)
        for e in edges:
            d[list(e.members)] += e.theta
        if np.any(d <= 0):
            raise InvalidHypergraph("mu='degree' needs every vertex in some hyperedge")
        mu = d
    return SubmodularHypergraph(n, mu, tuple(edges), data.get("labels"))


def to_dict(G: SubmodularHypergraph) -> dict[str, Any]:
    """JSON form; split hyperedges serialise their weight as a table."""
    edges = []
    for e in G.edges:
        entry: dict[str, Any] = {
            "members": list(e.members),
            "theta": e.theta,
            "weight": e.weight.to_dict(),
        }
        if e.label is not None:
            entry["label"] = e.label
        edges.append(entry)
    data: dict[str, Any] = {"n": G.n, "mu": [float(v) for v in G.mu], "edges": edges}
    if G.labels is not None:
        data["labels"] = list(G.labels)
    return data


def load_hypergraph(path: str | Path, validate: bool = True) -> SubmodularHypergraph:
    """Read a hypergraph JSON file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidHypergraph(f"hypergraph file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidHypergraph(f"invalid JSON in {path}: {exc}") from exc
    return from_dict(data, validate=validate)


def save_hypergraph(G: SubmodularHypergraph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_dict(G), indent=2), encoding="utf-8")
    return path
