"""
暴力基准 - Brute-force ground truth

小规模实例上的精确值，用于交叉验证各算法::

    exact_h2              - 二分 Cheeger 常数 (穷举 2^n 子集)
    exact_hk              - k 路 Cheeger 常数 (不交非空 k 元组)
    exact_sfm             - 任意集合函数的穷举最小化
    exact_sfm_table       - 预计算位掩码表上的向量化版本
    dense_graph_spectrum  - 2-均匀齐次图的完整广义谱 L x = λ diag(μ) x
    random_instance       - 按 RandomInstanceSpec 生成连通的随机超图

所有枚举在执行前按 OracleBudget 检查规模。
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh

from spectral.errors import ConfigError, NotGraph, TooLarge
from spectral.hypergraph import Hyperedge, SubmodularHypergraph, boundary_volumes_all, degrees
from spectral.params import RandomInstanceSpec, create_rng, generate_weight
from spectral.submodular.polytope import subset_sums
from spectral.types import OracleBudget

__all__ = [
    "DEFAULT_BUDGET",
    "GRAPH_SPECTRUM_CAP",
    "conductance_table",
    "exact_h2",
    "exact_hk",
    "exact_sfm",
    "exact_sfm_table",
    "dense_graph_spectrum",
    "random_instance",
]

DEFAULT_BUDGET = OracleBudget()
GRAPH_SPECTRUM_CAP = 500

_TIE_TOL = 1e-12


def _check_subsets(n: int, budget: OracleBudget) -> None:
    if n > budget.max_n_subsets:
        raise TooLarge(f"subset enumeration over n={n} vertices exceeds budget {budget.max_n_subsets}")


def _argmin_first(values: np.ndarray) -> int:
    """Smallest index whose value lies within 1e-12 of the minimum."""
    lowest = float(np.min(values))
    return int(np.flatnonzero(values <= lowest + _TIE_TOL)[0])


def _members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


def conductance_table(G: SubmodularHypergraph, budget: OracleBudget = DEFAULT_BUDGET) -> np.ndarray:
    """c(S) for every bitmask; ∅ and V map to +inf."""
    _check_subsets(G.n, budget)
    boundary = boundary_volumes_all(G)
    vol = subset_sums(G.mu)
    smaller = np.minimum(vol, G.total_volume - vol)
    table = np.full(boundary.size, np.inf)
    proper = np.arange(1, boundary.size - 1)
    table[proper] = boundary[proper] / smaller[proper]
    return table


def exact_h2(G: SubmodularHypergraph, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[float, tuple[int, ...]]:
    """
    Cheeger 常数 - h₂ = min over proper S of c(S)

    并列取最小位掩码。

    示例:
        P4, μ = 度数 → (1/3, (0, 1))

    Raises:
        TooLarge: n > budget.max_n_subsets
    """
    if G.n < 2:
        raise ConfigError("h₂ needs at least 2 vertices")
    table = conductance_table(G, budget)
    mask = _argmin_first(table)
    return float(table[mask]), _members(mask, G.n)


def exact_hk(G: SubmodularHypergraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> float:
    """
    k 路 Cheeger 常数 - min over disjoint nonempty (S_1..S_k) of max_i c(S_i)

    元组不必覆盖 V。按子掩码动态规划，O(k·3^n)。

    Raises:
        TooLarge: n > budget.max_n_partitions 或 k > budget.max_k
    """
    if k < 1:
        raise ConfigError(f"k must be ≥ 1, got {k}")
    if k > budget.max_k:
        raise TooLarge(f"k={k} exceeds budget {budget.max_k}")
    if G.n > budget.max_n_partitions:
        raise TooLarge(f"k-tuple enumeration over n={G.n} vertices exceeds budget {budget.max_n_partitions}")
    if k > G.n:
        return float("inf")

    cond = conductance_table(G, budget).tolist()
    size = 1 << G.n
    # best[mask]: optimum using j disjoint subsets of mask
    best = [float("inf")] * size
    for mask in range(1, size):
        sub = mask
        value = float("inf")
        while sub:
            value = min(value, cond[sub])
            sub = (sub - 1) & mask
        best[mask] = value
    for _ in range(2, k + 1):
        nxt = [float("inf")] * size
        for mask in range(1, size):
            sub = mask
            value = float("inf")
            while sub:
                rest = mask ^ sub
                if rest:
                    value = min(value, max(cond[sub], best[rest]))
                sub = (sub - 1) & mask
            nxt[mask] = value
        best = nxt
    return float(best[size - 1])


def exact_sfm(
    objective: Callable[[tuple[int, ...]], float],
    n: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> tuple[float, tuple[int, ...]]:
    """
    穷举子模最小化 - Minimum of a set function over all 2^n subsets (∅ included)

    objective 接收排序后的顶点元组。并列取最小位掩码。

    exact_sfm(len, 3)  → (0.0, ())
    """
    _check_subsets(n, budget)
    values = np.array([float(objective(_members(mask, n))) for mask in range(1 << n)])
    return exact_sfm_table(values)


def exact_sfm_table(values: Sequence[float]) -> tuple[float, tuple[int, ...]]:
    """Vectorised exact_sfm over a precomputed table indexed by bitmask."""
    values = np.asarray(values, dtype=float)
    n = int(values.size).bit_length() - 1
    if values.size != 1 << n:
        raise ValueError(f"table length must be a power of two, got {values.size}")
    mask = _argmin_first(values)
    return float(values[mask]), _members(mask, n)


def dense_graph_spectrum(G: SubmodularHypergraph, p: float = 2.0) -> tuple[np.ndarray, np.ndarray]:
    """
    图谱 - Full generalised spectrum of L x = λ diag(μ) x

    返回 (特征值升序, 特征向量按列)。特征向量满足 xᵀ diag(μ) x = 1。

    示例:
        三角形, μ = 度数 → (0, 1.5, 1.5)

    Raises:
        NotGraph: 存在 |e| ≠ 2 的超边
        TooLarge: n > 500
    """
    if float(p) != 2.0:
        raise ConfigError(f"dense spectra exist only for p = 2, got p={p}")
    if G.n > GRAPH_SPECTRUM_CAP:
        raise TooLarge(f"dense spectrum caps n at {GRAPH_SPECTRUM_CAP}, got {G.n}")
    L = np.zeros((G.n, G.n))
    for idx, e in enumerate(G.edges):
        if e.arity != 2:
            raise NotGraph(f"edge {idx} has {e.arity} members; dense spectra need a 2-uniform hypergraph")
        u, v = e.members
        # arity-2 symmetric weights are homogeneous up to the scale w({u})
        a = e.theta * e.weight.evaluate(1) ** 2
        L[u, u] += a
        L[v, v] += a
        L[u, v] -= a
        L[v, u] -= a
    inv_root = 1.0 / np.sqrt(G.mu)
    values, vectors = eigh(L * np.outer(inv_root, inv_root))
    return values, vectors * inv_root[:, None]


def random_instance(spec: RandomInstanceSpec) -> SubmodularHypergraph:
    """
    随机实例 - Connected random hypergraph

    先沿随机排列铺一条相邻窗口重叠一个顶点的超边链 (保证连通)，再补随机超边至 m 条。
    链所需的超边数超过 m 时以链为准。μ 为度数 (或全 1)。

    示例:
        RandomInstanceSpec(n=2, m=1, max_arity=2) → P2
    """
    rng = create_rng(spec.seed)
    order = rng.permutation(spec.n)
    groups: list[np.ndarray] = []
    start = 0
    while start < spec.n - 1:
        stop = min(start + spec.max_arity, spec.n)
        groups.append(order[start:stop])
        start = stop - 1
    while len(groups) < spec.m:
        arity = int(rng.integers(2, spec.max_arity + 1))
        groups.append(rng.choice(spec.n, size=arity, replace=False))

    edges = tuple(
        Hyperedge(tuple(sorted(int(v) for v in members)), 1.0, generate_weight(spec.weight_kind, len(members), rng))
        for members in groups
    )
    G = SubmodularHypergraph(spec.n, np.ones(spec.n), edges)
    if spec.mu == "degree":
        G = SubmodularHypergraph(spec.n, degrees(G), edges)
    return G
