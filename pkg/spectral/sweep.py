"""
阈值扫描 - Sweep cuts

对实值嵌入 x，在 x 的每个不同取值 θ (最大值除外) 处评估 Θ(x, θ) = {v: x_v > θ} 的导率，
返回最优者。x 满足 0 ∈ argmin_c Z_{p,μ}(x, c) 时应有

    c(x) ≤ p · τ^{(p−1)/p} · 𝓡_p(x)^{1/p}
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from spectral.errors import BoundViolation, ConstantInput
from spectral.hypergraph import SubmodularHypergraph, tau
from spectral.laplacian import mu_split, rayleigh
from spectral.types import SweepCutResult

__all__ = ["is_centered", "sweep_profile", "sweep_cut"]

_CENTER_TOL = 1e-9


def is_centered(x: Sequence[float], p: float, mu: Sequence[float]) -> bool:
    """0 ∈ argmin_c Z_{p,μ}(x, c), with relative slack 1e-9."""
    plus, zero, minus = mu_split(x, p, mu)
    slack = _CENTER_TOL * max(1.0, plus + minus)
    if float(p) == 1.0:
        return abs(plus - minus) <= zero + slack
    return abs(plus - minus) <= slack


def sweep_profile(G: SubmodularHypergraph, x: Sequence[float]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    扫描剖面 - Sweep order with prefix volumes and boundary volumes

    返回 (order, vol, boundary)，order 为 x 非增序 (并列按编号)，
    vol[k] 与 boundary[k] 对应前 k 个顶点 (k = 0..n)。
    """
    x = np.asarray(x, dtype=float)
    order = np.lexsort((np.arange(x.size), -x))
    rank = np.empty(x.size, dtype=np.int64)
    rank[order] = np.arange(x.size)
    vol = np.concatenate([[0.0], np.cumsum(G.mu[order])])

    ks = np.arange(x.size + 1)
    boundary = np.zeros(x.size + 1)
    for e in G.edges:
        positions = rank[list(e.members)]
        local = np.argsort(positions, kind="stable")
        values = e.weight.prefix_values(local)
        inside = np.searchsorted(positions[local], ks, side="left")
        boundary += e.theta * values[inside]
    return order, vol, boundary


def sweep_cut(G: SubmodularHypergraph, x: Sequence[float], p: float = 1.0) -> SweepCutResult:
    """
    最优阈值切分 - Best-conductance superlevel set of x

    示例 (P4, μ = 度数):
        x = (0.9, 0.8, −0.7, −1.0) → side {0, 1}, c = 1/3

    Raises:
        ConstantInput: x 为常数
        BoundViolation: x 已中心化但 c(x) 超过上界 (容差 1e-9)
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise ValueError(f"x must have length {G.n}, got shape {x.shape}")
    if np.ptp(x) == 0.0:
        raise ConstantInput("sweep cut needs a nonconstant vector")

    order, vol, boundary = sweep_profile(G, x)
    sorted_x = x[order]
    # prefix lengths k where a strict drop separates the k-th and (k+1)-th vertices
    ks = np.flatnonzero(sorted_x[:-1] > sorted_x[1:]) + 1
    total = vol[-1]
    cond = boundary[ks] / np.minimum(vol[ks], total - vol[ks])
    best = int(np.argmin(cond))
    k = int(ks[best])

    r = rayleigh(G, x, p)
    bound = float(p) * tau(G) ** ((float(p) - 1.0) / float(p)) * r ** (1.0 / float(p))
    centered = is_centered(x, p, G.mu)
    result = SweepCutResult(
        threshold=float(sorted_x[k]),
        side=tuple(sorted(int(v) for v in order[:k])),
        complement=tuple(sorted(int(v) for v in order[k:])),
        conductance=float(cond[best]),
        bound=float(bound),
        rayleigh=float(r),
        p=float(p),
        centered=centered,
    )
    if centered and not result.bound_holds:
        raise BoundViolation(result.conductance, result.bound, float(p))
    return result
