"""
p-拉普拉斯泛函 - p-Laplacian functionals

    φ_p(x)_v   = |x_v|^{p−1} sgn(x_v)
    Q_p(x)     = Σ_e ϑ_e f_e(x)^p
    Δ_p(x)     ∋ Σ_e ϑ_e f_e(x)^{p−1} ∇f_e(x)
    Z_{p,μ}(x) = min_c Σ_v μ_v |x_v − c|^p
    𝓡_p(x)     = Q_p(x) / Z_{p,μ}(x)
    R_p(x)     = Q_p(x) / ‖x‖^p_{ℓp,μ}

f_e 为 w_e 的 Lovász 扩展，作用于 x 在 e 上的限制。U = diag(μ)。

用法::

    from spectral.laplacian import q_p, rayleigh, apply_laplacian

    q_p(G, x, p=2)
    rayleigh(G, x, p=1)          # 对指示向量等于导率
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from spectral.errors import ConstantInput
from spectral.hypergraph import SubmodularHypergraph
from spectral.submodular.lovasz import lovasz, subgradient

logger = logging.getLogger(__name__)

__all__ = [
    "phi_p",
    "set_valued_mask",
    "lp_norm",
    "normalize_sphere",
    "edge_values",
    "q_p",
    "apply_laplacian",
    "z_p_mu",
    "rayleigh",
    "rayleigh_sphere",
    "mu_split",
]


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"p must be ≥ 1, got {p}")
    return p


def _vector(x: Sequence[float], n: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a vector, got shape {x.shape}")
    if n is not None and x.size != n:
        raise ValueError(f"vector has {x.size} entries, expected {n}")
    return x


def _weights(mu: Sequence[float] | None, n: int) -> np.ndarray:
    if mu is None:
        return np.ones(n)
    return _vector(mu, n)


def phi_p(x: Sequence[float], p: float) -> np.ndarray:
    """
    φ_p(x) = |x|^{p−1} sgn(x)

    p = 1 时零坐标处的 sgn 为区间 [−1, 1]，这里用 0 表示，见 set_valued_mask。

    phi_p([2, −3, 0], 3)  → [4, −9, 0]
    """
    p = _check_p(p)
    x = _vector(x)
    if p == 1.0:
        return np.sign(x)
    return np.sign(x) * np.abs(x) ** (p - 1.0)


def set_valued_mask(x: Sequence[float], p: float) -> np.ndarray:
    """Coordinates where φ_p is set-valued: x_v = 0 at p = 1."""
    x = _vector(x)
    if float(p) == 1.0:
        return x == 0.0
    return np.zeros(x.size, dtype=bool)


def lp_norm(x: Sequence[float], p: float, mu: Sequence[float] | None = None) -> float:
    """‖x‖_{ℓp,μ} = (Σ μ_v |x_v|^p)^{1/p}"""
    p = _check_p(p)
    x = _vector(x)
    return float(np.sum(_weights(mu, x.size) * np.abs(x) ** p) ** (1.0 / p))


def normalize_sphere(x: Sequence[float], p: float, mu: Sequence[float] | None = None) -> np.ndarray:
    """
    投影到 S_{p,μ} - Scale x onto the unit ℓp,μ sphere

    Raises:
        ConstantInput: x = 0
    """
    x = _vector(x)
    norm = lp_norm(x, p, mu)
    if norm == 0.0:
        raise ConstantInput("cannot normalise the zero vector")
    return x / norm


def edge_values(G: SubmodularHypergraph, x: Sequence[float]) -> np.ndarray:
    """f_e(x|_e) for every hyperedge, in edge order."""
    x = _vector(x, G.n)
    return np.array([lovasz(e.weight, x[list(e.members)]) for e in G.edges], dtype=float)


def q_p(G: SubmodularHypergraph, x: Sequence[float], p: float) -> float:
    """
    Q_p(x) = Σ_e ϑ_e f_e(x)^p

    x 在每个连通分量上为常数时为 0。
    """
    p = _check_p(p)
    f = edge_values(G, x)
    theta = np.array([e.theta for e in G.edges], dtype=float)
    return float(np.sum(theta * f**p))


def apply_laplacian(G: SubmodularHypergraph, x: Sequence[float], p: float) -> np.ndarray:
    """
    拉普拉斯作用 - A deterministic selection from Δ_p(x)

    每条超边取贪心次梯度; f_e(x) = 0 的超边贡献 0 (0 ∈ B_e 且 ⟨0, x⟩ = f_e(x))。
    满足 ⟨x, Δ_p(x)⟩ = Q_p(x) 与 ⟨1, Δ_p(x)⟩ = 0。
    """
    p = _check_p(p)
    x = _vector(x, G.n)
    out = np.zeros(G.n)
    for idx, e in enumerate(G.edges):
        members = list(e.members)
        local = x[members]
        f = lovasz(e.weight, local)
        if f == 0.0:
            continue
        coef = e.theta * f ** (p - 1.0)
        out[members] += coef * subgradient(e.weight, local, edge=idx).coords
    return out


def z_p_mu(x: Sequence[float], p: float, mu: Sequence[float] | None = None) -> tuple[float, float]:
    """
    中心化 - Z_{p,μ}(x) = min_c Σ μ_v |x_v − c|^p

    返回 (c*, 取值)。
        p = 1 → 最小的加权中位数
        p = 2 → 加权均值
        其它 p → 导数 Σ μ_v φ_p(x_v − c) 在 [min x, max x] 上的单调求根

    z_p_mu([3, 1, 0], 1)  → (1.0, 3.0)
    """
    p = _check_p(p)
    x = _vector(x)
    mu = _weights(mu, x.size)
    if x.size == 0:
        raise ValueError("z_p_mu needs a nonempty vector")
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        return lo, 0.0

    if p == 1.0:
        order = np.argsort(x, kind="stable")
        cumulative = np.cumsum(mu[order])
        half = cumulative[-1] / 2.0
        idx = int(np.searchsorted(cumulative, half - 1e-12 * cumulative[-1], side="left"))
        c = float(x[order[idx]])
    elif p == 2.0:
        c = float(np.dot(mu, x) / mu.sum())
    else:
        c = float(brentq(lambda c: float(np.dot(mu, phi_p(x - c, p))), lo, hi, xtol=1e-14))
    return c, float(np.sum(mu * np.abs(x - c) ** p))


def rayleigh(G: SubmodularHypergraph, x: Sequence[float], p: float) -> float:
    """
    𝓡_p(x) = Q_p(x) / Z_{p,μ}(x)

    在 x ↦ t₁x + t₂1 (t₁ ≠ 0) 下不变。

    Raises:
        ConstantInput: x 为常数
    """
    x = _vector(x, G.n)
    if np.ptp(x) == 0.0:
        raise ConstantInput("Rayleigh quotient 𝓡_p is undefined for constant x")
    _, z = z_p_mu(x, p, G.mu)
    if z <= 0.0:
        raise ConstantInput("Z_{p,μ}(x) vanished")
    return q_p(G, x, p) / z


def rayleigh_sphere(G: SubmodularHypergraph, x: Sequence[float], p: float) -> float:
    """
    R_p(x) = Q_p(x) / ‖x‖^p_{ℓp,μ}

    Raises:
        ConstantInput: x = 0
    """
    x = _vector(x, G.n)
    norm = lp_norm(x, p, G.mu)
    if norm == 0.0:
        raise ConstantInput("R_p is undefined at x = 0")
    return q_p(G, x, p) / norm ** float(p)


def mu_split(
    x: Sequence[float],
    p: float,
    mu: Sequence[float] | None = None,
) -> tuple[float, float, float]:
    """
    (μ_p^+, μ⁰, μ_p^−)

    μ_p^± = Σ_{±x_v > 0} μ_v |x_v|^{p−1}，μ⁰ = Σ_{x_v = 0} μ_v。

    mu_split([2, 0, −1], 2, [1, 2, 3])  → (2, 2, 3)
    """
    p = _check_p(p)
    x = _vector(x)
    mu = _weights(mu, x.size)
    mag = np.abs(x) ** (p - 1.0) if p != 1.0 else np.ones(x.size)
    pos = x > 0
    neg = x < 0
    return (
        float(np.sum(mu[pos] * mag[pos])),
        float(np.sum(mu[x == 0])),
        float(np.sum(mu[neg] * mag[neg])),
    )
