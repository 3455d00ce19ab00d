"""
特征对验证 - Eigenpair verification

(x, λ) 是特征对当且仅当 Δ_p(x) ∩ λUφ_p(x) ≠ ∅。Δ_p(x) 是集合值的,
因此在各超边的 argmax 面 ∇f_e(x) = argmax_{y∈B_e} ⟨y, x⟩ 的乘积上用 Frank-Wolfe
最小化残差

    ‖Σ_e c_e y_e − λ U φ_p(x)‖₂,   c_e = ϑ_e f_e(x)^{p−1} (p > 1),  c_e = ϑ_e (p = 1)

p = 1 时 x_v = 0 的坐标可以吸收 λμ_v[−1, 1] 中的任意值，残差在裁剪后计算。
面上的线性预言机是贪心算法: 主键 x 非增，x 并列时按 Frank-Wolfe 梯度升序。
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from spectral.errors import ConstantInput, EigenpairRejection, NotConnected
from spectral.hypergraph import SubmodularHypergraph, is_connected
from spectral.laplacian import normalize_sphere, phi_p, set_valued_mask
from spectral.submodular.lovasz import greedy_order, greedy_point, lovasz
from spectral.types import BasePoint, EigenpairCertificate

logger = logging.getLogger(__name__)

__all__ = ["EIGEN_TOL", "certify_eigenpair", "verify_eigenpair"]

EIGEN_TOL = 1e-6


class _FaceProblem:
    """Frank-Wolfe state over the product of argmax faces."""

    def __init__(self, G: SubmodularHypergraph, x: np.ndarray, lam: float, p: float):
        self.G = G
        self.x = x
        self.members = [np.asarray(e.members, dtype=np.int64) for e in G.edges]
        f = np.array([lovasz(e.weight, x[m]) for e, m in zip(G.edges, self.members)])
        theta = np.array([e.theta for e in G.edges])
        self.coef = theta if p == 1.0 else theta * f ** (p - 1.0)
        self.target = lam * G.mu * phi_p(x, p)
        self.free = set_valued_mask(x, p)
        self.slack = abs(lam) * G.mu

    def residual(self, agg: np.ndarray) -> np.ndarray:
        r = agg - self.target
        if self.free.any():
            r[self.free] = agg[self.free] - np.clip(agg[self.free], -self.slack[self.free], self.slack[self.free])
        return r

    def aggregate(self, ys: list[np.ndarray]) -> np.ndarray:
        agg = np.zeros(self.G.n)
        for c, m, y in zip(self.coef, self.members, ys):
            agg[m] += c * y
        return agg

    def vertex(self, idx: int, r: np.ndarray) -> np.ndarray:
        m = self.members[idx]
        order = greedy_order(self.x[m], tiebreak=-r[m])
        return greedy_point(self.G.edges[idx].weight, order)

    def initial(self) -> list[np.ndarray]:
        ys = []
        for idx, m in enumerate(self.members):
            local = self.x[m]
            if np.ptp(local) == 0.0:
                # x constant on e: the face is all of B_e and 0 lies in it
                ys.append(np.zeros(m.size))
            else:
                ys.append(greedy_point(self.G.edges[idx].weight, greedy_order(local)))
        return ys

    def line_search(self, agg: np.ndarray, direction: np.ndarray) -> float:
        dd = float(direction @ direction)
        if dd == 0.0:
            return 0.0
        if not self.free.any():
            r = agg - self.target
            return float(np.clip(-(r @ direction) / dd, 0.0, 1.0))
        res = minimize_scalar(
            lambda s: float(np.sum(self.residual(agg + s * direction) ** 2)),
            bounds=(0.0, 1.0),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return float(res.x)


def certify_eigenpair(
    G: SubmodularHypergraph,
    x: Sequence[float],
    lam: float,
    p: float,
    eps: float = EIGEN_TOL,
    max_iter: int = 2000,
) -> EigenpairCertificate:
    """
    特征对证书 - Best certificate found, valid or not

    x 先归一化到 S_{p,μ}。证书的 valid 属性给出 residual ≤ eps 的判定。

    Raises:
        ConstantInput: x = 0
        NotConnected: G 不连通
    """
    x = normalize_sphere(np.asarray(x, dtype=float), p, G.mu)
    if not is_connected(G):
        raise NotConnected("eigenpair verification needs a connected hypergraph")

    prob = _FaceProblem(G, x, float(lam), float(p))
    ys = prob.initial()
    agg = prob.aggregate(ys)
    r = prob.residual(agg)
    best = float(np.linalg.norm(r))
    it = 0
    for it in range(1, max_iter + 1):
        if best <= eps * 1e-3:
            break
        vertices = [prob.vertex(idx, r) for idx in range(len(ys))]
        direction = prob.aggregate(vertices) - agg
        gap = -float(r @ direction)
        if gap <= 1e-15:
            break
        step = prob.line_search(agg, direction)
        if step == 0.0:
            break
        ys = [y + step * (v - y) for y, v in zip(ys, vertices)]
        agg = prob.aggregate(ys)
        r = prob.residual(agg)
        best = float(np.linalg.norm(r))

    logger.debug("eigenpair: λ=%.6g p=%g residual %.3e after %d iterations", lam, p, best, it)
    witnesses = [BasePoint(edge=idx, coords=y) for idx, y in enumerate(ys)]
    return EigenpairCertificate(float(lam), x, float(p), best, witnesses, eps=eps, iterations=it)


def verify_eigenpair(
    G: SubmodularHypergraph,
    x: Sequence[float],
    lam: float,
    p: float,
    eps: float = EIGEN_TOL,
    max_iter: int = 2000,
) -> EigenpairCertificate:
    """
    验证特征对 - Accept (x, λ) or raise

    示例:
        P2, x = (1, −1)/√2, λ = 2, p = 2 → 有效证书，残差 < 1e-9
        P2, x = (1, −1)/√2, λ = 1, p = 2 → EigenpairRejection (残差 1)

    Raises:
        EigenpairRejection: 残差 > eps，携带残差与证书
        NotConnected: G 不连通
        ConstantInput: x = 0
    """
    if not np.any(np.asarray(x, dtype=float)):
        raise ConstantInput("eigenpair verification needs x ≠ 0")
    cert = certify_eigenpair(G, x, lam, p, eps=eps, max_iter=max_iter)
    if not cert.valid:
        raise EigenpairRejection(cert.residual, cert)
    return cert
