"""
SDP 松弛 - SDP relaxation of min 𝓡₂ with Gaussian rounding

每个顶点 v 对应向量 x'_v ∈ R^d (X 的第 v 列)::

    min   Σ_e ϑ_e η_e²
    s.t.  ‖X y‖₂² ≤ η_e²        ∀ y ∈ 𝓔(B_e)
          Σ_v μ_v ‖x'_v‖² = 1
          Σ_v μ_v x'_v = 0

求解: 在因子化变量上做增广拉格朗日，子问题用 L-BFGS-B。两个等式约束由参数化
X = (VP / ‖VP‖_F)·D^{-1/2} 精确满足 (P 为 √μ 的正交补投影)。

舍入: x = Xᵀg, g ~ N(0, I_d)，取多次抽样中 𝓡₂ 最小者。

用法::

    from spectral.sdp import minimize_r2

    run = minimize_r2(G, restarts=32, seed=0)
    run.sdp_opt      # ≈ λ₂^{(2)} 的下界
    run.r2           # 𝓡₂(x*)
"""

from __future__ import annotations

import concurrent.futures as futures
import logging

import numpy as np
from scipy.optimize import minimize

from spectral.errors import ConfigError, ConstantInput, DegenerateEmbedding, NoConvergence
from spectral.hypergraph import SubmodularHypergraph, zeta
from spectral.laplacian import rayleigh, z_p_mu
from spectral.params import create_rng, draw_rng
from spectral.submodular.polytope import EXTREME_POINT_CAP, extreme_point_matrix
from spectral.sweep import sweep_cut
from spectral.types import SdpProblem, SdpRun, SdpSolution

logger = logging.getLogger(__name__)

__all__ = [
    "SDP_TOL",
    "SDP_MAX_OUTER",
    "FEASIBILITY_TOL",
    "build_sdp",
    "solve_sdp",
    "gaussian_round",
    "minimize_r2",
    "rounding_rate",
    "ROUNDING_FACTOR",
    "ROUNDING_RATE_FLOOR",
]

SDP_TOL = 1e-4
SDP_MAX_OUTER = 50
FEASIBILITY_TOL = 1e-8
"""收敛所需的最大约束违反量; 迭代上限处放宽到 1e-6"""

ROUNDING_FACTOR = 26.0
ROUNDING_RATE_FLOOR = 1.0 / 26.0
"""单次舍入满足 𝓡₂ ≤ 26·SDP 目标的概率至少 1/13; 检验时取其一半"""

_LOOSE_FEASIBILITY = 1e-6
_INITIAL_PENALTY = 10.0
_PENALTY_GROWTH = 5.0
_VIOLATION_DECAY = 0.25
_LBFGS_OPTIONS = {"maxiter": 2000, "ftol": 1e-15, "gtol": 1e-10}


def build_sdp(G: SubmodularHypergraph, n_embed: int | None = None) -> SdpProblem:
    """
    构建 SDP - Materialise every extreme point of every B_e

    参数:
        G: 超图 (n ≥ 2, ζ(E) ≤ 8)
        n_embed: 嵌入维度，默认 n，须 ≥ ζ(E)

    Raises:
        ArityTooLarge: 某超边大小超过 8
        ConfigError: n_embed < ζ(E) 或 n < 2
    """
    if G.n < 2:
        raise ConfigError(f"SDP relaxation needs at least 2 vertices, got {G.n}")
    d = G.n if n_embed is None else int(n_embed)
    if d < max(1, zeta(G)):
        raise ConfigError(f"n_embed must be ≥ ζ(E) = {zeta(G)}, got {d}")
    extreme = [extreme_point_matrix(e.weight, EXTREME_POINT_CAP) for e in G.edges]
    prob = SdpProblem(
        n=G.n,
        n_embed=d,
        mu=np.asarray(G.mu, dtype=float).copy(),
        theta=np.array([e.theta for e in G.edges], dtype=float),
        members=[tuple(e.members) for e in G.edges],
        extreme_points=extreme,
    )
    logger.debug("sdp: %d edges, %d extreme-point constraints, n_embed=%d", G.m, prob.constraint_count, d)
    return prob


class _Factorization:
    """X = (VP / ‖VP‖_F)·D^{-1/2} with gradients pulled back to V."""

    def __init__(self, prob: SdpProblem):
        self.d = prob.n_embed
        self.n = prob.n
        root = np.sqrt(prob.mu)
        u = root / np.linalg.norm(root)
        self.P = np.eye(self.n) - np.outer(u, u)
        self.inv_root = 1.0 / root

    def embed(self, V: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        Z = V @ self.P
        scale = max(float(np.linalg.norm(Z)), 1e-300)
        W = Z / scale
        return W * self.inv_root, W, scale

    def pullback(self, grad_X: np.ndarray, W: np.ndarray, scale: float) -> np.ndarray:
        grad_W = grad_X * self.inv_root
        grad_Z = (grad_W - float(np.sum(grad_W * W)) * W) / scale
        return grad_Z @ self.P


def _squared_norms(X: np.ndarray, prob: SdpProblem) -> list[np.ndarray]:
    out = []
    for members, Y in zip(prob.members, prob.extreme_points):
        A = X[:, list(members)] @ Y.T
        out.append(np.einsum("ij,ij->j", A, A))
    return out


def solve_sdp(
    prob: SdpProblem,
    tol: float = SDP_TOL,
    seed: int = 0,
    max_outer: int = SDP_MAX_OUTER,
) -> SdpSolution:
    """
    求解 SDP - Augmented Lagrangian on the factorised variable

    参数:
        prob: build_sdp 的结果
        tol: 外层目标相对变化阈值
        seed: V 的随机初值
        max_outer: 外层迭代上限

    每个极点约束 ‖X_e y‖² − t_e ≤ 0 一个乘子; 违反量下降不足 1/4 时罚参数乘 5。
    返回的 η_e² = max_y ‖X_e y‖²，因此解严格可行，目标为 Σ ϑ_e η_e²。

    示例:
        P2, μ = (1, 1) → objective 2

    Raises:
        NoConvergence: 迭代上限处违反量仍 > 1e-6
    """
    fac = _Factorization(prob)
    d, n, m = fac.d, fac.n, len(prob.members)
    V = create_rng(seed).standard_normal((d, n))
    if m == 0:
        X, _, _ = fac.embed(V)
        return SdpSolution(X=X, eta=np.zeros(0), objective=0.0)

    members = [list(e) for e in prob.members]
    X, _, _ = fac.embed(V)
    t = np.array([float(s.max()) for s in _squared_norms(X, prob)])
    multipliers = [np.zeros(len(Y)) for Y in prob.extreme_points]
    rho = _INITIAL_PENALTY
    bounds = [(None, None)] * (d * n) + [(0.0, None)] * m

    def lagrangian(z: np.ndarray) -> tuple[float, np.ndarray]:
        V = z[: d * n].reshape(d, n)
        t = z[d * n:]
        X, W, scale = fac.embed(V)
        value = float(prob.theta @ t)
        grad_X = np.zeros_like(X)
        grad_t = prob.theta.copy()
        for i, (idx, Y) in enumerate(zip(members, prob.extreme_points)):
            A = X[:, idx] @ Y.T
            g = np.einsum("ij,ij->j", A, A) - t[i]
            lam = multipliers[i]
            active = np.maximum(0.0, lam + rho * g)
            value += float(active @ active - lam @ lam) / (2.0 * rho)
            grad_X[:, idx] += 2.0 * (A * active) @ Y
            grad_t[i] -= active.sum()
        grad_V = fac.pullback(grad_X, W, scale)
        return value, np.concatenate([grad_V.ravel(), grad_t])

    z = np.concatenate([V.ravel(), t])
    previous_objective: float | None = None
    previous_violation = np.inf
    violation = np.inf
    converged = False
    outer = 0
    for outer in range(1, max_outer + 1):
        res = minimize(lagrangian, z, jac=True, method="L-BFGS-B", bounds=bounds, options=_LBFGS_OPTIONS)
        z = res.x
        X, _, _ = fac.embed(z[: d * n].reshape(d, n))
        t = z[d * n:]
        norms = _squared_norms(X, prob)
        gaps = [s - t[i] for i, s in enumerate(norms)]
        violation = max(0.0, max(float(g.max()) for g in gaps))
        objective = float(prob.theta @ t)
        for i, g in enumerate(gaps):
            multipliers[i] = np.maximum(0.0, multipliers[i] + rho * g)
        logger.debug("sdp: outer %d objective %.9g violation %.3e ρ=%g", outer, objective, violation, rho)

        if (
            violation <= FEASIBILITY_TOL
            and previous_objective is not None
            and abs(objective - previous_objective) <= tol * max(1.0, abs(objective))
        ):
            converged = True
            break
        if violation > _VIOLATION_DECAY * previous_violation:
            rho *= _PENALTY_GROWTH
        previous_violation = violation
        previous_objective = objective

    if not converged:
        if violation > _LOOSE_FEASIBILITY:
            raise NoConvergence(
                f"SDP augmented Lagrangian stopped after {outer} outer iterations with violation {violation:.3e}"
            )
        logger.warning("sdp: outer cap %d reached (violation %.3e); returning feasible rescaling", outer, violation)

    eta_sq = np.array([float(s.max()) for s in norms])
    sol = SdpSolution(
        X=X,
        eta=np.sqrt(eta_sq),
        objective=float(prob.theta @ eta_sq),
        violation=violation,
        outer_iterations=outer,
        penalty=rho,
    )
    logger.info("sdp: objective %.9g after %d outer iterations", sol.objective, outer)
    return sol


def gaussian_round(sol: SdpSolution, seed: int = 0, draw: int = 0) -> np.ndarray:
    """
    高斯舍入 - x = Xᵀg for one standard-normal draw

    (seed, draw) 决定 g，同一对参数结果逐位可复现。

    Raises:
        DegenerateEmbedding: X ≈ 0
    """
    X = np.asarray(sol.X, dtype=float)
    if float(np.linalg.norm(X)) < 1e-12:
        raise DegenerateEmbedding("embedding matrix is numerically zero")
    g = draw_rng(seed, draw).standard_normal(X.shape[0])
    return X.T @ g


def _rounded(G: SubmodularHypergraph, sol: SdpSolution, seed: int, draw: int) -> tuple[float, np.ndarray] | None:
    x = gaussian_round(sol, seed, draw)
    c, _ = z_p_mu(x, 2.0, G.mu)
    x = x - c
    if np.ptp(x) <= 1e-12 * max(1.0, float(np.max(np.abs(x)))):
        return None
    try:
        return rayleigh(G, x, 2.0), x
    except ConstantInput:
        return None


def rounding_rate(
    G: SubmodularHypergraph,
    sol: SdpSolution,
    draws: int = 500,
    seed: int = 0,
    factor: float = ROUNDING_FACTOR,
) -> float:
    """
    舍入成功率 - Fraction of draws with 𝓡₂(x) ≤ factor·SDP objective

    常数抽样计为失败。该比例应不低于 ROUNDING_RATE_FLOOR。

    示例:
        P2 → 1.0 (每次非零抽样都给出 ±(1, −1))
    """
    if draws < 1:
        raise ConfigError(f"draws must be ≥ 1, got {draws}")
    limit = factor * sol.objective
    hits = 0
    for draw in range(draws):
        result = _rounded(G, sol, seed, draw)
        if result is not None and result[0] <= limit + 1e-12:
            hits += 1
    rate = hits / draws
    logger.debug("sdp: %d of %d draws within %g·SDP objective", hits, draws, factor)
    return rate


def minimize_r2(
    G: SubmodularHypergraph,
    n_embed: int | None = None,
    restarts: int = 32,
    seed: int = 0,
    tol: float = SDP_TOL,
    workers: int = 1,
) -> SdpRun:
    """
    SDP 聚类 - Solve the relaxation and keep the best of `restarts` roundings

    每次抽样减去 μ-加权均值 (p = 2 的中心化) 后按 𝓡₂ 比较; 常数抽样跳过。

    示例:
        P2 → x* ∝ (1, −1), 𝓡₂ = 2, sdp_opt = 2

    Raises:
        DegenerateEmbedding: 所有抽样都为常数
    """
    if restarts < 1:
        raise ConfigError(f"restarts must be ≥ 1, got {restarts}")
    prob = build_sdp(G, n_embed)
    sol = solve_sdp(prob, tol=tol, seed=seed)

    def candidate(draw: int) -> tuple[float, np.ndarray] | None:
        return _rounded(G, sol, seed, draw)

    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(candidate, range(restarts)))
    else:
        results = [candidate(r) for r in range(restarts)]

    best: tuple[float, np.ndarray] | None = None
    for result in results:
        if result is not None and (best is None or result[0] < best[0]):
            best = result
    if best is None:
        raise DegenerateEmbedding(f"all {restarts} rounding draws were constant")

    r2, x = best
    cut = sweep_cut(G, x, p=2.0)
    logger.info("sdp: best 𝓡₂ %.9g vs SDP objective %.9g, sweep conductance %.9g", r2, sol.objective, cut.conductance)
    return SdpRun(
        x=x,
        r2=float(r2),
        sdp_opt=sol.objective,
        solution=sol,
        sweep=cut,
        seed=seed,
        restarts=restarts,
    )
