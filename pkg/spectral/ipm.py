"""
逆幂法 - Inverse power method for 𝓡₁

外层迭代::

    g^k      ← sgn(x^k)μ，零坐标处 −((μ₁^+ − μ₁^−)/μ⁰)μ
    z^{k+1}  ← argmin_{‖z‖ ≤ 1} Q₁(z) − λ̂^k⟨z, g^k⟩
    x^{k+1}  ← z^{k+1} − median_μ(z^{k+1})
    λ̂^{k+1}  ← 𝓡₁(x^{k+1})

直到相对变化 < eps_outer。内层求解器:

    rcdm  - ‖z‖₂ ≤ 1，对偶 ℓ2 问题上的随机坐标下降 (默认)
    sfm   - ‖z‖_∞ ≤ 1，等价的子模最小化，穷举求精确解 (n ≤ 24)

用法::

    from spectral.ipm import ipm, cluster_ipm

    result = ipm(G, inner="rcdm", seed=0)
    result.lambda_trace      # 非增
    result.sweep.side        # 最优阈值切分
"""

from __future__ import annotations

import logging
import time
from typing import Callable, Sequence

import numpy as np

from spectral.errors import ConfigError, ConstantInput, TooLarge
from spectral.hypergraph import ALL_SUBSETS_CAP, SubmodularHypergraph, boundary_volumes_all
from spectral.laplacian import mu_split, rayleigh, z_p_mu
from spectral.params import create_rng, draw_rng
from spectral.rcdm import RCDM_EPS, RCDM_MAX_EPOCHS, inner_rcdm
from spectral.submodular.polytope import subset_sums
from spectral.sweep import sweep_cut
from spectral.types import InnerProblem, InnerResult, IpmIteration, IpmResult, IpmState

logger = logging.getLogger(__name__)

__all__ = [
    "INNER_SOLVERS",
    "DESCENT_SLACK",
    "compute_g",
    "inner_sfm",
    "START_DRAWS",
    "DEFAULT_RESTARTS",
    "default_start",
    "ipm",
    "cluster_ipm",
]

DESCENT_SLACK = 1e-10
"""外层一步的 𝓡₁ 允许超出上一步 λ̂ 的量"""

START_DRAWS = 64
"""default_start 抽取的随机向量数"""

DEFAULT_RESTARTS = 3
"""cluster_ipm 的默认重启次数"""

_TIE_TOL = 1e-12


def compute_g(x: Sequence[float], mu: Sequence[float]) -> np.ndarray:
    """
    线性化向量 - g with ⟨1, g⟩ = 0 and ⟨x, g⟩ = ‖x‖_{ℓ1,μ}

    compute_g([2, 0], [1, 3])  → [1, −1]
    """
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    g = np.sign(x) * mu
    zero = x == 0
    if zero.any():
        plus, mass, minus = mu_split(x, 1.0, mu)
        g[zero] = -((plus - minus) / mass) * mu[zero]
    return g


def inner_sfm(G: SubmodularHypergraph, prob: InnerProblem) -> InnerResult:
    """
    精确 SFM 内层 - min_S Σ_e ϑ_e w_e(S) − λ̂ g(S) by enumeration

    z_v = 1 (v ∈ S)，否则 −1。并列时优先非空真子集，再取最小位掩码。

    示例:
        P2, λ̂ = 2, g = (1, −1) → S = {0}, 目标 −1

    Raises:
        TooLarge: n > 24
    """
    if prob.norm != "linf":
        raise ConfigError(f"inner_sfm solves the linf inner problem, got norm '{prob.norm}'")
    if G.n > ALL_SUBSETS_CAP:
        raise TooLarge(f"exhaustive SFM enumerates 2^n subsets; n={G.n} exceeds {ALL_SUBSETS_CAP}")
    values = boundary_volumes_all(G) - prob.lambda_hat * subset_sums(prob.g)
    lowest = float(values.min())
    ties = np.flatnonzero(values <= lowest + _TIE_TOL)
    full = (1 << G.n) - 1
    proper = ties[(ties != 0) & (ties != full)]
    mask = int(proper[0]) if proper.size else int(ties[0])
    side = tuple(v for v in range(G.n) if mask >> v & 1)
    z = -np.ones(G.n)
    z[list(side)] = 1.0
    return InnerResult(z=z, objective=float(values[mask]), side=side)


def _solve_rcdm(G, prob, seed, eps_inner, max_epochs, workers):
    return inner_rcdm(G, prob, eps=eps_inner, max_epochs=max_epochs, seed=seed, workers=workers)


def _solve_sfm(G, prob, seed, eps_inner, max_epochs, workers):
    return inner_sfm(G, prob)


INNER_SOLVERS: dict[str, tuple[str, Callable[..., InnerResult]]] = {
    "rcdm": ("l2", _solve_rcdm),
    "sfm": ("linf", _solve_sfm),
}
"""
内层求解器注册表 - Inner solver registry

名称 → (范数, 求解函数 (G, prob, seed, eps_inner, max_epochs, workers) -> InnerResult)
"""


def _center(x: np.ndarray, mu: np.ndarray) -> np.ndarray:
    c, _ = z_p_mu(x, 1.0, mu)
    return x - c


def default_start(G: SubmodularHypergraph, rng: np.random.Generator, draws: int = START_DRAWS) -> np.ndarray:
    """
    初始点 - Median-centred indicator of the best sweep cut over `draws` Gaussian vectors

    λ̂⁰ 等于该切分的传导率，IPM 的结果不会差于它。
    """
    if draws < 1:
        raise ConfigError(f"start_draws must be ≥ 1, got {draws}")
    best = None
    for _ in range(draws):
        draw = rng.standard_normal(G.n)
        while np.ptp(draw) == 0.0:
            draw = rng.standard_normal(G.n)
        cut = sweep_cut(G, draw, p=1.0)
        if best is None or cut.conductance < best.conductance:
            best = cut
    x = np.zeros(G.n)
    x[list(best.side)] = 1.0
    return _center(x, G.mu)


def ipm(
    G: SubmodularHypergraph,
    x0: Sequence[float] | None = None,
    inner: str = "rcdm",
    eps_outer: float = 1e-6,
    max_outer: int = 100,
    seed: int = 0,
    eps_inner: float = RCDM_EPS,
    max_epochs: int = RCDM_MAX_EPOCHS,
    workers: int = 1,
    start_draws: int = START_DRAWS,
    callback: Callable[[IpmState], None] | None = None,
) -> IpmResult:
    """
    逆幂法 - Minimise 𝓡₁ by the inverse power method

    参数:
        G: 超图
        x0: 非常数初始点 (会被中位数中心化); None 时使用 default_start
        inner: 'rcdm' | 'sfm'
        eps_outer: 相对改进阈值
        max_outer: 外层迭代上限
        seed: 随机种子 (初始点与 RCDM 抽样)
        start_draws: default_start 的随机向量数
        callback: 每个外层状态 (x^k, λ̂^k, g^k) 调用一次

    λ̂ 轨迹非增: 𝓡₁ 超过上一步 λ̂ + 1e-10 的一步被拒绝，运行以上一步结束。

    Raises:
        ConstantInput: x0 为常数
        ConfigError: 未知内层求解器
    """
    if inner not in INNER_SOLVERS:
        raise ConfigError(f"Unknown inner solver '{inner}', valid: {sorted(INNER_SOLVERS)}")
    norm, solve = INNER_SOLVERS[inner]
    rng = create_rng(seed)

    started = time.perf_counter()
    if x0 is None:
        x = default_start(G, rng, start_draws)
    else:
        x0 = np.asarray(x0, dtype=float)
        if x0.shape != (G.n,):
            raise ValueError(f"x0 must have length {G.n}, got shape {x0.shape}")
        if np.ptp(x0) == 0.0:
            raise ConstantInput("IPM needs a nonconstant starting vector")
        x = _center(x0, G.mu)
    lam = rayleigh(G, x, 1.0)
    trace = [IpmIteration(0, lam, sweep_cut(G, x, 1.0).conductance, time.perf_counter() - started)]

    reason = "max_outer"
    for k in range(max_outer):
        g = compute_g(x, G.mu)
        if callback is not None:
            callback(IpmState(k, x.copy(), lam, g.copy()))
        result = solve(G, InnerProblem(lam, g, norm), int(rng.integers(2**31)), eps_inner, max_epochs, workers)
        if result.degenerate:
            reason = "degenerate"
            break
        z = result.z
        if np.ptp(z) == 0.0:
            reason = "constant"
            break
        x_next = _center(z, G.mu)
        lam_next = rayleigh(G, x_next, 1.0)
        if lam_next > lam + DESCENT_SLACK:
            logger.warning("ipm: step %d raised λ̂ from %.9g to %.9g; keeping previous iterate", k + 1, lam, lam_next)
            reason = "non_descent"
            break
        change = abs(lam_next - lam) / lam if lam > 0 else 0.0
        x, lam = x_next, lam_next
        trace.append(IpmIteration(k + 1, lam, sweep_cut(G, x, 1.0).conductance, time.perf_counter() - started))
        logger.debug("ipm: iteration %d λ̂ = %.9g (relative change %.3e)", k + 1, lam, change)
        if change < eps_outer:
            reason = "converged"
            break

    cut = sweep_cut(G, x, 1.0)
    logger.info("ipm[%s]: λ̂ = %.9g, sweep conductance %.9g after %d iterations (%s)",
                inner, lam, cut.conductance, len(trace) - 1, reason)
    return IpmResult(x, lam, trace, cut, reason, inner, seed)


def cluster_ipm(
    G: SubmodularHypergraph,
    inner: str = "rcdm",
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    x0: Sequence[float] | None = None,
    **kwargs,
) -> IpmResult:
    """
    多次重启 - Best of `restarts` IPM runs by sweep conductance (then λ̂)

    第 r 次重启的种子由 (seed, r) 派生; 给定 x0 时第 0 次从 x0 出发。
    """
    if restarts < 1:
        raise ConfigError(f"restarts must be ≥ 1, got {restarts}")
    best: IpmResult | None = None
    for r in range(restarts):
        run_seed = int(draw_rng(seed, r).integers(2**31))
        start = x0 if (x0 is not None and r == 0) else None
        result = ipm(G, x0=start, inner=inner, seed=run_seed, **kwargs)
        key = (result.sweep.conductance, result.lambda_hat)
        if best is None or key < (best.sweep.conductance, best.lambda_hat):
            best = result
    return best
