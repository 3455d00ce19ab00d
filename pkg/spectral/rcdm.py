"""
随机坐标下降 - Random coordinate descent on the inner dual

IPM 内层问题 (ℓ2 版本)

    min_{‖z‖₂ ≤ 1} Q₁(z) − λ̂⟨z, g⟩

的对偶为

    min_{y_e ∈ ϑ_e B_e} ‖Σ_e y_e − λ̂g‖₂²

每次随机取一条超边 e，把 y_e 换成在其余块固定时的最优值 (一次最小范数投影)。
原始解 z = (λ̂g − Σ y_e)/‖λ̂g − Σ y_e‖₂，对偶值 −‖Σ y_e − λ̂g‖₂。

并行模式: 超边按贪心着色，同色超边两两不相交，同色块在线程池中同时更新。
"""

from __future__ import annotations

import concurrent.futures as futures
import logging

import numpy as np

from spectral.errors import ConfigError
from spectral.hypergraph import SubmodularHypergraph
from spectral.laplacian import q_p
from spectral.params import create_rng
from spectral.submodular.minnorm import min_norm_shifted
from spectral.types import BasePoint, InnerProblem, InnerResult

logger = logging.getLogger(__name__)

__all__ = [
    "RCDM_EPS",
    "RCDM_GAP_TOL",
    "RCDM_MAX_EPOCHS",
    "DEGENERATE_RTOL",
    "color_edges",
    "inner_rcdm",
]

RCDM_EPS = 1e-12
RCDM_GAP_TOL = 1e-9
RCDM_MAX_EPOCHS = 10000
DEGENERATE_RTOL = float(np.sqrt(np.finfo(float).eps))
"""‖λ̂g − Σ y_e‖ 相对 max(1, ‖λ̂g‖) 低于此值视为退化"""


def color_edges(G: SubmodularHypergraph) -> list[list[int]]:
    """
    超边着色 - Greedy colouring; each class is pairwise vertex-disjoint

    超边按大小降序处理，取与已着色邻边不冲突的最小颜色。
    """
    owner: list[set[int]] = [set() for _ in range(G.n)]
    classes: list[list[int]] = []
    order = sorted(range(G.m), key=lambda i: (-G.edges[i].arity, i))
    for idx in order:
        taken = set().union(*(owner[v] for v in G.edges[idx].members))
        color = 0
        while color in taken:
            color += 1
        if color == len(classes):
            classes.append([])
        classes[color].append(idx)
        for v in G.edges[idx].members:
            owner[v].add(color)
    return [sorted(c) for c in classes]


class _DualState:
    """Blocks y_e, their sum s and the target b = λ̂g."""

    def __init__(self, G: SubmodularHypergraph, target: np.ndarray, method: str):
        self.G = G
        self.target = target
        self.method = method
        self.members = [np.asarray(e.members, dtype=np.int64) for e in G.edges]
        self.blocks = [np.zeros(m.size) for m in self.members]
        self.total = np.zeros(G.n)

    def objective(self) -> float:
        r = self.total - self.target
        return float(r @ r)

    def propose(self, idx: int) -> np.ndarray:
        e = self.G.edges[idx]
        m = self.members[idx]
        shift = self.total[m] - self.blocks[idx] - self.target[m]
        return min_norm_shifted(e.weight, e.theta, shift, method=self.method, edge=idx).coords

    def commit(self, idx: int, y: np.ndarray) -> None:
        m = self.members[idx]
        self.total[m] += y - self.blocks[idx]
        self.blocks[idx] = y

    def update(self, idx: int) -> None:
        self.commit(idx, self.propose(idx))


def _degenerate_floor(state: _DualState) -> float:
    return DEGENERATE_RTOL * max(1.0, float(np.linalg.norm(state.target)))


def _primal(G: SubmodularHypergraph, state: _DualState, prob: InnerProblem) -> tuple[np.ndarray, float, float, bool]:
    """
    原始解 - z from the dual residual, or z = 0 when that cannot beat 0

    残差相对过小，或 z 的原始值 ≥ 0 (z = 0 已达到 0) 时返回 z = 0，退化。
    此时间隙为 ‖λ̂g − Σ y_e‖₂。
    """
    residual = state.target - state.total
    norm = float(np.linalg.norm(residual))
    if norm <= _degenerate_floor(state):
        return np.zeros(G.n), 0.0, -norm, True
    z = residual / norm
    primal = q_p(G, z, 1.0) - prob.lambda_hat * float(z @ prob.g)
    if primal >= 0.0:
        return np.zeros(G.n), 0.0, -norm, True
    return z, primal, -norm, False


def inner_rcdm(
    G: SubmodularHypergraph,
    prob: InnerProblem,
    eps: float = RCDM_EPS,
    max_epochs: int = RCDM_MAX_EPOCHS,
    seed: int = 0,
    gap_tol: float = RCDM_GAP_TOL,
    workers: int = 1,
    method: str = "auto",
) -> InnerResult:
    """
    RCDM 内层求解 - Solve the ℓ2 inner problem through its dual

    参数:
        G: 超图
        prob: 内层问题 (norm 必须为 'l2')
        eps: 相对下降阈值，一轮下降 < eps·当前值 视为停滞
        max_epochs: 轮数上限 (一轮 = |E| 次有放回均匀抽样)
        seed: 随机种子
        gap_tol: 对偶间隙阈值
        workers: > 1 时启用着色并行模式
        method: 投影方法 ('auto' | 'wolfe' | 'isotonic')

    停滞时先做一次按序遍历全部超边的检查轮; 检查轮仍停滞才终止。

    示例:
        单边 {0,1} homogeneous, λ̂g = (2, 0) → y = (1, −1), z = (1, 1)/√2
    """
    if prob.norm != "l2":
        raise ConfigError(f"inner_rcdm solves the l2 inner problem, got norm '{prob.norm}'")
    target = prob.lambda_hat * prob.g
    state = _DualState(G, target, method)
    if G.m == 0:
        z, primal, dual, degenerate = _primal(G, state, prob)
        return InnerResult(z, primal, [], dual, degenerate, 0)

    rng = create_rng(seed)
    classes = color_edges(G) if workers > 1 else []
    pool = futures.ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def epoch() -> None:
        if pool is None:
            for idx in rng.integers(0, G.m, size=G.m):
                state.update(int(idx))
            return
        for color in rng.permutation(len(classes)):
            batch = classes[int(color)]
            proposals = list(pool.map(state.propose, batch))
            for idx, y in zip(batch, proposals):
                state.commit(idx, y)

    def sweep() -> None:
        for idx in range(G.m):
            state.update(idx)

    try:
        current = state.objective()
        epochs = 0
        gap = float("inf")
        while epochs < max_epochs:
            epochs += 1
            epoch()
            previous, current = current, state.objective()
            if current <= _degenerate_floor(state) ** 2:
                break
            if epochs % 10 == 0 or previous - current <= eps * current:
                z, primal, dual, _ = _primal(G, state, prob)
                gap = primal - dual
                if gap <= gap_tol:
                    break
            if previous - current <= eps * current:
                sweep()
                checked, current = current, state.objective()
                if checked - current <= eps * current:
                    break
        else:
            logger.warning("rcdm: epoch cap %d reached with gap %.3e", max_epochs, gap)
    finally:
        if pool is not None:
            pool.shutdown(wait=True)

    z, primal, dual, degenerate = _primal(G, state, prob)
    logger.debug(
        "rcdm: %d epochs, primal %.9g, dual %.9g%s",
        epochs, primal, dual, " (degenerate)" if degenerate else "",
    )
    witnesses = [BasePoint(edge=idx, coords=y.copy()) for idx, y in enumerate(state.blocks)]
    return InnerResult(z, primal, witnesses, dual, degenerate, epochs)
