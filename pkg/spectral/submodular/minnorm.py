"""
最小范数投影 - Minimum-norm projection onto a scaled base polytope

    min_norm_shifted(w, ϑ, a) = argmin_{y ∈ ϑ·B_e} ‖y + a‖₂²

即 −a 在 ϑ·B_e 上的欧氏投影。RCDM 每次单边更新都调用它。

三条路径::

    |e| ≤ 2      - 线段上的闭式裁剪
    isotonic     - 基数型权重: B_e 是凹剖面增量的置换多面体，投影化为保序回归
    wolfe        - 一般权重: Fujishige-Wolfe 最小范数点，线性预言机为贪心算法

用法::

    from spectral.submodular.minnorm import min_norm_shifted
    from spectral.submodular.weights import HomogeneousWeight

    min_norm_shifted(HomogeneousWeight(2), 1.0, [-2.0, 0.0]).coords   # [1, -1]
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import isotonic_regression

from spectral.errors import ConfigError, NoConvergence
from spectral.submodular.lovasz import greedy_order, greedy_point
from spectral.submodular.weights import CutWeightFn
from spectral.types import BasePoint

logger = logging.getLogger(__name__)

__all__ = [
    "PROJECTION_METHODS",
    "default_max_iter",
    "min_norm_shifted",
    "wolfe_min_norm",
]

PROJECTION_METHODS = ("auto", "wolfe", "isotonic")

# barycentric coefficients below this are treated as zero
_Z_COEF = 1e-10
_NORM_DECREASE = 1e-12


def default_max_iter(arity: int, eps: float) -> int:
    """10·|e|²·log(1/ε), at least 10."""
    return max(10, math.ceil(10 * arity * arity * math.log(1.0 / eps)))


def _affine_minimizer(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Min-norm point of the affine hull of the rows, with its barycentric coefficients."""
    m = points.shape[0]
    system = np.zeros((m + 1, m + 1))
    system[0, 1:] = 1.0
    system[1:, 0] = 1.0
    system[1:, 1:] = points @ points.T
    rhs = np.zeros(m + 1)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(system, rhs, rcond=None)[0]
    coef = sol[1:]
    return coef, coef @ points


def wolfe_min_norm(
    oracle: Callable[[np.ndarray], np.ndarray],
    dim: int,
    eps: float = 1e-10,
    max_iter: int | None = None,
) -> np.ndarray:
    """
    Wolfe 最小范数点 - Minimum-norm point of a polytope given by a linear oracle

    oracle(x) 返回多面体上使 ⟨x, q⟩ 最小的顶点。

    终止条件 (任一):
        对偶间隙 ⟨x, x⟩ − ⟨x, q⟩ ≤ eps
        平方范数下降 < 1e-12
        q 已在当前活动集中

    Raises:
        NoConvergence: 达到 max_iter
    """
    if max_iter is None:
        max_iter = default_max_iter(dim, eps)

    x = oracle(np.zeros(dim))
    active = x.reshape(1, dim)
    coef = np.ones(1)
    norm_sq = float(x @ x)

    for it in range(max_iter):
        q = oracle(x)
        gap = norm_sq - float(x @ q)
        if gap <= eps:
            logger.debug("wolfe: gap %.3e after %d iterations", gap, it)
            return x
        if np.any(np.all(np.abs(active - q) < _Z_COEF, axis=1)):
            return x
        active = np.vstack([active, q])
        coef = np.append(coef, 0.0)

        # minor cycle
        while True:
            b, y = _affine_minimizer(active)
            if np.all(b >= -_Z_COEF):
                coef = np.clip(b, 0.0, None)
                coef /= coef.sum()
                x = coef @ active
                break
            neg = b < -_Z_COEF
            step = float(np.min(coef[neg] / (coef[neg] - b[neg])))
            coef = step * b + (1.0 - step) * coef
            keep = coef > _Z_COEF
            active = active[keep]
            coef = coef[keep] / coef[keep].sum()
            x = coef @ active

        new_norm_sq = float(x @ x)
        if norm_sq - new_norm_sq < _NORM_DECREASE:
            logger.debug("wolfe: norm stalled at %.6g after %d iterations", new_norm_sq, it + 1)
            return x
        norm_sq = new_norm_sq

    raise NoConvergence(f"Fujishige-Wolfe did not converge in {max_iter} iterations (dim {dim})")


def _project_pair(w: CutWeightFn, theta: float, a: np.ndarray) -> np.ndarray:
    # ϑ·B_e = {(t, −t): |t| ≤ ϑ·w({0})}
    bound = theta * w.evaluate(1)
    t = float(np.clip((a[1] - a[0]) / 2.0, -bound, bound))
    return np.array([t, -t])


def _project_isotonic(w: CutWeightFn, theta: float, a: np.ndarray) -> np.ndarray:
    u = -a
    order = np.argsort(-u, kind="stable")
    s = u[order]
    increments = theta * np.diff(w.profile)
    v = isotonic_regression(s - increments, increasing=False).x
    y = np.empty_like(u)
    y[order] = s - v
    return y


def min_norm_shifted(
    w: CutWeightFn,
    theta: float,
    a: Sequence[float],
    eps: float = 1e-10,
    max_iter: int | None = None,
    method: str = "auto",
    edge: int = -1,
) -> BasePoint:
    """
    平移最小范数点 - argmin_{y ∈ ϑ·B_e} ‖y + a‖₂²

    参数:
        w: 割权重
        theta: ϑ_e ≥ 0
        a: 每个成员一个实数
        eps: 投影精度 (平方距离)
        max_iter: Wolfe 迭代上限，默认 10·|e|²·log(1/ε)
        method: "auto" | "wolfe" | "isotonic"

    示例:
        homogeneous |e|=2, ϑ=1, a=(−2, 0)     → (1, −1)
        homogeneous |e|=2, ϑ=1, a=(−0.5, 0.5) → (0.5, −0.5)

    Raises:
        NoConvergence: Wolfe 达到迭代上限
        ConfigError: 未知 method，或对非基数型权重要求 isotonic
    """
    if method not in PROJECTION_METHODS:
        raise ConfigError(f"Unknown projection method '{method}', valid: {list(PROJECTION_METHODS)}")
    a = np.asarray(a, dtype=float)
    if a.size != w.arity:
        raise ValueError(f"a has {a.size} entries, weight arity is {w.arity}")

    k = w.arity
    if k == 1 or theta == 0.0:
        return BasePoint(edge=edge, coords=np.zeros(k))

    if method == "isotonic" and not w.is_cardinality_based:
        raise ConfigError(f"isotonic projection needs a cardinality-based weight, got {w!r}")

    if method == "auto" and k == 2:
        return BasePoint(edge=edge, coords=_project_pair(w, theta, a))
    if method == "isotonic" or (method == "auto" and w.is_cardinality_based):
        return BasePoint(edge=edge, coords=_project_isotonic(w, theta, a))

    # linear oracle over ϑ·B_e + a: minimise ⟨x, ·⟩ by greedy on ascending x
    def oracle(x: np.ndarray) -> np.ndarray:
        return theta * greedy_point(w, greedy_order(-x)) + a

    z = wolfe_min_norm(oracle, k, eps=eps, max_iter=max_iter)
    return BasePoint(edge=edge, coords=z - a)
