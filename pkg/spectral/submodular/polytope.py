"""
基多面体几何 - Base polytope geometry

B_e = {y: y(S) ≤ w_e(S) ∀S ⊆ e, y(e) = 0}，其极点是所有排列下的贪心向量。
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from spectral.errors import ArityTooLarge
from spectral.submodular.lovasz import greedy_point
from spectral.submodular.weights import CutWeightFn
from spectral.types import BasePoint

__all__ = [
    "EXTREME_POINT_CAP",
    "MEMBERSHIP_CAP",
    "extreme_points",
    "extreme_point_matrix",
    "subset_sums",
    "check_membership",
]

EXTREME_POINT_CAP = 8
MEMBERSHIP_CAP = 20


def extreme_point_matrix(w: CutWeightFn, cap: int = EXTREME_POINT_CAP) -> np.ndarray:
    """
    极点矩阵 - All distinct greedy points as rows

    对 |e|! 个排列各做一次贪心，按 1e-12 网格去重，并按坐标元组排序。

    Raises:
        ArityTooLarge: |e| > cap
    """
    if w.arity > cap:
        raise ArityTooLarge(w.arity, cap, "extreme-point enumeration")
    seen: dict[tuple[float, ...], np.ndarray] = {}
    for perm in itertools.permutations(range(w.arity)):
        y = greedy_point(w, perm)
        key = tuple(np.round(y, 12) + 0.0)
        if key not in seen:
            seen[key] = y
    return np.array([seen[k] for k in sorted(seen)], dtype=float).reshape(-1, w.arity)


def extreme_points(w: CutWeightFn, cap: int = EXTREME_POINT_CAP, edge: int = -1) -> list[BasePoint]:
    """
    极点列表 - Vertices of B_e

    extreme_points(HomogeneousWeight(2))  → [(-1, 1), (1, -1)]
    """
    return [BasePoint(edge=edge, coords=row) for row in extreme_point_matrix(w, cap)]


def subset_sums(y: Sequence[float]) -> np.ndarray:
    """y(S) for every bitmask S, by doubling."""
    y = np.asarray(y, dtype=float)
    sums = np.zeros(1, dtype=float)
    for value in y:
        sums = np.concatenate([sums, sums + value])
    return sums


def check_membership(
    w: CutWeightFn,
    theta: float,
    y: Sequence[float],
    tol: float = 1e-9,
) -> bool:
    """
    成员检查 - Exhaustive test of y ∈ ϑ·B_e

    检查全部 2^|e| 个不等式 y(S) ≤ ϑ w(S) 以及 y(e) = 0。

    Raises:
        ArityTooLarge: |e| > 20
    """
    y = np.asarray(y, dtype=float)
    if y.size != w.arity:
        raise ValueError(f"y has {y.size} entries, weight arity is {w.arity}")
    if w.arity > MEMBERSHIP_CAP:
        raise ArityTooLarge(w.arity, MEMBERSHIP_CAP, "membership check")
    if abs(float(np.sum(y))) > tol:
        return False
    sums = subset_sums(y)
    bounds = theta * w.table(cap=MEMBERSHIP_CAP)
    return bool(np.all(sums <= bounds + tol))
