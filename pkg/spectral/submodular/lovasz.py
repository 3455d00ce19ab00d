"""
Lovász 扩展与贪心次梯度 - Lovász extension and greedy subgradients

f(x) = Σ_{j=1}^{|e|-1} F(S_j)(x_{i_j} − x_{i_{j+1}})，S_j 为按 x 非增排序后的前 j 个成员。
并列按成员编号升序打破 (任意打破方式给出相同的 f 值)。

用法::

    from spectral.submodular.lovasz import lovasz, subgradient
    from spectral.submodular.weights import HomogeneousWeight

    w = HomogeneousWeight(3)
    lovasz(w, [3, 1, 0])               # 3.0
    subgradient(w, [3, 1, 0]).coords   # [1, 0, -1]
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from spectral.submodular.weights import CutWeightFn
from spectral.types import BasePoint

__all__ = [
    "greedy_order",
    "greedy_point",
    "lovasz",
    "subgradient",
]


def greedy_order(x: Sequence[float], tiebreak: Sequence[float] | None = None) -> np.ndarray:
    """
    贪心排序 - Nonincreasing order of x

    并列先按 tiebreak 非增排序 (若给定)，再按编号升序。
    """
    x = np.asarray(x, dtype=float)
    ids = np.arange(x.size)
    if tiebreak is None:
        return np.lexsort((ids, -x))
    return np.lexsort((ids, -np.asarray(tiebreak, dtype=float), -x))


def greedy_point(w: CutWeightFn, order: Sequence[int]) -> np.ndarray:
    """y_{i_j} = F(S_j) − F(S_{j−1}) along the given order; a vertex of B_e."""
    increments = np.diff(w.prefix_values(order))
    y = np.empty(len(order), dtype=float)
    y[np.asarray(order, dtype=np.int64)] = increments
    return y


def lovasz(w: CutWeightFn, x: Sequence[float]) -> float:
    """
    Lovász 扩展 - Evaluate f_e(x)

    lovasz(HomogeneousWeight(3), [3, 1, 0])  → 3.0
    lovasz(w, 常数向量)                      → 0.0
    """
    x = np.asarray(x, dtype=float)
    if x.size != w.arity:
        raise ValueError(f"x has {x.size} entries, weight arity is {w.arity}")
    if x.size < 2:
        return 0.0
    order = greedy_order(x)
    prefix = w.prefix_values(order)
    gaps = x[order[:-1]] - x[order[1:]]
    return float(np.dot(prefix[1:-1], gaps))


def subgradient(w: CutWeightFn, x: Sequence[float], edge: int = -1) -> BasePoint:
    """
    贪心次梯度 - Greedy subgradient, an element of ∇f(x) ⊆ B_e

    保证 ⟨y, x⟩ = f(x) 且 y ∈ B_e (未乘 ϑ_e)。
    """
    x = np.asarray(x, dtype=float)
    if x.size != w.arity:
        raise ValueError(f"x has {x.size} entries, weight arity is {w.arity}")
    return BasePoint(edge=edge, coords=greedy_point(w, greedy_order(x)))
