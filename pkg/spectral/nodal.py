"""
节点域 - Nodal domains

强节点域: {x_v > 0} 与 {x_v < 0} 在约简超图上的连通分量。
弱节点域: {x_v ≥ 0} 与 {x_v ≤ 0} 的连通分量。
|x_v| ≤ zero_tol·max|x| 视为 0。
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from spectral.hypergraph import SubmodularHypergraph, connected_components, reduce
from spectral.types import NodalDomains

__all__ = ["NODAL_ZERO_TOL", "nodal_domains", "count_nodal_domains"]

NODAL_ZERO_TOL = 1e-9


def nodal_domains(
    G: SubmodularHypergraph,
    x: Sequence[float],
    zero_tol: float = NODAL_ZERO_TOL,
    reduced: bool = False,
) -> NodalDomains:
    """
    节点域 - Strong and weak nodal domains of x

    示例 (P4):
        x = (1, 1, −1, −1)  → 强 {0,1}, {2,3}
        x = (1, −1, 1, −1)  → 4 个强节点域
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise ValueError(f"x must have length {G.n}, got shape {x.shape}")
    H = G if reduced else reduce(G)
    cut = zero_tol * float(np.max(np.abs(x))) if x.size else 0.0
    pos = x > cut
    neg = x < -cut

    def components(active: np.ndarray) -> list[tuple[int, ...]]:
        if not active.any():
            return []
        return connected_components(H, active, reduced=True)

    return NodalDomains(
        strong_pos=components(pos),
        strong_neg=components(neg),
        weak_pos=components(~neg),
        weak_neg=components(~pos),
    )


def count_nodal_domains(G: SubmodularHypergraph, x: Sequence[float], **kwargs) -> tuple[int, int]:
    """(strong count, weak count)"""
    domains = nodal_domains(G, x, **kwargs)
    return domains.strong_count, domains.weak_count
