"""
Submodular Hypergraph Spectral Clustering - 子模超图谱聚类

子模超图上的 p-Laplacian、特征对验证、节点域，以及两种二分聚类算法:
SDP 松弛 + 高斯舍入 (最小化 𝓡₂) 与逆幂法 (最小化 𝓡₁)。

Public API::

    from spectral import SubmodularHypergraph, Hyperedge, load_hypergraph
    from spectral import cluster_ipm, minimize_r2, sweep_cut
    from spectral.submodular import HomogeneousWeight, lovasz

核心概念:
- SubmodularHypergraph: 顶点测度 μ 与带割函数 w_e 的超边
- CutWeightFn: 归一化、对称、子模的超边割函数
- 𝓡_p: Rayleigh 商 Q_p(x) / min_c ‖x − c1‖^p_{ℓp,μ}
- SweepCutResult: 阈值扫描得到的二分
"""

# 超图
from spectral.hypergraph import (
    Hyperedge,
    SubmodularHypergraph,
    boundary_volume,
    conductance,
    load_hypergraph,
    reduce,
    save_hypergraph,
)

# p-Laplacian
from spectral.laplacian import apply_laplacian, q_p, rayleigh

# 算法
from spectral.eigenpair import certify_eigenpair, verify_eigenpair
from spectral.nodal import nodal_domains
from spectral.sweep import sweep_cut
from spectral.ipm import cluster_ipm, ipm
from spectral.sdp import minimize_r2

# 参数化
from spectral.params import RandomInstanceSpec, create_rng
from subhyp_version import __version__

__all__ = [
    # Hypergraph
    "Hyperedge",
    "SubmodularHypergraph",
    "boundary_volume",
    "conductance",
    "load_hypergraph",
    "reduce",
    "save_hypergraph",
    # Laplacian
    "apply_laplacian",
    "q_p",
    "rayleigh",
    # Algorithms
    "certify_eigenpair",
    "verify_eigenpair",
    "nodal_domains",
    "sweep_cut",
    "ipm",
    "cluster_ipm",
    "minimize_r2",
    # Params
    "RandomInstanceSpec",
    "create_rng",
]
