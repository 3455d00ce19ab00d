"""
类型系统 - Type System

谱聚类各模块之间传递的数据结构。超图本身 (SubmodularHypergraph, Hyperedge)
定义在 spectral.hypergraph。

核心类型::

    BasePoint            - 基多面体 ϑ_e·B_e 中的一点 (每个成员一个坐标)
    EigenpairCertificate - (λ, x) 与每条超边的次梯度见证
    NodalDomains         - 强/弱节点域
    SweepCutResult       - 阈值扫描切分
    InnerProblem         - IPM 内层问题 (λ̂, g, 范数)
    InnerResult          - 内层解 (z, 对偶点, 间隙)
    IpmState             - IPM 单步状态
    IpmResult            - IPM 运行结果 (x, λ̂ 轨迹, 扫描切分)
    SdpProblem           - SDP 松弛的极点约束
    SdpSolution          - SDP 解 (嵌入矩阵 X, 松弛 η)
    SdpRun               - SDP 舍入后的最优向量
    OracleBudget         - 暴力枚举预算

用法示例::

    from spectral.types import BasePoint
    import numpy as np

    y = BasePoint(edge=0, coords=np.array([1.0, 0.0, -1.0]))
    y.to_dict()   # {'edge': 0, 'coords': [1.0, 0.0, -1.0]}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = [
    "BasePoint",
    "EigenpairCertificate",
    "NodalDomains",
    "SweepCutResult",
    "INNER_NORMS",
    "InnerProblem",
    "InnerResult",
    "IpmState",
    "IpmIteration",
    "IpmResult",
    "SdpProblem",
    "SdpSolution",
    "SdpRun",
    "OracleBudget",
]


def _floats(values: Any) -> list[float]:
    return [float(v) for v in np.asarray(values, dtype=float).ravel()]


@dataclass
class BasePoint:
    """
    基多面体点 - Point of ϑ_e·B_e

    属性:
        edge: 超边编号 (-1 表示不属于某个超图)
        coords: 每个成员一个坐标，超边外坐标隐式为 0

    不变量: 坐标和为 0，且 y(S) ≤ ϑ_e w_e(S) 对所有 S ⊆ e 成立。
    """

    edge: int
    coords: np.ndarray

    def to_dict(self) -> dict[str, Any]:
        return {"edge": int(self.edge), "coords": _floats(self.coords)}


@dataclass
class EigenpairCertificate:
    """
    特征对证书 - Eigenpair certificate

    属性:
        lam: 特征值 λ
        x: 在 S_{p,μ} 上归一化的向量
        p: p ≥ 1
        residual: ‖Σ_e ϑ_e f_e(x)^{p-1} y_e − λUφ_p(x)‖₂ (p = 1 时零坐标按区间裁剪)
        witnesses: 每条超边一个次梯度 y_e ∈ ∇f_e(x)
        eps: 判定阈值
        iterations: Frank-Wolfe 迭代次数
    """

    lam: float
    x: np.ndarray
    p: float
    residual: float
    witnesses: list[BasePoint]
    eps: float = 1e-6
    iterations: int = 0

    @property
    def valid(self) -> bool:
        return self.residual <= self.eps

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": float(self.lam),
            "p": float(self.p),
            "residual": float(self.residual),
            "valid": self.valid,
            "x": _floats(self.x),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


@dataclass
class NodalDomains:
    """
    节点域 - Nodal domains of a vector

    强节点域划分 {x_v ≠ 0}，弱节点域覆盖 {x_v ≥ 0} / {x_v ≤ 0}。
    每个域为一个排序后的顶点元组。
    """

    strong_pos: list[tuple[int, ...]] = field(default_factory=list)
    strong_neg: list[tuple[int, ...]] = field(default_factory=list)
    weak_pos: list[tuple[int, ...]] = field(default_factory=list)
    weak_neg: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def strong_count(self) -> int:
        return len(self.strong_pos) + len(self.strong_neg)

    @property
    def weak_count(self) -> int:
        return len(self.weak_pos) + len(self.weak_neg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "strong_pos": [list(d) for d in self.strong_pos],
            "strong_neg": [list(d) for d in self.strong_neg],
            "weak_pos": [list(d) for d in self.weak_pos],
            "weak_neg": [list(d) for d in self.weak_neg],
        }


@dataclass
class SweepCutResult:
    """
    阈值扫描结果 - Sweep cut result

    属性:
        threshold: 最优阈值 θ*
        side: Θ(x, θ*) = {v: x_v > θ*}
        complement: V \\ side
        conductance: c(x)
        bound: p·τ^{(p-1)/p}·𝓡_p(x)^{1/p}
        rayleigh: 𝓡_p(x)
        p: 用于计算上界的 p
        centered: x 是否满足 0 ∈ argmin_c Z_{p,μ}(x, c)
    """

    threshold: float
    side: tuple[int, ...]
    complement: tuple[int, ...]
    conductance: float
    bound: float
    rayleigh: float
    p: float
    centered: bool

    @property
    def bound_holds(self) -> bool:
        return self.conductance <= self.bound + 1e-9

    def to_dict(self) -> dict[str, Any]:
        return {
            "threshold": float(self.threshold),
            "side": list(self.side),
            "complement": list(self.complement),
            "conductance": float(self.conductance),
            "bound": float(self.bound),
            "rayleigh": float(self.rayleigh),
            "p": float(self.p),
            "centered": self.centered,
        }


INNER_NORMS = ("l2", "linf")
"""IPM 内层范数: l2 → RCDM (对偶 ℓ2 投影), linf → 精确 SFM"""


@dataclass
class InnerProblem:
    """
    IPM 内层问题 - argmin_{‖z‖ ≤ 1} Q₁(z) − λ̂⟨z, g⟩
    """

    lambda_hat: float
    g: np.ndarray
    norm: str = "l2"

    def __post_init__(self):
        if self.norm not in INNER_NORMS:
            raise ValueError(f"norm must be one of {INNER_NORMS}, got '{self.norm}'")
        self.g = np.asarray(self.g, dtype=float)


@dataclass
class InnerResult:
    """
    内层解 - Inner solution

    属性:
        z: 原始解 (l2: 单位向量或 0; linf: ±1 向量)
        objective: l2 为 Q₁(z) − λ̂⟨z, g⟩; linf 为集合目标 Σϑ_e w_e(S) − λ̂g(S)
        dual: l2 时每条超边的 y_e ∈ ϑ_e B_e
        dual_objective: −‖Σ y_e − λ̂g‖₂ (l2)
        degenerate: ‖λ̂g − Σ y_e‖ 相对 ≈ 0 或 z 的原始值 ≥ 0，此时 z = 0
        epochs: RCDM 轮数
        side: linf 时最优集合 S
    """

    z: np.ndarray
    objective: float
    dual: list[BasePoint] = field(default_factory=list)
    dual_objective: float = float("nan")
    degenerate: bool = False
    epochs: int = 0
    side: tuple[int, ...] = ()

    @property
    def gap(self) -> float:
        return self.objective - self.dual_objective


@dataclass
class IpmState:
    """
    IPM 状态 - One outer iterate

    不变量: x 的 1-中位数为 0，⟨1, g⟩ = 0，|g_v| ≤ μ_v。
    """

    k: int
    x: np.ndarray
    lambda_hat: float
    g: np.ndarray


@dataclass
class IpmIteration:
    """Trace entry emitted per outer iteration."""

    k: int
    lambda_hat: float
    sweep_conductance: float
    wall_time: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "lambda_hat": float(self.lambda_hat),
            "sweep_conductance": float(self.sweep_conductance),
            "wall_time": float(self.wall_time),
        }


@dataclass
class IpmResult:
    """
    IPM 结果 - Outcome of one inverse-power-method run

    属性:
        x: 最终迭代 (1-中位数为 0)
        lambda_hat: 𝓡₁(x)
        trace: 每次外层迭代一条记录 (k = 0 为初始点)
        sweep: x 的最优阈值切分
        reason: 'converged' | 'max_outer' | 'degenerate' | 'non_descent' | 'constant'
        inner: 内层求解器名
        seed: 本次运行的种子
    """

    x: np.ndarray
    lambda_hat: float
    trace: list[IpmIteration]
    sweep: SweepCutResult
    reason: str
    inner: str = "rcdm"
    seed: int = 0

    @property
    def lambda_trace(self) -> list[float]:
        return [t.lambda_hat for t in self.trace]

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda_hat": float(self.lambda_hat),
            "reason": self.reason,
            "inner": self.inner,
            "seed": self.seed,
            "iterations": len(self.trace) - 1,
            "x": _floats(self.x),
            "sweep": self.sweep.to_dict(),
            "trace": [t.to_dict() for t in self.trace],
        }


@dataclass
class SdpProblem:
    """
    SDP 松弛问题 - Extreme-point constraints of the SDP relaxation

    属性:
        n: 顶点数
        n_embed: 嵌入维度 (≥ ζ(E))
        mu: 顶点测度
        theta: 每条超边的 ϑ_e
        members: 每条超边的成员
        extreme_points: 每条超边一个 (m_e × |e|) 矩阵，行是 B_e 的极点
    """

    n: int
    n_embed: int
    mu: np.ndarray
    theta: np.ndarray
    members: list[tuple[int, ...]]
    extreme_points: list[np.ndarray]

    @property
    def constraint_count(self) -> int:
        return int(sum(len(ep) for ep in self.extreme_points))


@dataclass
class SdpSolution:
    """
    SDP 解 - Solution of the SDP relaxation

    属性:
        X: n_embed × n 嵌入矩阵，第 v 列为 x'_v
        eta: 每条超边 η_e = max_y ‖Xy‖₂
        objective: Σ ϑ_e η_e²
        violation: 约束最大违反量
        outer_iterations: 增广拉格朗日外层迭代次数
        penalty: 最终罚参数 ρ
    """

    X: np.ndarray
    eta: np.ndarray
    objective: float
    violation: float = 0.0
    outer_iterations: int = 0
    penalty: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "objective": float(self.objective),
            "violation": float(self.violation),
            "outer_iterations": self.outer_iterations,
            "penalty": float(self.penalty),
            "eta": _floats(self.eta),
        }


@dataclass
class SdpRun:
    """
    SDP 聚类结果 - Best rounding of an SDP solution

    属性:
        x: 最优舍入向量 (已减去 μ-均值)
        r2: 𝓡₂(x)
        sdp_opt: SDP 目标值 (λ₂^{(2)} 的下界，误差为求解精度)
        solution: SDP 解
        sweep: x 在 p = 2 下的阈值切分
        seed: 种子
        restarts: 舍入次数
    """

    x: np.ndarray
    r2: float
    sdp_opt: float
    solution: SdpSolution
    sweep: SweepCutResult
    seed: int
    restarts: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "sdp_opt": float(self.sdp_opt),
            "r2": float(self.r2),
            "conductance": float(self.sweep.conductance),
            "x": _floats(self.x),
            "seed": self.seed,
            "restarts": self.restarts,
            "solver": self.solution.to_dict(),
            "sweep": self.sweep.to_dict(),
        }


@dataclass
class OracleBudget:
    """
    暴力枚举预算 - Brute-force enumeration budget

    属性:
        max_n_subsets: 子集枚举的最大顶点数 (2^n)
        max_n_partitions: k-元组枚举的最大顶点数
        max_k: 最大 k
    """

    max_n_subsets: int = 20
    max_n_partitions: int = 10
    max_k: int = 3
