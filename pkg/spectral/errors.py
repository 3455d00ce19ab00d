"""
错误类型 - Error Types

所有库错误都继承 SubhypError，并携带 CLI 退出码::

    ConfigError    - 配置错误   (exit 1)
    DataError      - 数据错误   (exit 2)
    NumericalError - 数值失败   (exit 3)

输入类错误同时继承 ValueError，方便库调用方按惯例捕获。
"""

from __future__ import annotations

from typing import Any

__all__ = [
    "SubhypError",
    "ConfigError",
    "DataError",
    "NumericalError",
    "InvalidHypergraph",
    "EmptySide",
    "NotSubmodular",
    "ArityTooLarge",
    "NoConvergence",
    "ConstantInput",
    "NotConnected",
    "EigenpairRejection",
    "BoundViolation",
    "DegenerateEmbedding",
    "TooLarge",
    "NotGraph",
    "ParseError",
    "EmptyHypergraph",
    "LabelArityMismatch",
]


class SubhypError(Exception):
    """Base class; `exit_code` is what the CLI exits with."""

    exit_code = 3


class ConfigError(SubhypError):
    exit_code = 1


class DataError(SubhypError):
    exit_code = 2


class NumericalError(SubhypError):
    exit_code = 3


class InvalidHypergraph(DataError, ValueError):
    """Hypergraph or hyperedge violates a structural invariant."""


class EmptySide(NumericalError, ValueError):
    """Conductance asked for S = ∅ or S = V."""


class NotSubmodular(DataError, ValueError):
    """A weight oracle failed symmetry / submodularity / splitting checks."""


class ArityTooLarge(ConfigError, ValueError):
    """Hyperedge too large for an enumeration-based routine."""

    def __init__(self, arity: int, cap: int, what: str = "enumeration"):
        super().__init__(f"hyperedge arity {arity} exceeds cap {cap} for {what}")
        self.arity = arity
        self.cap = cap


class NoConvergence(NumericalError):
    """Iterative solver hit its iteration cap."""


class ConstantInput(NumericalError, ValueError):
    """A routine that needs a nonconstant (or nonzero) vector got a constant one."""


class NotConnected(NumericalError, ValueError):
    """Hypergraph is disconnected where connectivity is required."""


class EigenpairRejection(NumericalError):
    """
    特征对被拒绝 - Eigenpair rejected

    residual 为 Frank-Wolfe 找到的最小残差, certificate 为对应的 (无效) 证书。
    """

    def __init__(self, residual: float, certificate: Any = None):
        super().__init__(f"eigenpair rejected: residual {residual:.3e}")
        self.residual = residual
        self.certificate = certificate


class BoundViolation(NumericalError):
    """
    阈值上界被违反 - Sweep conductance above p·τ^{(p−1)/p}·𝓡_p(x)^{1/p} for a centred x
    """

    def __init__(self, conductance: float, bound: float, p: float):
        super().__init__(f"sweep conductance {conductance:.9g} exceeds thresholding bound {bound:.9g} (p={p:g})")
        self.conductance = conductance
        self.bound = bound
        self.p = p


class DegenerateEmbedding(NumericalError):
    """SDP embedding is numerically zero."""


class TooLarge(ConfigError, ValueError):
    """Brute-force oracle asked to enumerate beyond its budget."""


class NotGraph(DataError, ValueError):
    """Dense spectrum requested for a hypergraph that is not 2-uniform."""


class ParseError(DataError):
    """
    数据解析错误 - Dataset parse error with row/column context
    """

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column '{column}'")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")
        self.row = row
        self.column = column


class EmptyHypergraph(DataError):
    """Ingestion produced no hyperedge with at least two vertices."""


class LabelArityMismatch(DataError, ValueError):
    """Clustering error needs exactly two sides and at most two label values."""
