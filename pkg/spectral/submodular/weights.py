"""
超边割权重 - Hyperedge Cut Weights

每条超边携带一个归一化、对称、子模的割函数 w_e: 2^e → [0, 1]。
子集以成员的局部位掩码 (bit i ↔ 第 i 个成员) 表示。

权重类型::

    homogeneous  - 任意真子集权重为 1
    alpha        - 仅依赖 |S| 的 α-基数权重
    table        - 显式 2^|e| 取值表 (|e| ≤ 20)
    restricted   - 超边拆分后父权重在子超边上的缩放限制 (仅内部使用)

用法::

    from spectral.submodular.weights import make_weight

    w = make_weight({"kind": "alpha", "params": {"alpha": 0.2}}, arity=10)
    w([0])        # 0.75
    w.evaluate(0b11)  # 1.0
"""

from __future__ import annotations

import math
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from spectral.errors import ArityTooLarge, ConfigError, NotSubmodular

__all__ = [
    "CutWeightFn",
    "CardinalityWeight",
    "HomogeneousWeight",
    "AlphaCardinalityWeight",
    "TableWeight",
    "RestrictedWeight",
    "WEIGHT_REGISTRY",
    "TABLE_ARITY_CAP",
    "alpha_weight",
    "make_weight",
    "popcount",
    "validate_weight",
]

TABLE_ARITY_CAP = 20
"""显式取值表的最大超边大小"""

_TOL = 1e-9


def popcount(masks: np.ndarray) -> np.ndarray:
    """Vectorised bit count of nonnegative integer masks."""
    masks = np.asarray(masks, dtype=np.int64)
    counts = np.zeros(masks.shape, dtype=np.int64)
    work = masks.copy()
    while np.any(work):
        counts += work & 1
        work >>= 1
    return counts


def alpha_weight(size_s: int, size_e: int, alpha: float) -> float:
    """
    α-基数权重 - Alpha-cardinality weight

    w_e(S; α) = 1/2 + 1/2 · min{1, |S|/⌈α|e|⌉, |e\\S|/⌈α|e|⌉}, 端点处为 0。

    alpha_weight(1, 10, 0.2)  → 0.75
    alpha_weight(2, 10, 0.2)  → 1.0
    alpha_weight(0, 10, 0.2)  → 0.0
    """
    if not (0 <= size_s <= size_e):
        raise ValueError(f"size_S must lie in [0, {size_e}], got {size_s}")
    if not (0.0 < alpha <= 0.5):
        raise ValueError(f"alpha must lie in (0, 0.5], got {alpha}")
    if size_s == 0 or size_s == size_e:
        return 0.0
    # guard against alpha*|e| landing a hair above an integer
    ceil_term = max(1, math.ceil(alpha * size_e - 1e-12))
    return 0.5 + 0.5 * min(1.0, size_s / ceil_term, (size_e - size_s) / ceil_term)


class CutWeightFn:
    """
    割权重基类 - Base class for per-hyperedge cut oracles

    子类至少实现 evaluate(mask)。其余方法提供基于 evaluate 的默认实现,
    基数型权重会覆盖它们以支持任意大小的超边。

    属性:
        kind: 权重类型名 (registry key)
        arity: 超边大小 |e|
    """

    kind = "abstract"

    def __init__(self, arity: int):
        if arity < 1:
            raise ValueError(f"arity must be positive, got {arity}")
        self.arity = int(arity)

    # --- oracle ---

    def evaluate(self, mask: int) -> float:
        raise NotImplementedError("Subclass must implement evaluate()")

    def __call__(self, subset: Iterable[int]) -> float:
        mask = 0
        for i in subset:
            mask |= 1 << int(i)
        return self.evaluate(mask)

    @property
    def is_cardinality_based(self) -> bool:
        return False

    @property
    def full_mask(self) -> int:
        return (1 << self.arity) - 1

    def values_at(self, masks: np.ndarray) -> np.ndarray:
        """Evaluate on an array of local masks."""
        masks = np.asarray(masks, dtype=np.int64)
        flat = np.fromiter((self.evaluate(int(m)) for m in masks.ravel()), dtype=float, count=masks.size)
        return flat.reshape(masks.shape)

    def table(self, cap: int = TABLE_ARITY_CAP) -> np.ndarray:
        """All 2^|e| values indexed by bitmask."""
        if self.arity > cap:
            raise ArityTooLarge(self.arity, cap, "tabulation")
        return self.values_at(np.arange(1 << self.arity, dtype=np.int64))

    def at_indicator(self, inside: np.ndarray) -> float:
        """w(S) with S given as a boolean vector over the members."""
        mask = 0
        for i in np.flatnonzero(inside):
            mask |= 1 << int(i)
        return self.evaluate(mask)

    def prefix_values(self, order: Sequence[int]) -> np.ndarray:
        """
        前缀取值 - F(S_0), F(S_1), ..., F(S_k) along an ordering

        S_j 为 order 的前 j 个成员。贪心算法和 Lovász 扩展都只需要这些值。
        """
        values = np.empty(len(order) + 1, dtype=float)
        mask = 0
        values[0] = self.evaluate(0)
        for j, i in enumerate(order, start=1):
            mask |= 1 << int(i)
            values[j] = self.evaluate(mask)
        return values

    def max_value(self) -> float:
        return float(np.max(self.table()))

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "table", "params": {"values": self.table().tolist()}}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(arity={self.arity})"


class CardinalityWeight(CutWeightFn):
    """
    基数型权重 - Weight that depends only on |S|

    profile[j] = w(S) for |S| = j。
    """

    kind = "cardinality"

    def __init__(self, arity: int, profile: Sequence[float]):
        super().__init__(arity)
        profile = np.asarray(profile, dtype=float)
        if profile.shape != (arity + 1,):
            raise ValueError(f"profile must have length {arity + 1}, got {profile.shape}")
        self.profile = profile

    @property
    def is_cardinality_based(self) -> bool:
        return True

    def evaluate(self, mask: int) -> float:
        return float(self.profile[int(mask).bit_count()])

    def values_at(self, masks: np.ndarray) -> np.ndarray:
        return self.profile[popcount(masks)]

    def at_indicator(self, inside: np.ndarray) -> float:
        return float(self.profile[int(np.count_nonzero(inside))])

    def prefix_values(self, order: Sequence[int]) -> np.ndarray:
        return self.profile[: len(order) + 1].copy()

    def max_value(self) -> float:
        return float(np.max(self.profile))


class HomogeneousWeight(CardinalityWeight):
    """Every proper nonempty cut costs 1."""

    kind = "homogeneous"

    def __init__(self, arity: int):
        profile = np.ones(arity + 1)
        profile[0] = 0.0
        profile[-1] = 0.0
        super().__init__(arity, profile)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "homogeneous", "params": {}}


class AlphaCardinalityWeight(CardinalityWeight):
    """
    α-基数权重 - Alpha-cardinality weight

    小切分 (min{|S|, |e\\S|} < ⌈α|e|⌉) 的代价低于 1，用于容忍错误归类与离群点。
    α → 0⁺ 时 ⌈α|e|⌉ = 1，退化为 homogeneous。
    """

    kind = "alpha"

    def __init__(self, arity: int, alpha: float):
        if not (0.0 < alpha <= 0.5):
            raise ConfigError(f"alpha must lie in (0, 0.5], got {alpha}")
        self.alpha = float(alpha)
        profile = [alpha_weight(j, arity, self.alpha) for j in range(arity + 1)]
        super().__init__(arity, profile)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "alpha", "params": {"alpha": self.alpha}}

    def __repr__(self) -> str:
        return f"AlphaCardinalityWeight(arity={self.arity}, alpha={self.alpha})"


class TableWeight(CutWeightFn):
    """Explicit table of 2^|e| values indexed by bitmask."""

    kind = "table"

    def __init__(self, arity: int, values: Sequence[float]):
        super().__init__(arity)
        if arity > TABLE_ARITY_CAP:
            raise ArityTooLarge(arity, TABLE_ARITY_CAP, "table weights")
        values = np.asarray(values, dtype=float)
        if values.shape != (1 << arity,):
            raise ValueError(f"table weight needs {1 << arity} values, got {values.size}")
        self.values = values

    def evaluate(self, mask: int) -> float:
        return float(self.values[mask])

    def values_at(self, masks: np.ndarray) -> np.ndarray:
        return self.values[np.asarray(masks, dtype=np.int64)]

    def table(self, cap: int = TABLE_ARITY_CAP) -> np.ndarray:
        return self.values.copy()

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "table", "params": {"values": self.values.tolist()}}


class RestrictedWeight(CutWeightFn):
    """
    限制权重 - Parent weight restricted to a sub-hyperedge and rescaled

    w_child(S) = scale · w_parent(embed(S))，positions[i] 是子超边第 i 个成员在父超边中的位置。
    """

    kind = "restricted"

    def __init__(self, parent: CutWeightFn, positions: Sequence[int], scale: float):
        super().__init__(len(positions))
        self.parent = parent
        self.positions = tuple(int(p) for p in positions)
        self.scale = float(scale)

    def _embed(self, mask: int) -> int:
        out = 0
        for i, pos in enumerate(self.positions):
            if mask >> i & 1:
                out |= 1 << pos
        return out

    def evaluate(self, mask: int) -> float:
        return self.scale * self.parent.evaluate(self._embed(mask))

    def values_at(self, masks: np.ndarray) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.int64)
        embedded = np.zeros_like(masks)
        for i, pos in enumerate(self.positions):
            embedded |= ((masks >> i) & 1) << pos
        return self.scale * self.parent.values_at(embedded)


# ==================== 权重注册表 ====================


def _build_table(arity: int, params: dict[str, Any]) -> CutWeightFn:
    if "values" not in params:
        raise ConfigError("table weight requires params.values")
    return TableWeight(arity, params["values"])


def _build_alpha(arity: int, params: dict[str, Any]) -> CutWeightFn:
    if "alpha" not in params:
        raise ConfigError("alpha weight requires params.alpha")
    return AlphaCardinalityWeight(arity, float(params["alpha"]))


WEIGHT_REGISTRY: dict[str, Callable[[int, dict[str, Any]], CutWeightFn]] = {
    "homogeneous": lambda arity, params: HomogeneousWeight(arity),
    "alpha": _build_alpha,
    "table": _build_table,
}
"""
权重注册表 - Weight Registry

JSON 描述 {kind, params} → 构造函数 (arity, params) -> CutWeightFn
"""


def make_weight(descriptor: dict[str, Any], arity: int) -> CutWeightFn:
    """
    根据 JSON 描述创建权重 - Build a weight from its JSON descriptor

    Raises:
        ConfigError: 未知 kind 或缺少参数
    """
    kind = descriptor.get("kind")
    if kind not in WEIGHT_REGISTRY:
        raise ConfigError(f"Unknown weight kind '{kind}', valid: {sorted(WEIGHT_REGISTRY)}")
    return WEIGHT_REGISTRY[kind](arity, descriptor.get("params") or {})


# ==================== 校验 ====================


def _check_cardinality(w: CardinalityWeight, tol: float) -> None:
    g = w.profile
    n = w.arity
    if abs(g[0]) > tol or abs(g[n]) > tol:
        raise NotSubmodular(f"{w!r}: w(∅) and w(e) must be 0")
    if np.any(np.abs(g - g[::-1]) > tol):
        raise NotSubmodular(f"{w!r}: cardinality profile is not symmetric")
    if n >= 2 and np.any(np.diff(g, 2) > tol):
        raise NotSubmodular(f"{w!r}: cardinality profile is not concave")
    if n >= 2 and g[1] <= tol:
        raise NotSubmodular(f"{w!r}: singleton cuts must be positive")
    if np.max(g) > 1.0 + tol:
        raise NotSubmodular(f"{w!r}: max weight {np.max(g):.6g} exceeds 1")


def validate_weight(
    w: CutWeightFn,
    tol: float = _TOL,
    exhaustive_cap: int = 12,
    samples: int = 1000,
    seed: int = 0,
    require_unit_max: bool | None = None,
) -> None:
    """
    校验割函数 - Validate normalization, symmetry, submodularity and incidence

    |e| ≤ exhaustive_cap 时穷举 (子模性用等价的局部形式
    F(S+i) + F(S+j) ≥ F(S+i+j) + F(S) 检查)，否则随机抽取 samples 对 (S, T)。

    Raises:
        NotSubmodular: 任一性质不满足
    """
    if isinstance(w, CardinalityWeight):
        _check_cardinality(w, tol)
        return

    n = w.arity
    full = w.full_mask
    if require_unit_max is None:
        require_unit_max = isinstance(w, TableWeight)

    if abs(w.evaluate(0)) > tol or abs(w.evaluate(full)) > tol:
        raise NotSubmodular(f"{w!r}: w(∅) and w(e) must be 0")
    for i in range(n):
        if w.evaluate(1 << i) <= tol:
            raise NotSubmodular(f"{w!r}: singleton cut of member {i} must be positive")

    if n <= exhaustive_cap:
        masks = np.arange(1 << n, dtype=np.int64)
        vals = w.values_at(masks)
        if np.any(np.abs(vals - vals[full ^ masks]) > tol):
            raise NotSubmodular(f"{w!r}: not symmetric")
        for i in range(n):
            for j in range(i + 1, n):
                base = masks[((masks >> i) & 1 == 0) & ((masks >> j) & 1 == 0)]
                lhs = vals[base | (1 << i)] + vals[base | (1 << j)]
                rhs = vals[base | (1 << i) | (1 << j)] + vals[base]
                if np.any(lhs < rhs - tol):
                    raise NotSubmodular(f"{w!r}: submodularity fails for members {i}, {j}")
        peak = float(np.max(vals))
    else:
        rng = np.random.default_rng(seed)
        s_masks = rng.integers(0, 1 << n, size=samples, dtype=np.int64)
        t_masks = rng.integers(0, 1 << n, size=samples, dtype=np.int64)
        vs = w.values_at(s_masks)
        if np.any(np.abs(vs - w.values_at(full ^ s_masks)) > tol):
            raise NotSubmodular(f"{w!r}: not symmetric on sampled sets")
        lhs = vs + w.values_at(t_masks)
        rhs = w.values_at(s_masks | t_masks) + w.values_at(s_masks & t_masks)
        if np.any(lhs < rhs - tol):
            raise NotSubmodular(f"{w!r}: submodularity fails on sampled pairs")
        peak = float(np.max(vs))

    if peak > 1.0 + tol:
        raise NotSubmodular(f"{w!r}: max weight {peak:.6g} exceeds 1")
    if require_unit_max and n <= exhaustive_cap and abs(peak - 1.0) > tol:
        raise NotSubmodular(f"{w!r}: table weights must be normalized to max 1, got {peak:.6g}")
