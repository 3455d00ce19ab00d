"""
参数化框架 - Parameterization Framework

可复现的随机数管理与随机实例规格。

核心功能::

    create_rng          - 从整数种子创建 numpy Generator
    draw_rng            - 每次抽样独立的 (seed, index) 生成器
    RandomInstanceSpec  - 随机超图实例规格 (n, m, max_arity, weight_kind, seed)
    generate_weight     - 在权重类型的合法参数空间中抽取一个割权重

用法示例::

    from spectral.params import RandomInstanceSpec, create_rng

    spec = RandomInstanceSpec(n=6, m=5, max_arity=4, weight_kind="alpha", seed=1)
    rng = create_rng(spec.seed)
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from spectral.errors import ConfigError
from spectral.submodular.weights import (
    TABLE_ARITY_CAP,
    AlphaCardinalityWeight,
    CutWeightFn,
    HomogeneousWeight,
    TableWeight,
    WEIGHT_REGISTRY,
    popcount,
)

__all__ = [
    "RandomInstanceSpec",
    "create_rng",
    "draw_rng",
    "generate_weight",
    "random_cut_table",
]


def _validate_seed(seed: int) -> None:
    """验证种子值"""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"Seed must be int, got {type(seed).__name__}")
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}")


def create_rng(seed: int) -> np.random.Generator:
    """
    创建可复现的随机数生成器 - Create Reproducible RNG

    返回独立的 numpy Generator，不影响全局随机状态。
    相同种子 → 相同随机序列。
    """
    _validate_seed(seed)
    return np.random.default_rng(int(seed))


def draw_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for draw `index` of a seeded batch; independent of how draws are scheduled."""
    _validate_seed(seed)
    return np.random.default_rng([int(seed), int(index)])


@dataclass
class RandomInstanceSpec:
    """
    随机实例规格 - Random instance specification

    属性:
        n: 顶点数 (≥ 2)
        m: 超边数 (≥ 1)
        max_arity: 最大超边大小 (2 ≤ max_arity ≤ n)
        weight_kind: 'homogeneous' | 'alpha' | 'table'
        seed: 随机种子
        mu: 'degree' (默认) 或 'uniform'
    """

    n: int
    m: int
    max_arity: int = 3
    weight_kind: str = "homogeneous"
    seed: int = 0
    mu: str = "degree"

    def __post_init__(self):
        _validate_seed(self.seed)
        if self.n < 2:
            raise ConfigError(f"RandomInstanceSpec: n must be ≥ 2, got {self.n}")
        if self.m < 1:
            raise ConfigError(f"RandomInstanceSpec: m must be ≥ 1, got {self.m}")
        if not (2 <= self.max_arity <= self.n):
            raise ConfigError(
                f"RandomInstanceSpec: max_arity must lie in [2, {self.n}], got {self.max_arity}"
            )
        if self.weight_kind not in WEIGHT_REGISTRY:
            raise ConfigError(
                f"RandomInstanceSpec: weight_kind must be one of {sorted(WEIGHT_REGISTRY)}, got '{self.weight_kind}'"
            )
        if self.weight_kind == "table" and self.max_arity > TABLE_ARITY_CAP:
            raise ConfigError(f"RandomInstanceSpec: table weights cap arity at {TABLE_ARITY_CAP}")
        if self.mu not in ("degree", "uniform"):
            raise ConfigError(f"RandomInstanceSpec: mu must be 'degree' or 'uniform', got '{self.mu}'")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RandomInstanceSpec":
        known = {k: data[k] for k in ("n", "m", "max_arity", "weight_kind", "seed", "mu") if k in data}
        return cls(**known)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def random_cut_table(arity: int, rng: np.random.Generator) -> np.ndarray:
    """
    随机子模割表 - Random symmetric submodular table normalised to max 1

    若干随机图割函数 (每对成员一个非负系数) 加一个齐次项，保证单点割为正。
    """
    masks = np.arange(1 << arity, dtype=np.int64)
    values = np.zeros(masks.size)
    for i in range(arity):
        for j in range(i + 1, arity):
            if rng.random() < 0.6:
                crossing = ((masks >> i) & 1) != ((masks >> j) & 1)
                values += rng.uniform(0.1, 1.0) * crossing
    proper = (masks != 0) & (masks != (1 << arity) - 1)
    values += rng.uniform(0.1, 1.0) * proper
    # concave profile of |S| keeps the sum submodular
    sizes = popcount(masks)
    values += rng.uniform(0.0, 0.5) * np.minimum(sizes, arity - sizes)
    return values / values.max()


def generate_weight(kind: str, arity: int, rng: np.random.Generator) -> CutWeightFn:
    """
    为指定权重类型生成随机权重 - Draw a weight from the kind's valid parameter space

    homogeneous 没有参数; alpha 在 (0, 0.5] 中均匀抽取; table 见 random_cut_table。
    """
    if kind == "homogeneous":
        return HomogeneousWeight(arity)
    if kind == "alpha":
        return AlphaCardinalityWeight(arity, float(rng.uniform(0.01, 0.5)))
    if kind == "table":
        return TableWeight(arity, random_cut_table(arity, rng))
    raise ConfigError(f"Unknown weight kind '{kind}', valid: {sorted(WEIGHT_REGISTRY)}")
