"""
spectral.submodular - 子模原语模块

割权重、Lovász 扩展、贪心次梯度、基多面体几何与最小范数投影。

用法::

    from spectral.submodular import HomogeneousWeight, lovasz, subgradient, min_norm_shifted

    w = HomogeneousWeight(3)
    lovasz(w, [3, 1, 0])                    # 3.0
    subgradient(w, [3, 1, 0]).coords        # [1, 0, -1]
"""

from .weights import (
    CutWeightFn,
    CardinalityWeight,
    HomogeneousWeight,
    AlphaCardinalityWeight,
    TableWeight,
    RestrictedWeight,
    WEIGHT_REGISTRY,
    TABLE_ARITY_CAP,
    alpha_weight,
    make_weight,
    popcount,
    validate_weight,
)

from .lovasz import greedy_order, greedy_point, lovasz, subgradient

from .polytope import (
    EXTREME_POINT_CAP,
    MEMBERSHIP_CAP,
    check_membership,
    extreme_point_matrix,
    extreme_points,
    subset_sums,
)

from .minnorm import PROJECTION_METHODS, min_norm_shifted, wolfe_min_norm

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
    "greedy_order",
    "greedy_point",
    "lovasz",
    "subgradient",
    "EXTREME_POINT_CAP",
    "MEMBERSHIP_CAP",
    "check_membership",
    "extreme_point_matrix",
    "extreme_points",
    "subset_sums",
    "PROJECTION_METHODS",
    "min_norm_shifted",
    "wolfe_min_norm",
]
