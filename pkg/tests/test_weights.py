"""test spectral/submodular/weights.py - cut weights, registry, validation"""

import numpy as np
import pytest

from spectral.errors import ArityTooLarge, ConfigError, NotSubmodular
from spectral.params import random_cut_table
from spectral.submodular.weights import (
    AlphaCardinalityWeight,
    CardinalityWeight,
    HomogeneousWeight,
    RestrictedWeight,
    TableWeight,
    WEIGHT_REGISTRY,
    alpha_weight,
    make_weight,
    popcount,
    validate_weight,
)


class TestAlphaWeight:
    def test_documented_values(self):
        assert alpha_weight(1, 10, 0.2) == pytest.approx(0.75)
        assert alpha_weight(2, 10, 0.2) == pytest.approx(1.0)
        assert alpha_weight(0, 10, 0.2) == 0.0
        assert alpha_weight(10, 10, 0.2) == 0.0

    def test_symmetric_in_size(self):
        for j in range(11):
            assert alpha_weight(j, 10, 0.3) == pytest.approx(alpha_weight(10 - j, 10, 0.3))

    def test_small_alpha_is_homogeneous(self):
        w = AlphaCardinalityWeight(10, 0.01)
        np.testing.assert_allclose(w.profile, HomogeneousWeight(10).profile)

    def test_alpha_out_of_range(self):
        with pytest.raises(ValueError):
            alpha_weight(1, 10, 0.0)
        with pytest.raises(ConfigError):
            AlphaCardinalityWeight(4, 0.6)

    def test_size_out_of_range(self):
        with pytest.raises(ValueError):
            alpha_weight(11, 10, 0.2)


class TestCardinalityWeights:
    def test_homogeneous_profile(self):
        w = HomogeneousWeight(3)
        assert w.evaluate(0) == 0.0
        assert w.evaluate(0b001) == 1.0
        assert w.evaluate(0b011) == 1.0
        assert w.evaluate(0b111) == 0.0
        assert w([0, 2]) == 1.0

    def test_values_at_uses_popcount(self):
        w = AlphaCardinalityWeight(10, 0.2)
        masks = np.array([0, 1, 3, (1 << 10) - 1])
        np.testing.assert_allclose(w.values_at(masks), [0.0, 0.75, 1.0, 0.0])

    def test_prefix_values(self):
        w = HomogeneousWeight(3)
        np.testing.assert_allclose(w.prefix_values([2, 0, 1]), [0, 1, 1, 0])

    def test_profile_length_checked(self):
        with pytest.raises(ValueError):
            CardinalityWeight(3, [0, 1, 0])

    def test_to_dict(self):
        assert HomogeneousWeight(2).to_dict() == {"kind": "homogeneous", "params": {}}
        assert AlphaCardinalityWeight(4, 0.25).to_dict() == {"kind": "alpha", "params": {"alpha": 0.25}}


class TestTableWeight:
    def test_evaluate(self):
        w = TableWeight(2, [0, 1, 1, 0])
        assert w.evaluate(1) == 1.0
        np.testing.assert_allclose(w.table(), [0, 1, 1, 0])

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            TableWeight(2, [0, 1, 0])

    def test_arity_cap(self):
        with pytest.raises(ArityTooLarge):
            TableWeight(21, [0.0])


class TestRestrictedWeight:
    def test_embeds_positions(self):
        parent = TableWeight(3, random_cut_table(3, np.random.default_rng(0)))
        child = RestrictedWeight(parent, (0, 2), 0.5)
        assert child.arity == 2
        assert child.evaluate(0b01) == pytest.approx(0.5 * parent.evaluate(0b001))
        assert child.evaluate(0b10) == pytest.approx(0.5 * parent.evaluate(0b100))
        assert child.evaluate(0b11) == pytest.approx(0.5 * parent.evaluate(0b101))

    def test_values_at_matches_evaluate(self):
        parent = HomogeneousWeight(4)
        child = RestrictedWeight(parent, (1, 3), 2.0)
        masks = np.arange(4)
        np.testing.assert_allclose(child.values_at(masks), [child.evaluate(int(m)) for m in masks])


class TestRegistry:
    def test_registry_keys(self):
        assert set(WEIGHT_REGISTRY) == {"homogeneous", "alpha", "table"}

    def test_make_weight(self):
        w = make_weight({"kind": "alpha", "params": {"alpha": 0.2}}, arity=10)
        assert w([0]) == pytest.approx(0.75)
        assert w.evaluate(0b11) == pytest.approx(1.0)

    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            make_weight({"kind": "entropy"}, arity=3)

    def test_missing_params(self):
        with pytest.raises(ConfigError):
            make_weight({"kind": "alpha"}, arity=3)
        with pytest.raises(ConfigError):
            make_weight({"kind": "table", "params": {}}, arity=3)


class TestValidateWeight:
    def test_valid_weights_pass(self):
        validate_weight(HomogeneousWeight(5))
        validate_weight(AlphaCardinalityWeight(8, 0.3))
        validate_weight(TableWeight(2, [0, 1, 1, 0]))

    def test_random_tables_pass(self):
        rng = np.random.default_rng(7)
        for arity in (2, 3, 4, 5):
            validate_weight(TableWeight(arity, random_cut_table(arity, rng)))

    def test_nonconcave_profile(self):
        with pytest.raises(NotSubmodular):
            validate_weight(CardinalityWeight(4, [0, 1, 0.5, 1, 0]))

    def test_asymmetric_table(self):
        with pytest.raises(NotSubmodular):
            validate_weight(TableWeight(2, [0, 1, 0.5, 0]))

    def test_nonzero_endpoints(self):
        with pytest.raises(NotSubmodular):
            validate_weight(TableWeight(2, [0.1, 1, 1, 0.1]))

    def test_unnormalised_table(self):
        with pytest.raises(NotSubmodular):
            validate_weight(TableWeight(2, [0, 0.5, 0.5, 0]))

    def test_supermodular_table(self):
        # w({0}) + w({1}) < w({0,1})
        values = [0.0, 0.2, 0.2, 1.0, 1.0, 0.2, 0.2, 0.0]
        with pytest.raises(NotSubmodular):
            validate_weight(TableWeight(3, values))


class TestPopcount:
    def test_counts(self):
        np.testing.assert_array_equal(popcount(np.array([0, 1, 3, 7, 8])), [0, 1, 2, 3, 1])
