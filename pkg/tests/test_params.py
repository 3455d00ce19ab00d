"""test spectral/params.py - seeds, random instance specs, weight draws"""

import numpy as np
import pytest

from spectral.errors import ConfigError
from spectral.params import (
    RandomInstanceSpec,
    create_rng,
    draw_rng,
    generate_weight,
    random_cut_table,
)
from spectral.submodular.weights import (
    AlphaCardinalityWeight,
    HomogeneousWeight,
    TableWeight,
    validate_weight,
)


class TestCreateRng:
    def test_same_seed_same_sequence(self):
        assert create_rng(42).random() == create_rng(42).random()

    def test_different_seed(self):
        assert create_rng(1).random() != create_rng(2).random()

    def test_accepts_numpy_int(self):
        create_rng(np.int64(7))

    def test_rejects_bad_seeds(self):
        with pytest.raises(TypeError):
            create_rng(1.5)
        with pytest.raises(TypeError):
            create_rng(True)
        with pytest.raises(ValueError):
            create_rng(-1)


class TestDrawRng:
    def test_independent_of_order(self):
        first = [draw_rng(3, i).random() for i in range(4)]
        second = [draw_rng(3, i).random() for i in reversed(range(4))]
        assert first == list(reversed(second))

    def test_indices_differ(self):
        assert draw_rng(3, 0).random() != draw_rng(3, 1).random()

    def test_validates_seed(self):
        with pytest.raises(ValueError):
            draw_rng(-2, 0)


class TestRandomInstanceSpec:
    def test_defaults(self):
        spec = RandomInstanceSpec(n=5, m=4)
        assert spec.max_arity == 3
        assert spec.weight_kind == "homogeneous"
        assert spec.mu == "degree"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 1, "m": 1, "max_arity": 2},
            {"n": 4, "m": 0},
            {"n": 4, "m": 2, "max_arity": 5},
            {"n": 4, "m": 2, "max_arity": 1},
            {"n": 4, "m": 2, "weight_kind": "random"},
            {"n": 4, "m": 2, "mu": "volume"},
            {"n": 22, "m": 2, "max_arity": 21, "weight_kind": "table"},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ConfigError):
            RandomInstanceSpec(**kwargs)

    def test_bad_seed(self):
        with pytest.raises(ValueError):
            RandomInstanceSpec(n=4, m=2, seed=-1)

    def test_dict(self):
        spec = RandomInstanceSpec.from_dict({"n": 6, "m": 3, "weight_kind": "alpha", "extra": 1})
        assert spec.to_dict() == {
            "n": 6, "m": 3, "max_arity": 3, "weight_kind": "alpha", "seed": 0, "mu": "degree",
        }


class TestGenerateWeight:
    def test_kinds(self, rng):
        assert isinstance(generate_weight("homogeneous", 3, rng), HomogeneousWeight)
        w = generate_weight("alpha", 4, rng)
        assert isinstance(w, AlphaCardinalityWeight)
        assert 0.0 < w.alpha <= 0.5
        assert isinstance(generate_weight("table", 3, rng), TableWeight)

    def test_unknown(self, rng):
        with pytest.raises(ConfigError):
            generate_weight("gaussian", 3, rng)

    @pytest.mark.parametrize("arity", [2, 3, 4, 5])
    def test_random_tables_are_valid(self, arity):
        for seed in range(5):
            values = random_cut_table(arity, create_rng(seed))
            assert values.shape == (1 << arity,)
            assert values.max() == pytest.approx(1.0)
            validate_weight(TableWeight(arity, values))
