"""test spectral/oracle.py - brute-force ground truth and random instances"""

import numpy as np
import pytest

from spectral.errors import ConfigError, NotGraph, TooLarge
from spectral.hypergraph import Hyperedge, SubmodularHypergraph, conductance, degrees, is_connected
from spectral.oracle import (
    conductance_table,
    dense_graph_spectrum,
    exact_h2,
    exact_hk,
    exact_sfm,
    exact_sfm_table,
    random_instance,
)
from spectral.params import RandomInstanceSpec
from spectral.submodular.weights import AlphaCardinalityWeight, HomogeneousWeight, TableWeight
from spectral.types import OracleBudget


class TestCheeger:
    def test_p4(self, p4):
        value, side = exact_h2(p4)
        assert value == pytest.approx(1 / 3)
        assert side == (0, 1)

    def test_h1_and_triangle(self, h1, triangle):
        assert exact_h2(h1)[0] == pytest.approx(1.0)
        assert exact_h2(triangle)[0] == pytest.approx(1.0)

    def test_table_matches_conductance(self, p4):
        table = conductance_table(p4)
        assert table[0] == np.inf
        assert table[15] == np.inf
        assert table[0b0101] == pytest.approx(conductance(p4, {0, 2}))

    def test_budget(self, p4):
        with pytest.raises(TooLarge):
            exact_h2(p4, OracleBudget(max_n_subsets=3))


class TestKWay:
    def test_k2_equals_h2(self, p4):
        assert exact_hk(p4, 2) == pytest.approx(exact_h2(p4)[0])

    def test_k1_is_best_single_set(self, p4):
        assert exact_hk(p4, 1) == pytest.approx(1 / 3)

    def test_p4_three_way(self, p4):
        # only {0,1} and {2,3} beat 1, and no third part fits beside them
        assert exact_hk(p4, 3) == pytest.approx(1.0)

    def test_monotone_in_k(self):
        G = random_instance(RandomInstanceSpec(n=6, m=6, max_arity=3, weight_kind="alpha", seed=8))
        values = [exact_hk(G, k) for k in (1, 2, 3)]
        assert values == sorted(values)

    def test_more_parts_than_vertices(self, p2):
        assert exact_hk(p2, 3) == np.inf

    def test_budget(self, p4):
        with pytest.raises(TooLarge):
            exact_hk(p4, 4)
        with pytest.raises(TooLarge):
            exact_hk(p4, 2, OracleBudget(max_n_partitions=3))
        with pytest.raises(ConfigError):
            exact_hk(p4, 0)


class TestSfm:
    def test_cardinality(self):
        assert exact_sfm(len, 3) == (0.0, ())

    def test_modular_function(self):
        weights = [1.0, -2.0, 0.5, -0.5]
        value, side = exact_sfm(lambda S: sum(weights[v] for v in S), 4)
        assert value == pytest.approx(-2.5)
        assert side == (1, 3)

    def test_ties_take_smallest_mask(self):
        assert exact_sfm_table([1.0, 0.0, 0.0, 1.0]) == (0.0, (0,))

    def test_table_length(self):
        with pytest.raises(ValueError):
            exact_sfm_table([0.0, 1.0, 2.0])


class TestDenseSpectrum:
    def test_triangle(self, triangle):
        values, vectors = dense_graph_spectrum(triangle)
        np.testing.assert_allclose(values, [0.0, 1.5, 1.5], atol=1e-12)
        gram = vectors.T @ np.diag(triangle.mu) @ vectors
        np.testing.assert_allclose(gram, np.eye(3), atol=1e-12)

    def test_p4_path(self, p4):
        values, _ = dense_graph_spectrum(p4)
        np.testing.assert_allclose(values, [0.0, 0.5, 1.5, 2.0], atol=1e-12)

    def test_scaled_pair_weight(self):
        w = TableWeight(2, [0.0, 0.5, 0.5, 0.0])
        G = SubmodularHypergraph(2, [1.0, 1.0], (Hyperedge((0, 1), 1.0, w),))
        values, _ = dense_graph_spectrum(G)
        np.testing.assert_allclose(values, [0.0, 0.5], atol=1e-12)

    def test_hyperedge_rejected(self, h1):
        with pytest.raises(NotGraph):
            dense_graph_spectrum(h1)

    def test_p_must_be_two(self, p4):
        with pytest.raises(ConfigError):
            dense_graph_spectrum(p4, p=1.0)


class TestRandomInstance:
    def test_p2(self):
        G = random_instance(RandomInstanceSpec(n=2, m=1, max_arity=2))
        assert G.n == 2
        assert [e.members for e in G.edges] == [(0, 1)]
        np.testing.assert_allclose(G.mu, [1.0, 1.0])

    @pytest.mark.parametrize("kind", ["homogeneous", "alpha", "table"])
    def test_connected_with_degree_measure(self, kind):
        for seed in range(5):
            G = random_instance(RandomInstanceSpec(n=8, m=6, max_arity=4, weight_kind=kind, seed=seed))
            assert is_connected(G)
            assert G.m == 6
            assert all(2 <= e.arity <= 4 for e in G.edges)
            np.testing.assert_allclose(G.mu, degrees(G))

    def test_chain_may_exceed_m(self):
        G = random_instance(RandomInstanceSpec(n=9, m=1, max_arity=3, seed=0))
        assert G.m == 4

    def test_uniform_measure(self):
        G = random_instance(RandomInstanceSpec(n=5, m=3, mu="uniform", seed=1))
        np.testing.assert_allclose(G.mu, 1.0)

    def test_reproducible(self):
        spec = RandomInstanceSpec(n=6, m=5, max_arity=3, weight_kind="alpha", seed=12)
        a, b = random_instance(spec), random_instance(spec)
        assert [e.members for e in a.edges] == [e.members for e in b.edges]
        assert [e.weight.alpha for e in a.edges] == [e.weight.alpha for e in b.edges]

    def test_weight_kinds(self):
        G = random_instance(RandomInstanceSpec(n=5, m=4, weight_kind="alpha", seed=3))
        assert all(isinstance(e.weight, AlphaCardinalityWeight) for e in G.edges)
        G = random_instance(RandomInstanceSpec(n=5, m=4, weight_kind="homogeneous", seed=3))
        assert all(isinstance(e.weight, HomogeneousWeight) for e in G.edges)
