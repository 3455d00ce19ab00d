"""test lib/suites.py - property suites behind `subhyp verify`"""

import numpy as np
import pytest

from lib.suites import SUITE_REGISTRY, SuiteResult, graph_instances, run_suites, verify_instances
from spectral.hypergraph import Hyperedge, SubmodularHypergraph, is_connected, zeta
from spectral.laplacian import rayleigh
from spectral.oracle import exact_h2
from spectral.params import create_rng, random_cut_table
from spectral.submodular.weights import AlphaCardinalityWeight, HomogeneousWeight, TableWeight


class TestRegistry:
    def test_names(self):
        assert set(SUITE_REGISTRY) == {
            "lovasz", "reduction", "cheeger", "thresholding", "ipm", "duality", "sdp", "rounding", "graph",
        }

    def test_only_graph_suite_is_restricted(self):
        assert [name for name, s in SUITE_REGISTRY.items() if s.graphs_only] == ["graph"]

    def test_descriptions(self):
        assert all(s.description for s in SUITE_REGISTRY.values())


class TestSuiteResult:
    def test_check(self):
        out = SuiteResult()
        out.check(True, "fine")
        out.check(False, "broken")
        assert out.checks == 2
        assert out.failures == ["broken"]


class TestInstances:
    def test_verify_instances(self):
        instances = verify_instances(6, max_n=7, seed=3)
        assert len(instances) == 6
        for G in instances:
            assert 3 <= G.n <= 7
            assert zeta(G) <= 4
            assert is_connected(G)
        kinds = [type(G.edges[0].weight) for G in instances[:3]]
        assert kinds == [HomogeneousWeight, AlphaCardinalityWeight, TableWeight]

    def test_graph_instances(self):
        for G in graph_instances(4, max_n=6, seed=1):
            assert zeta(G) == 2
            assert is_connected(G)

    def test_reproducible(self):
        a = verify_instances(3, seed=5)
        b = verify_instances(3, seed=5)
        assert [[e.members for e in G.edges] for G in a] == [[e.members for e in G.edges] for G in b]


class TestRunSuites:
    @pytest.mark.parametrize("name", ["lovasz", "reduction", "cheeger", "thresholding"])
    def test_set_function_suites_pass(self, name):
        report = run_suites([name], count=3, max_n=6, seed=0)
        assert report["passed"], report["suites"][name]["failures"]
        assert report["suites"][name]["checks"] > 0

    @pytest.mark.parametrize("name", ["ipm", "duality"])
    def test_solver_suites_pass(self, name):
        report = run_suites(name, count=2, max_n=6, seed=1)
        assert report["passed"], report["suites"][name]["failures"]

    def test_sdp_suite(self):
        report = run_suites("sdp", count=1, max_n=5, seed=2)
        assert report["passed"], report["suites"]["sdp"]["failures"]
        assert report["suites"]["sdp"]["instances"] == 1

    def test_rounding_suite(self):
        report = run_suites("rounding", count=2, max_n=5, seed=2)
        assert report["passed"], report["suites"]["rounding"]["failures"]
        assert report["suites"]["rounding"]["instances"] == 2

    def test_graph_suite(self):
        report = run_suites("graph", count=3, max_n=6, seed=0)
        assert report["passed"], report["suites"]["graph"]["failures"]

    def test_given_instances_filter_graphs(self, p4, h1):
        report = run_suites(["graph", "cheeger"], instances=[p4, h1])
        assert report["passed"]
        assert report["suites"]["graph"]["instances"] == 1
        assert report["suites"]["cheeger"]["instances"] == 2

    def test_summary_shape(self, p4):
        report = run_suites("reduction", instances=[p4])
        assert set(report) == {"passed", "suites"}
        assert set(report["suites"]["reduction"]) == {"instances", "checks", "failures"}


@pytest.mark.slow
class TestAcceptanceScale:
    @pytest.mark.parametrize(
        "name, count, max_n",
        [
            ("reduction", 50, 10),
            ("cheeger", 100, 8),
            ("thresholding", 50, 8),
            ("ipm", 50, 8),
            ("duality", 100, 8),
            ("sdp", 30, 8),
            ("rounding", 5, 6),
            ("graph", 50, 10),
        ],
    )
    def test_suite_at_scale(self, name, count, max_n):
        report = run_suites(name, count=count, max_n=max_n, seed=0)
        assert report["passed"], report["suites"][name]["failures"][:5]
        assert report["suites"][name]["instances"] >= (count if name not in ("sdp", "rounding") else 1)

    def test_lovasz_on_200_random_tables(self):
        checks = 0
        for seed in range(1, 201):
            rng = create_rng(seed)
            arity = int(rng.integers(2, 6))
            edge = Hyperedge(tuple(range(arity)), 1.0, TableWeight(arity, random_cut_table(arity, rng)))
            result = SUITE_REGISTRY["lovasz"].run(SubmodularHypergraph(arity, np.ones(arity), (edge,)), rng)
            assert not result.failures, (seed, result.failures)
            checks += result.checks
        assert checks > 200 * 4

    def test_rayleigh_above_h2_on_random_vectors(self):
        for G in verify_instances(100, max_n=8, seed=0):
            h2, _ = exact_h2(G)
            rng = create_rng(G.n)
            for _ in range(1000):
                assert rayleigh(G, rng.standard_normal(G.n), 1.0) >= h2 - 1e-9
