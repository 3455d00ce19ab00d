"""test spectral/sdp.py - SDP relaxation, Gaussian rounding, minimize_r2"""

import numpy as np
import pytest

from spectral.errors import ArityTooLarge, ConfigError, DegenerateEmbedding
from spectral.hypergraph import Hyperedge, SubmodularHypergraph
from spectral.oracle import random_instance
from spectral.params import RandomInstanceSpec
from spectral.sdp import ROUNDING_RATE_FLOOR, build_sdp, gaussian_round, minimize_r2, rounding_rate, solve_sdp
from spectral.submodular.weights import HomogeneousWeight
from spectral.types import SdpSolution

from tests.conftest import graph


class TestBuild:
    def test_constraint_count(self, h1, p4):
        assert build_sdp(h1).constraint_count == 6
        assert build_sdp(p4).constraint_count == 6

    def test_embedding_dimension(self, h1):
        assert build_sdp(h1).n_embed == 3
        with pytest.raises(ConfigError):
            build_sdp(h1, n_embed=2)

    def test_arity_cap(self):
        edge = Hyperedge(tuple(range(9)), 1.0, HomogeneousWeight(9))
        G = SubmodularHypergraph(9, np.ones(9), (edge,))
        with pytest.raises(ArityTooLarge):
            build_sdp(G)

    def test_single_vertex(self):
        with pytest.raises(ConfigError):
            build_sdp(SubmodularHypergraph(1, [1.0], ()))


class TestSolve:
    def test_p2(self, p2):
        sol = solve_sdp(build_sdp(p2))
        assert sol.objective == pytest.approx(2.0, rel=1e-6)
        assert sol.violation <= 1e-6

    def test_embedding_constraints_hold(self, p4):
        sol = solve_sdp(build_sdp(p4))
        mu = p4.mu
        np.testing.assert_allclose(sol.X @ mu, 0.0, atol=1e-9)
        assert float(np.sum(mu * np.sum(sol.X**2, axis=0))) == pytest.approx(1.0)

    def test_graph_matches_second_eigenvalue(self, p4, triangle):
        assert solve_sdp(build_sdp(p4)).objective == pytest.approx(0.5, rel=1e-3)
        assert solve_sdp(build_sdp(triangle)).objective == pytest.approx(1.5, rel=1e-3)

    def test_hyperedge_uses_extra_dimensions(self, h1):
        # equilateral embedding beats every one-dimensional vector
        sol = solve_sdp(build_sdp(h1))
        assert sol.objective == pytest.approx(1.0, rel=1e-3)

    def test_no_edges(self):
        G = graph(3, [], mu=[1.0, 1.0, 1.0])
        sol = solve_sdp(build_sdp(G))
        assert sol.objective == 0.0

    def test_to_dict(self, p2):
        data = solve_sdp(build_sdp(p2)).to_dict()
        assert set(data) == {"objective", "violation", "outer_iterations", "penalty", "eta"}
        assert len(data["eta"]) == 1


class TestRounding:
    def test_reproducible(self, p4):
        sol = solve_sdp(build_sdp(p4))
        np.testing.assert_array_equal(gaussian_round(sol, 3, 1), gaussian_round(sol, 3, 1))
        assert not np.array_equal(gaussian_round(sol, 3, 1), gaussian_round(sol, 3, 2))

    def test_zero_embedding(self):
        sol = SdpSolution(X=np.zeros((2, 2)), eta=np.zeros(1), objective=0.0)
        with pytest.raises(DegenerateEmbedding):
            gaussian_round(sol)


class TestMinimizeR2:
    def test_p2(self, p2):
        run = minimize_r2(p2, restarts=4)
        assert run.r2 == pytest.approx(2.0)
        assert run.sdp_opt == pytest.approx(2.0, rel=1e-6)
        assert run.x[0] == pytest.approx(-run.x[1])

    def test_relaxation_is_lower_bound(self, h1, p4):
        for G in (h1, p4):
            run = minimize_r2(G, restarts=16, seed=2)
            assert run.sdp_opt <= run.r2 + 1e-3

    def test_h1_gap(self, h1):
        run = minimize_r2(h1, restarts=16)
        assert run.r2 >= 1.5 - 1e-9
        assert run.sdp_opt == pytest.approx(1.0, rel=1e-3)

    def test_rounding_is_centred(self, p4):
        run = minimize_r2(p4, restarts=8)
        assert float(run.x @ p4.mu) == pytest.approx(0.0, abs=1e-9)
        assert run.sweep.p == 2.0

    def test_p4_sweep(self, p4):
        run = minimize_r2(p4, restarts=32)
        assert run.sweep.conductance == pytest.approx(1 / 3)

    def test_workers_do_not_change_result(self, p4):
        a = minimize_r2(p4, restarts=8, seed=4)
        b = minimize_r2(p4, restarts=8, seed=4, workers=3)
        assert a.r2 == b.r2
        np.testing.assert_array_equal(a.x, b.x)

    def test_restarts_validated(self, p4):
        with pytest.raises(ConfigError):
            minimize_r2(p4, restarts=0)

    def test_to_dict(self, p2):
        data = minimize_r2(p2, restarts=2).to_dict()
        assert data["restarts"] == 2
        assert data["solver"]["objective"] == pytest.approx(2.0, rel=1e-6)
        assert data["conductance"] == pytest.approx(1.0)


class TestRoundingRate:
    @pytest.mark.parametrize("name", ["p2", "p4", "h1", "triangle", "random"])
    def test_rate_over_500_draws(self, request, name):
        if name == "random":
            G = random_instance(RandomInstanceSpec(n=7, m=6, max_arity=3, weight_kind="alpha", seed=3))
        else:
            G = request.getfixturevalue(name)
        sol = solve_sdp(build_sdp(G), seed=0)
        assert rounding_rate(G, sol, draws=500, seed=1) >= ROUNDING_RATE_FLOOR

    def test_p2_always_succeeds(self, p2):
        sol = solve_sdp(build_sdp(p2))
        assert rounding_rate(p2, sol, draws=50) == 1.0

    def test_zero_factor(self, p4):
        sol = solve_sdp(build_sdp(p4))
        assert rounding_rate(p4, sol, draws=20, factor=0.0) == 0.0

    def test_draws_validated(self, p2):
        with pytest.raises(ConfigError):
            rounding_rate(p2, solve_sdp(build_sdp(p2)), draws=0)
