"""test spectral/ipm.py - inverse power method and its inner solvers"""

import numpy as np
import pytest

from lib.suites import verify_instances
from spectral.errors import ConfigError, ConstantInput, TooLarge
from spectral.ipm import cluster_ipm, compute_g, default_start, inner_sfm, ipm
from spectral.laplacian import z_p_mu
from spectral.oracle import exact_h2, random_instance
from spectral.params import RandomInstanceSpec, create_rng, draw_rng
from spectral.sweep import sweep_cut
from spectral.types import InnerProblem

from tests.conftest import graph


def two_triangles():
    """两个三角形由边 (2, 3) 相连; h₂ = 1/7"""
    return graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


class TestComputeG:
    def test_zero_coordinates_balance(self):
        np.testing.assert_allclose(compute_g([2, 0], [1, 3]), [1, -1])

    def test_properties(self, rng):
        mu = rng.uniform(0.5, 2.0, size=6)
        x = rng.normal(size=6)
        x -= z_p_mu(x, 1.0, mu)[0]
        g = compute_g(x, mu)
        assert float(g.sum()) == pytest.approx(0.0, abs=1e-12)
        assert float(g @ x) == pytest.approx(float(np.sum(mu * np.abs(x))))
        assert np.all(np.abs(g) <= mu + 1e-12)


class TestInnerSfm:
    def test_p2(self, p2):
        res = inner_sfm(p2, InnerProblem(2.0, np.array([1.0, -1.0]), norm="linf"))
        assert res.side == (0,)
        assert res.objective == pytest.approx(-1.0)
        np.testing.assert_array_equal(res.z, [1.0, -1.0])

    def test_prefers_proper_sets(self, p4):
        # ∅, {0} and V all reach 0
        g = compute_g([1.0, 0.0, 0.0, 0.0], p4.mu)
        res = inner_sfm(p4, InnerProblem(1.0, g, norm="linf"))
        assert res.side == (0,)

    def test_wrong_norm(self, p2):
        with pytest.raises(ConfigError):
            inner_sfm(p2, InnerProblem(1.0, np.zeros(2)))

    def test_size_cap(self):
        G = graph(25, [(i, i + 1) for i in range(24)])
        with pytest.raises(TooLarge):
            inner_sfm(G, InnerProblem(1.0, np.zeros(25), norm="linf"))


class TestIpm:
    @pytest.mark.parametrize("inner", ["rcdm", "sfm"])
    def test_p4_from_good_start(self, p4, inner):
        result = ipm(p4, x0=[1.0, 0.5, -0.5, -1.0], inner=inner)
        assert result.sweep.side in ((0, 1), (2, 3))
        assert result.sweep.conductance == pytest.approx(1 / 3)
        assert result.lambda_hat == pytest.approx(1 / 3, abs=1e-6)

    @pytest.mark.parametrize("inner", ["rcdm", "sfm"])
    def test_two_triangles(self, inner):
        G = two_triangles()
        result = ipm(G, x0=[3.0, 2.0, 1.5, -1.0, -2.0, -2.5], inner=inner)
        assert result.sweep.conductance == pytest.approx(1 / 7)
        assert set(result.sweep.side) in ({0, 1, 2}, {3, 4, 5})

    def test_trace_is_nonincreasing(self):
        G = random_instance(RandomInstanceSpec(n=8, m=7, max_arity=4, weight_kind="alpha", seed=4))
        result = ipm(G, inner="sfm", seed=3)
        trace = result.lambda_trace
        assert all(b <= a + 1e-10 for a, b in zip(trace, trace[1:]))
        assert result.trace[0].k == 0
        assert result.reason in ("converged", "max_outer", "degenerate", "non_descent", "constant")

    def test_lambda_bounds_conductance(self):
        for seed in range(4):
            G = random_instance(RandomInstanceSpec(n=7, m=6, max_arity=3, weight_kind="table", seed=seed))
            h2, _ = exact_h2(G)
            result = ipm(G, inner="sfm", seed=seed)
            assert result.lambda_hat >= h2 - 1e-9
            assert h2 - 1e-9 <= result.sweep.conductance <= result.lambda_hat + 1e-9

    def test_iterate_is_median_centred(self, p4):
        result = ipm(p4, x0=[1.0, 0.5, -0.5, -1.0], inner="rcdm")
        c, _ = z_p_mu(result.x, 1.0, p4.mu)
        assert c == pytest.approx(0.0, abs=1e-12)

    def test_callback(self, p4):
        states = []
        ipm(p4, x0=[1.0, 0.5, -0.5, -1.0], inner="sfm", callback=states.append)
        assert states
        assert states[0].k == 0
        assert float(states[0].g.sum()) == pytest.approx(0.0, abs=1e-12)

    def test_reproducible(self):
        G = random_instance(RandomInstanceSpec(n=6, m=5, max_arity=3, seed=2))
        a = ipm(G, inner="rcdm", seed=5)
        b = ipm(G, inner="rcdm", seed=5)
        np.testing.assert_array_equal(a.x, b.x)
        assert a.lambda_trace == b.lambda_trace

    def test_constant_start(self, p4):
        with pytest.raises(ConstantInput):
            ipm(p4, x0=[1, 1, 1, 1])

    def test_unknown_inner(self, p4):
        with pytest.raises(ConfigError):
            ipm(p4, inner="newton")

    def test_default_start_is_centred_indicator(self, p4):
        x = default_start(p4, create_rng(0))
        assert len(set(np.round(x, 12))) == 2
        c, _ = z_p_mu(x, 1.0, p4.mu)
        assert c == pytest.approx(0.0)

    def test_default_start_beats_each_draw(self):
        G = two_triangles()
        x = default_start(G, create_rng(3), draws=16)
        rng = create_rng(3)
        singles = [sweep_cut(G, rng.standard_normal(G.n)).conductance for _ in range(16)]
        assert sweep_cut(G, x).conductance == pytest.approx(min(singles))

    def test_default_start_draws_validated(self, p4):
        with pytest.raises(ConfigError):
            default_start(p4, create_rng(0), draws=0)

    def test_never_worse_than_start(self):
        for seed in range(6):
            G = random_instance(RandomInstanceSpec(n=8, m=8, max_arity=4, weight_kind="alpha", seed=seed))
            start = sweep_cut(G, default_start(G, create_rng(seed), draws=4)).conductance
            result = ipm(G, x0=default_start(G, create_rng(seed), draws=4), inner="rcdm", seed=seed)
            assert result.sweep.conductance <= start + 1e-9


class TestClusterIpm:
    def test_restarts_pick_best(self):
        G = two_triangles()
        best = cluster_ipm(G, inner="sfm", restarts=4, seed=1)
        singles = [
            ipm(G, inner="sfm", seed=int(draw_rng(1, r).integers(2**31))).sweep.conductance for r in range(4)
        ]
        assert best.sweep.conductance == pytest.approx(min(singles))
        assert best.sweep.conductance >= 1 / 7 - 1e-12

    def test_x0_used_first(self, p4):
        result = cluster_ipm(p4, inner="sfm", restarts=1, x0=[1.0, 0.5, -0.5, -1.0])
        assert result.sweep.conductance == pytest.approx(1 / 3)

    def test_restarts_validated(self, p4):
        with pytest.raises(ConfigError):
            cluster_ipm(p4, restarts=0)

    def test_to_dict(self, p4):
        data = cluster_ipm(p4, inner="sfm", x0=[1.0, 0.5, -0.5, -1.0]).to_dict()
        assert data["inner"] == "sfm"
        assert data["iterations"] == len(data["trace"]) - 1
        assert data["sweep"]["conductance"] == pytest.approx(1 / 3)


@pytest.mark.slow
class TestQualityBar:
    @pytest.mark.parametrize("inner", ["sfm", "rcdm"])
    def test_sweep_reaches_h2_on_most_instances(self, inner):
        hits = 0
        instances = verify_instances(100, max_n=8, seed=0)
        for i, G in enumerate(instances):
            h2, _ = exact_h2(G)
            runs = [ipm(G, inner=inner, seed=int(draw_rng(i, r).integers(2**31))) for r in range(3)]
            for run in runs:
                trace = run.lambda_trace
                assert all(b <= a + 1e-10 for a, b in zip(trace, trace[1:]))
                assert run.lambda_hat >= h2 - 1e-9
            best = min(run.sweep.conductance for run in runs)
            hits += best <= h2 + 1e-9
        assert hits >= 80
