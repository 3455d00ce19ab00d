"""test spectral/laplacian.py - Q_p, Δ_p, Z_{p,μ}, Rayleigh quotients"""

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from spectral.errors import ConstantInput
from spectral.hypergraph import conductance
from spectral.laplacian import (
    apply_laplacian,
    lp_norm,
    mu_split,
    normalize_sphere,
    phi_p,
    q_p,
    rayleigh,
    rayleigh_sphere,
    set_valued_mask,
    z_p_mu,
)


class TestPhi:
    def test_values(self):
        np.testing.assert_allclose(phi_p([2, -3, 0], 3), [4, -9, 0])
        np.testing.assert_allclose(phi_p([2, -3, 0], 2), [2, -3, 0])
        np.testing.assert_allclose(phi_p([2, -3, 0], 1), [1, -1, 0])

    def test_set_valued_only_at_p1(self):
        np.testing.assert_array_equal(set_valued_mask([1, 0, -1], 1), [False, True, False])
        assert not set_valued_mask([1, 0, -1], 2).any()

    def test_p_below_one(self):
        with pytest.raises(ValueError):
            phi_p([1, 2], 0.5)


class TestNorms:
    def test_lp_norm(self):
        assert lp_norm([3, 4], 2) == pytest.approx(5.0)
        assert lp_norm([1, 1], 1, [2, 3]) == pytest.approx(5.0)

    def test_normalize(self):
        x = normalize_sphere([3, 4], 2, [1, 1])
        assert lp_norm(x, 2) == pytest.approx(1.0)

    def test_normalize_zero(self):
        with pytest.raises(ConstantInput):
            normalize_sphere([0, 0], 2)

    def test_mu_split(self):
        assert mu_split([2, 0, -1], 2, [1, 2, 3]) == (2.0, 2.0, 3.0)


class TestQp:
    def test_h1(self, h1):
        assert q_p(h1, [1, 0, -1], 2) == pytest.approx(4.0)
        assert q_p(h1, [1, 0, -1], 1) == pytest.approx(2.0)

    def test_constant_is_zero(self, p4):
        assert q_p(p4, [3, 3, 3, 3], 2) == 0.0

    def test_graph_is_sum_of_squares(self, p4, rng):
        x = rng.normal(size=4)
        expected = sum((x[a] - x[b]) ** 2 for a, b in [(0, 1), (1, 2), (2, 3)])
        assert q_p(p4, x, 2) == pytest.approx(expected)


class TestApplyLaplacian:
    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
    def test_euler_identity(self, triangle, rng, p):
        x = rng.normal(size=3)
        d = apply_laplacian(triangle, x, p)
        assert float(d @ x) == pytest.approx(q_p(triangle, x, p))
        assert float(d.sum()) == pytest.approx(0.0, abs=1e-12)

    def test_graph_laplacian(self, p4):
        x = np.array([1.0, 0.0, 0.0, -1.0])
        np.testing.assert_allclose(apply_laplacian(p4, x, 2), [1, -1, 1, -1])


class TestCentering:
    def test_weighted_median(self):
        assert z_p_mu([3, 1, 0], 1) == (1.0, 3.0)

    def test_smallest_median_on_ties(self):
        c, z = z_p_mu([0, 1], 1, [1, 1])
        assert c == 0.0
        assert z == pytest.approx(1.0)

    def test_mean_at_p2(self):
        c, z = z_p_mu([0, 3], 2, [2, 1])
        assert c == pytest.approx(1.0)
        assert z == pytest.approx(2 * 1 + 4)

    def test_general_p(self, rng):
        x = rng.normal(size=6)
        mu = rng.uniform(0.5, 2.0, size=6)
        c, z = z_p_mu(x, 3.0, mu)
        ref = minimize_scalar(lambda t: float(np.sum(mu * np.abs(x - t) ** 3)))
        assert z == pytest.approx(float(ref.fun), rel=1e-6)

    def test_constant(self):
        assert z_p_mu([2, 2, 2], 1.5) == (2.0, 0.0)


class TestRayleigh:
    def test_indicator_is_conductance(self, p4):
        assert rayleigh(p4, [1, 1, 0, 0], 1) == pytest.approx(conductance(p4, {0, 1}))

    def test_affine_invariance(self, triangle, rng):
        x = rng.normal(size=3)
        for p in (1.0, 2.0):
            assert rayleigh(triangle, -2.0 * x + 5.0, p) == pytest.approx(rayleigh(triangle, x, p))

    def test_constant_rejected(self, p4):
        with pytest.raises(ConstantInput):
            rayleigh(p4, [1, 1, 1, 1], 2)

    def test_sphere_quotient(self, p2):
        assert rayleigh_sphere(p2, [1, -1], 2) == pytest.approx(2.0)
        with pytest.raises(ConstantInput):
            rayleigh_sphere(p2, [0, 0], 2)
