import numpy as np
import pytest
from scipy.special import roots_jacobi

from bergman_lab import (
    AnalyticMap,
    CoefficientSeries,
    SpaceParams,
    disk_integral,
    disk_rule,
    gauss_jacobi_radial,
    gram_matrix_of_powers,
    inner_product,
    inner_product_quadrature,
    l2_norm,
    orthogonality_defect,
    weight_sequence,
)
from helpers import random_series

ALPHAS = (-0.5, 0.0, 1.0, 2.5)


def beta_moment(k, alpha):
    # int_0^1 (1-t)^a t^k dt by the exact recurrence B(k+1) = B(k) * k/(k+a+1)
    b = 1.0 / (alpha + 1.0)
    for i in range(1, k + 1):
        b *= i / (i + alpha + 1.0)
    return b


class TestRadialRule:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_polynomial_exactness(self, alpha):
        t, u = gauss_jacobi_radial(8, alpha)
        for k in range(16):  # exact through degree 2*8 - 1
            q = np.sum(u * t**k)
            ref = beta_moment(k, alpha)
            assert abs(q - ref) / ref <= 1e-13

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_total_weight(self, alpha):
        _, u = gauss_jacobi_radial(64, alpha)
        assert np.sum(u) == pytest.approx(1.0 / (alpha + 1.0), rel=1e-14)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_against_scipy_jacobi(self, alpha):
        # independent construction of the same rule
        t, u = gauss_jacobi_radial(32, alpha)
        x, w = roots_jacobi(32, alpha, 0.0)
        t_ref = np.sort(0.5 * (x + 1.0))
        u_ref = (w * 2.0 ** (-alpha - 1.0))[np.argsort(0.5 * (x + 1.0))]
        order = np.argsort(t)
        assert np.max(np.abs(t[order] - t_ref)) <= 1e-13
        assert np.max(np.abs(u[order] - u_ref)) <= 1e-13

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            gauss_jacobi_radial(0, 0.0)
        with pytest.raises(ValueError):
            gauss_jacobi_radial(8, -1.5)


class TestDiskIntegral:
    def test_normalization(self):
        for alpha in ALPHAS:
            rule = disk_rule(alpha)
            assert disk_integral(np.ones_like(rule.weights), rule).real == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_moment_identity(self, alpha):
        rule = disk_rule(alpha)
        w = weight_sequence(40, alpha)
        mod2 = np.abs(rule.nodes) ** 2
        for n in range(41):
            q = disk_integral(mod2**n, rule).real
            assert abs(q - w[n]) / w[n] <= 1e-12

    def test_angular_symmetry(self):
        rule = disk_rule(0.0)
        assert abs(disk_integral(rule.nodes, rule)) <= 1e-15
        # z^a conj(z)^b integrates to zero off the diagonal
        z = rule.nodes
        assert abs(disk_integral(z**3 * np.conj(z) ** 1, rule)) <= 1e-15

    def test_callable_samples(self):
        rule = disk_rule(1.0)
        assert disk_integral(lambda z: np.abs(z) ** 2, rule).real == pytest.approx(
            weight_sequence(1, 1.0)[1], rel=1e-13
        )

    def test_rejects_nan_and_shape(self):
        rule = disk_rule(0.0)
        bad = np.ones_like(rule.weights, dtype=complex)
        bad[0, 0] = np.nan
        with pytest.raises(ValueError):
            disk_integral(bad, rule)
        with pytest.raises(ValueError):
            disk_integral(np.ones(5), rule)

    def test_alpha_consistency_check(self):
        rule = disk_rule(0.0)
        with pytest.raises(ValueError):
            disk_integral(np.ones_like(rule.weights), rule, alpha=1.0)


class TestL2Norm:
    def test_constant(self):
        rule = disk_rule(1.5)
        assert l2_norm(AnalyticMap.constant(1.0), rule) == pytest.approx(1.0, rel=1e-14)

    def test_monomial(self):
        rule = disk_rule(0.0)
        assert l2_norm(AnalyticMap.identity(), rule) == pytest.approx(np.sqrt(0.5), rel=1e-13)

    def test_affine(self):
        rule = disk_rule(0.0)
        assert l2_norm(AnalyticMap([1.0, 1.0]), rule) == pytest.approx(np.sqrt(1.5), rel=1e-13)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_parseval_cross_check(self, alpha):
        rng = np.random.default_rng(21)
        rule = disk_rule(alpha)
        w = weight_sequence(20, alpha)
        for _ in range(10):
            c = rng.standard_normal(21) + 1j * rng.standard_normal(21)
            h = AnalyticMap(c)
            ref = np.sqrt(np.sum(np.abs(c) ** 2 * w))
            assert abs(l2_norm(h, rule) - ref) / ref <= 1e-10


class TestInnerProductQuadrature:
    @pytest.mark.parametrize("alpha", (-0.5, 0.0, 1.0))
    def test_agrees_with_coefficient_form(self, alpha):
        rng = np.random.default_rng(31)
        p = SpaceParams(alpha=alpha, degree_cap=12, fiber_dim=2)
        rule = disk_rule(alpha)
        for _ in range(8):
            f, g = random_series(p, rng), random_series(p, rng)
            q = inner_product_quadrature(f, g, rule)
            c = inner_product(f, g)
            assert abs(q - c) <= 1e-10 * max(1.0, abs(c))


class TestGramOfPowers:
    def test_scaling_is_orthogonal(self):
        rule = disk_rule(0.0)
        g = gram_matrix_of_powers(AnalyticMap.scaling(0.8), 8, rule)
        assert orthogonality_defect(g) <= 1e-12

    def test_monomial_is_orthogonal(self):
        rule = disk_rule(1.0)
        g = gram_matrix_of_powers(AnalyticMap([0, 0, 0.7]), 6, rule)
        assert orthogonality_defect(g) <= 1e-12
        # diagonal matches the moment weights: <phi^i, phi^i> = |lam|^(2i) w_{2i}
        w = weight_sequence(12, 1.0)
        for i in range(7):
            assert g[i, i].real == pytest.approx(0.7 ** (2 * i) * w[2 * i], rel=1e-12)

    def test_affine_defect_is_large(self):
        rule = disk_rule(0.0)
        g = gram_matrix_of_powers(AnalyticMap([0.3, 0.4]), 4, rule)
        assert orthogonality_defect(g) > 1e-3

    def test_rejects_small_n(self):
        rule = disk_rule(0.0)
        with pytest.raises(ValueError):
            gram_matrix_of_powers(AnalyticMap.identity(), 0, rule)
