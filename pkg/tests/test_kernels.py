import numpy as np
import pytest

from bergman_lab import (
    AnalyticMap,
    KernelPoint,
    SpaceParams,
    adjoint_kernel_bound,
    adjoint_kernel_residual,
    basis_function,
    composition_matrix,
    evaluate,
    inner_product,
    kernel_norm_closed_form,
    kernel_norm_truncated,
    kernel_pairing,
    kernel_series,
    kernel_tail,
    mobius,
    norm,
)
from helpers import random_series


class TestKernelSeries:
    def test_origin_is_constant(self):
        p = SpaceParams(alpha=1.0, degree_cap=5, fiber_dim=2)
        k = kernel_series(KernelPoint(0.0, 1), p)
        assert k.coeffs[0, 1] == 1.0
        assert np.count_nonzero(k.coeffs) == 1

    def test_degree_one_coefficient(self):
        p = SpaceParams(alpha=0.0, degree_cap=4, fiber_dim=2)
        k = kernel_series(KernelPoint(0.5, 0), p)
        # conj(0.5)/w_1 = 0.5 * 2 = 1
        assert k.coeffs[1, 0] == pytest.approx(1.0, abs=1e-15)

    def test_point_validation(self):
        with pytest.raises(ValueError):
            KernelPoint(1.0, 0)
        with pytest.raises(ValueError):
            KernelPoint(0.5, -1)
        p = SpaceParams(alpha=0.0, degree_cap=4, fiber_dim=2)
        with pytest.raises(ValueError):
            kernel_series(KernelPoint(0.5, 2), p)


class TestClosedFormNorm:
    def test_origin(self):
        assert kernel_norm_closed_form(KernelPoint(0.0), 2.0) == 1.0

    def test_half_alpha_zero(self):
        # (1 - 0.25)^(-(2+0)/2) = 4/3
        assert kernel_norm_closed_form(KernelPoint(0.5), 0.0) == pytest.approx(
            4.0 / 3.0, rel=1e-12
        )

    def test_half_alpha_one(self):
        assert kernel_norm_closed_form(KernelPoint(0.5), 1.0) == pytest.approx(
            0.75 ** (-1.5), rel=1e-12
        )


class TestPairing:
    def test_constant(self):
        p = SpaceParams(alpha=0.7, degree_cap=4, fiber_dim=3)
        c = np.zeros((5, 3), dtype=complex)
        c[0, 2] = 1.0
        from bergman_lab import CoefficientSeries

        f = CoefficientSeries(p, c)
        assert kernel_pairing(f, KernelPoint(0.3 + 0.1j, 2)) == pytest.approx(1.0, abs=1e-14)

    def test_monomial(self):
        from bergman_lab import CoefficientSeries

        p = SpaceParams(alpha=2.5, degree_cap=4, fiber_dim=2)
        c = np.zeros((5, 2), dtype=complex)
        c[1, 1] = 1.0
        f = CoefficientSeries(p, c)
        assert kernel_pairing(f, KernelPoint(0.3, 1)) == pytest.approx(0.3, abs=1e-14)

    def test_basis_element(self):
        p = SpaceParams(alpha=0.0, degree_cap=4, fiber_dim=2)
        f = basis_function(2, 1, p)
        expected = np.sqrt(3.0) * 0.25  # d_2 * z^2 at z = 0.5
        assert kernel_pairing(f, KernelPoint(0.5, 1)) == pytest.approx(expected, rel=1e-13)

    def test_equals_evaluation_on_random_series(self):
        rng = np.random.default_rng(17)
        p = SpaceParams(alpha=1.0, degree_cap=10, fiber_dim=3)
        for _ in range(25):
            f = random_series(p, rng)
            z = 0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            j = int(rng.integers(0, 3))
            pair = kernel_pairing(f, KernelPoint(z, j))
            ev = evaluate(f, z)[j]
            assert pair == pytest.approx(complex(ev), abs=1e-12)


class TestNormConvergence:
    def test_monotone_from_below(self):
        cf = kernel_norm_closed_form(KernelPoint(0.7), 0.0)
        vals = [kernel_norm_truncated(KernelPoint(0.7), n, 0.0) for n in (10, 25, 50, 100, 200)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        assert all(v <= cf + 1e-12 for v in vals)
        assert (cf - vals[-1]) / cf <= 1e-6

    def test_matches_series_norm(self):
        p = SpaceParams(alpha=0.5, degree_cap=60, fiber_dim=2)
        pt = KernelPoint(0.4 - 0.2j, 1)
        k = kernel_series(pt, p)
        assert norm(k) == pytest.approx(kernel_norm_truncated(pt, 60, 0.5), rel=1e-13)

    def test_tail_oracle(self):
        # tail^2 = closed^2 - truncated^2, monotone decreasing in the degree
        t1 = kernel_tail(20, 0.7, 0.0)
        t2 = kernel_tail(40, 0.7, 0.0)
        assert t2 < t1
        direct = np.sqrt(
            kernel_norm_closed_form(KernelPoint(0.7), 0.0) ** 2
            - kernel_norm_truncated(KernelPoint(0.7), 20, 0.0) ** 2
        )
        assert t1 == pytest.approx(direct, rel=1e-10)


def test_kernel_span_has_full_rank():
    # kernels at 20 random points, both fiber directions, N = 40: the Gram
    # matrix must be numerically nonsingular (kernels span at truncation)
    rng = np.random.default_rng(12345)
    p = SpaceParams(alpha=0.0, degree_cap=40, fiber_dim=2)
    pts = []
    while len(pts) < 20:
        z = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
        if abs(z) < 0.8:
            pts.append(z)
    kernels = [kernel_series(KernelPoint(z, j), p) for z in pts for j in range(2)]
    gram = np.array([[inner_product(a, b) for b in kernels] for a in kernels])
    smin = np.linalg.svd(gram, compute_uv=False)[-1]
    assert smin > 1e-12


class TestAdjointKernelIdentity:
    def test_diagonal_exactness(self):
        pt = KernelPoint(0.4 + 0.2j, 0)
        phi = AnalyticMap.scaling(0.7j)
        for n in (8, 32, 96):
            B = composition_matrix(phi, 0.0, n, n)
            assert adjoint_kernel_residual(B, phi, pt) <= 1e-10

    def test_origin_fixed_at_zero(self):
        phi = AnalyticMap([0.0, 0.5, 0.2])
        B = composition_matrix(phi, 0.0, 24, 24)
        assert adjoint_kernel_residual(B, phi, KernelPoint(0.0)) <= 1e-12

    def test_mobius_below_documented_bound(self):
        phi = mobius(0.3, 128)
        B = composition_matrix(phi, 0.0, 128, 128)
        pt = KernelPoint(0.2)
        res = adjoint_kernel_residual(B, phi, pt)
        bound = adjoint_kernel_bound(B, phi, pt)
        assert res <= bound.total
        assert res <= 1e-6

    def test_requires_square(self):
        phi = AnalyticMap.scaling(0.5)
        B = composition_matrix(phi, 0.0, 4, 8)
        with pytest.raises(ValueError):
            adjoint_kernel_residual(B, phi, KernelPoint(0.1))

    def test_rejects_point_mapped_outside(self):
        phi = AnalyticMap([0.5, 1.0])  # phi(0.6) = 1.1
        B = composition_matrix(phi, 0.0, 8, 8, allow_uncertified=True)
        with pytest.raises(ValueError):
            adjoint_kernel_residual(B, phi, KernelPoint(0.6))
