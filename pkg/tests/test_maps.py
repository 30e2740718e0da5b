import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bergman_lab import (
    AnalyticMap,
    certify_self_map,
    compose,
    differentiate,
    mobius,
    multiply,
    power,
    power_ladder,
)


def coeffs_close(m: AnalyticMap, expected, atol=1e-12):
    got = m.coeffs
    exp = np.asarray(expected, dtype=complex)
    n = max(got.size, exp.size)
    g = np.zeros(n, dtype=complex)
    e = np.zeros(n, dtype=complex)
    g[: got.size] = got
    e[: exp.size] = exp
    return np.max(np.abs(g - e)) <= atol


small_coeff = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


def poly_strategy(max_degree):
    return st.lists(small_coeff, min_size=1, max_size=max_degree + 1).map(
        lambda cs: AnalyticMap(np.asarray(cs, dtype=complex))
    )


class TestAnalyticMap:
    def test_validation(self):
        with pytest.raises(ValueError):
            AnalyticMap(np.array([1.0, np.inf]))
        with pytest.raises(ValueError):
            AnalyticMap(np.zeros((2, 2)))

    def test_call_scalar_and_array(self):
        f = AnalyticMap([1.0, 2.0, 3.0])
        assert f(0.5) == pytest.approx(1 + 1 + 0.75)
        zs = np.array([0.0, 0.5])
        assert np.allclose(f(zs), [1.0, 2.75])

    def test_from_pairs(self):
        f = AnalyticMap.from_pairs([[0.0, 0.0], [0.5, -0.25]])
        assert f.coeffs[1] == 0.5 - 0.25j
        with pytest.raises(ValueError):
            AnalyticMap.from_pairs([0.5, 0.25])


class TestCompose:
    def test_monomial(self):
        f = AnalyticMap([0, 0, 1.0])          # z^2
        phi = AnalyticMap([0, 0.5j])          # lam z
        assert coeffs_close(compose(f, phi, 4), [0, 0, (0.5j) ** 2])

    def test_identity_function(self):
        phi = AnalyticMap([0.1, 0.2, 0.3, 0.4])
        out = compose(AnalyticMap.identity(), phi, 2)
        assert coeffs_close(out, [0.1, 0.2, 0.3])

    def test_hand_expansion(self):
        # (0.3 + 0.4 z)^2 = 0.09 + 0.24 z + 0.16 z^2
        f = AnalyticMap([0, 0, 1.0])
        phi = AnalyticMap([0.3, 0.4])
        assert coeffs_close(compose(f, phi, 2), [0.09, 0.24, 0.16])

    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(2), poly_strategy(2), poly_strategy(2))
    def test_associativity_in_exact_regime(self, f, g, h):
        # degrees multiply under composition; out_degree 8 covers 2*2*2
        left = compose(compose(f, g, 8), h, 8)
        right = compose(f, compose(g, h, 8), 8)
        assert coeffs_close(left, right.coeffs, atol=1e-12)


class TestMultiply:
    def test_unit(self):
        b = AnalyticMap([0.5, -0.25, 1.5])
        assert coeffs_close(multiply(AnalyticMap.constant(1.0), b, 2), b.coeffs)

    def test_monomials(self):
        z = AnalyticMap.identity()
        assert coeffs_close(multiply(z, z, 2), [0, 0, 1.0])

    def test_difference_of_squares(self):
        a = AnalyticMap([1.0, 1.0])
        b = AnalyticMap([1.0, -1.0])
        assert coeffs_close(multiply(a, b, 2), [1.0, 0.0, -1.0])

    def test_truncation(self):
        a = AnalyticMap([1.0, 1.0])
        assert multiply(a, a, 1).degree <= 1


class TestDifferentiate:
    def test_first_derivative(self):
        assert coeffs_close(differentiate(AnalyticMap([0, 0, 0, 1.0]), 1), [0, 0, 3.0])

    def test_full_order(self):
        assert coeffs_close(differentiate(AnalyticMap([0, 0, 0, 1.0]), 3), [6.0])

    def test_falling_factorials(self):
        f = AnalyticMap([0, 0, 2.0, 0, 0, 1.0])  # 2z^2 + z^5
        assert coeffs_close(differentiate(f, 2), [4.0, 0, 0, 20.0])

    def test_beyond_degree_is_zero(self):
        out = differentiate(AnalyticMap([1.0, 2.0]), 5)
        assert coeffs_close(out, [0.0])

    def test_order_zero(self):
        f = AnalyticMap([1.0, 2.0, 3.0])
        assert coeffs_close(differentiate(f, 0), f.coeffs)

    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(8), poly_strategy(8))
    def test_product_rule(self, a, b):
        n = a.degree + b.degree
        lhs = differentiate(multiply(a, b, n), 1)
        da_b = multiply(differentiate(a, 1), b, n)
        a_db = multiply(a, differentiate(b, 1), n)
        total = np.zeros(n + 1, dtype=complex)
        total[: da_b.coeffs.size] += da_b.coeffs
        total[: a_db.coeffs.size] += a_db.coeffs
        assert coeffs_close(lhs, total, atol=1e-12)


class TestPower:
    def test_zeroth(self):
        assert coeffs_close(power(AnalyticMap([0.3, 0.4]), 0, 5), [1.0])

    def test_monomial(self):
        lam = 0.3 - 0.2j
        assert coeffs_close(power(AnalyticMap.scaling(lam), 3, 5), [0, 0, 0, lam**3])

    def test_hand_expansion(self):
        out = power(AnalyticMap([0.5, 0.5]), 2, 2)
        assert coeffs_close(out, [0.25, 0.5, 0.25])

    def test_against_direct_convolution(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            deg = int(rng.integers(0, 9))
            c = rng.standard_normal(deg + 1) * 0.5
            phi = AnalyticMap(c.astype(complex))
            for m in range(7):
                direct = np.array([1.0 + 0j])
                for _ in range(m):
                    direct = np.convolve(direct, phi.coeffs)
                out = power(phi, m, deg * 6 + 1)
                assert coeffs_close(out, direct, atol=1e-12)

    def test_ladder_rungs(self):
        phi = AnalyticMap([0.1, 0.2])
        rungs = power_ladder(phi, 4, 6)
        assert len(rungs) == 5
        for m, rung in enumerate(rungs):
            assert coeffs_close(power(phi, m, 6), rung)


class TestMobius:
    def test_at_zero_parameter(self):
        assert coeffs_close(mobius(0.0, 4), [0, -1.0])

    def test_value_at_origin(self):
        c = 0.3 + 0.2j
        assert mobius(c, 8).coeffs[0] == c

    def test_linear_coefficient(self):
        assert mobius(0.5, 8).coeffs[1] == pytest.approx(-0.75)

    def test_rejects_outside_disk(self):
        with pytest.raises(ValueError):
            mobius(1.0, 4)

    @pytest.mark.parametrize("c,n", [(0.2, 16), (0.3, 24), (0.5, 32)])
    def test_self_inverse_up_to_tail(self, c, n):
        m = mobius(c, n)
        comp = compose(m, m, n)
        ident = np.zeros(n + 1, dtype=complex)
        ident[1] = 1.0
        err = np.max(np.abs(comp.coeffs - ident[: comp.coeffs.size]))
        # geometric tail of the truncated expansion plus a float floor
        assert err <= 2.0 * abs(c) ** n + 1e-14


class TestCertification:
    def test_near_rotation_accepted(self):
        cert = certify_self_map(AnalyticMap.scaling(0.999))
        assert cert.accepted
        assert cert.sup_estimate == pytest.approx(0.999 * 0.999, rel=1e-9)

    def test_expanding_map_rejected(self):
        cert = certify_self_map(AnalyticMap.scaling(1.5))
        assert not cert.accepted
        assert cert.sup_estimate == pytest.approx(1.5 * 0.999, rel=1e-9)

    def test_affine_accepted(self):
        cert = certify_self_map(AnalyticMap([0.3, 0.4]))
        assert cert.accepted
        assert cert.sup_estimate <= 0.7  # triangle inequality envelope

    def test_certificate_fields(self):
        cert = certify_self_map(AnalyticMap([0.3, 0.4]))
        assert cert.radii_count == 3
        assert cert.samples_per_circle == 4096
        assert 0 < cert.sample_radius < 1
