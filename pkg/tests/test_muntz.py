import math

import numpy as np
import pytest
from scipy import integrate as si
from scipy.special import eval_sh_legendre, roots_sh_legendre

from muntzquad.muntz import (
    MuntzPolynomial,
    OrthogonalityError,
    WeightFunction,
    check_lambda,
    inner_product,
    muntz_legendre,
    orthogonal_monic_sequence,
    roots,
    ypow,
)


class TestMuntzPolynomial:
    def test_evaluation(self):
        p = MuntzPolynomial(0.5, [1.0, -2.0, 3.0])
        t = 0.49
        assert p(t) == pytest.approx(1 - 2 * 0.7 + 3 * 0.49, rel=1e-15)
        assert p.degree == 2

    def test_zero_leading_coefficient(self):
        with pytest.raises(ValueError):
            MuntzPolynomial(0.5, [1.0, 0.0])

    def test_ypow_exact_for_unit_lambda(self):
        t = np.array([-0.3, 0.0, 0.7])
        assert np.array_equal(ypow(t, 1.0), t)

    @pytest.mark.parametrize("lam", [0.0, -0.5, 1.5])
    def test_lambda_range(self, lam):
        with pytest.raises(ValueError):
            check_lambda(lam)


class TestMuntzLegendre:
    @pytest.mark.parametrize("lam", [1.0, 0.75, 0.5, 0.25])
    def test_orthonormality(self, lam):
        for j in range(5):
            for k in range(j, 5):
                Lj, Lk = muntz_legendre(j, lam), muntz_legendre(k, lam)
                ip = si.quad(lambda t: Lj(t) * Lk(t), 0, 1, epsabs=1e-14, limit=200)[0]
                expected = 1.0 / (2 * k * lam + 1) if j == k else 0.0
                assert ip == pytest.approx(expected, abs=1e-11)

    def test_unit_lambda_is_shifted_legendre(self):
        t = np.linspace(0, 1, 11)
        for m in range(7):
            assert np.allclose(muntz_legendre(m, 1.0)(t), eval_sh_legendre(m, t), atol=1e-12)

    @staticmethod
    def _cancellation_tol(L):
        # summing alternating monomial coefficients loses eps * sum|c|
        return 1e-15 * np.sum(np.abs(L.coeffs))

    def test_value_at_one(self):
        for lam in (0.3, 0.75):
            for m in range(6):
                L = muntz_legendre(m, lam)
                assert abs(L(1.0) - 1.0) <= self._cancellation_tol(L)

    def test_high_degree_log_space(self):
        L = muntz_legendre(14, 0.5)
        assert abs(L(1.0) - 1.0) <= self._cancellation_tol(L)
        assert L.coeffs[0] == pytest.approx(15.0, rel=1e-13)


class TestWeightFunction:
    def test_unit_mass(self):
        assert WeightFunction.unit(-1.0, 1.0).mass == pytest.approx(2.0)

    @pytest.mark.parametrize("p", [1, 2, 3, 0.5])
    def test_power_mass(self, p):
        w = WeightFunction.power(2.0, p)
        assert w.mass == pytest.approx(2 ** (p + 1) / (p + 1), rel=1e-13)

    def test_power_endpoint_is_algebraic(self):
        w = WeightFunction.power(1.0, 1.5)
        assert w.right_exp == 1.5

    def test_bad_domain(self):
        with pytest.raises(ValueError):
            WeightFunction.unit(1.0, 0.0)
        with pytest.raises(ValueError):
            WeightFunction.power(1.0, 1.0, 0.0, 2.0)

    def test_inner_product(self):
        w = WeightFunction.unit(0, 1)
        assert inner_product(lambda t: t, lambda t: t, w) == pytest.approx(1 / 3)


class TestOrthogonalSequence:
    def test_legendre_recurrence(self):
        seq = orthogonal_monic_sequence(WeightFunction.unit(0, 1), 1.0, 6)
        assert np.allclose(seq.alphas, 0.5, atol=1e-14)
        n = np.arange(1, 6)
        assert np.allclose(seq.betas, n ** 2 / (4 * (4 * n ** 2 - 1)), rtol=1e-13)

    def test_roots_match_gauss_legendre(self):
        seq = orthogonal_monic_sequence(WeightFunction.unit(0, 1), 1.0, 8)
        for n in range(1, 9):
            assert np.allclose(roots(seq, n), roots_sh_legendre(n)[0], atol=1e-13)

    @pytest.mark.parametrize("lam", [0.75, 0.5, 0.25])
    def test_muntz_orthogonality_in_t(self, lam):
        w = WeightFunction.power(2.0, 1.0)
        seq = orthogonal_monic_sequence(w, lam, 4)
        for j in range(4):
            for k in range(j + 1, 5):
                ip = w.integrate(lambda t: seq(j, t) * seq(k, t))
                assert abs(ip) <= 1e-10 * math.sqrt(seq.norms2[j] * seq.norms2[k])

    def test_monic_leading_coefficient(self):
        seq = orthogonal_monic_sequence(WeightFunction.unit(0, 1), 0.5, 3)
        y = 1e4
        assert seq.eval_y(3, y) / y ** 3 == pytest.approx(1.0, rel=1e-3)

    def test_roots_interlace(self):
        seq = orthogonal_monic_sequence(WeightFunction.power(1.0, 1.0), 0.75, 6)
        for n in range(2, 7):
            hi, lo = roots(seq, n), roots(seq, n - 1)
            assert np.all(hi[:-1] < lo) and np.all(lo < hi[1:])

    def test_single_root_is_weighted_mean(self):
        # p_1 = y - <y>, so the root is the weighted mean of t**lam, mapped back
        w = WeightFunction.power(2.0, 1.0)
        seq = orthogonal_monic_sequence(w, 0.5, 1)
        mean_y = w.integrate(lambda t: t ** 0.5) / w.mass
        assert roots(seq, 1) == pytest.approx([mean_y ** 2], rel=1e-13)

    def test_negative_domain_needs_unit_lambda(self):
        w = WeightFunction.unit(-1.0, 1.0)
        seq = orthogonal_monic_sequence(w, 1.0, 3)
        assert np.allclose(roots(seq, 3), [-math.sqrt(0.6), 0.0, math.sqrt(0.6)], atol=1e-14)

    def test_degree_bounds(self):
        seq = orthogonal_monic_sequence(WeightFunction.unit(0, 1), 1.0, 2)
        with pytest.raises(ValueError):
            seq.jacobi_matrix(3)
        with pytest.raises(ValueError):
            orthogonal_monic_sequence(WeightFunction.unit(0, 1), 1.0, 0)

    def test_orthogonality_guard(self, monkeypatch):
        import muntzquad.muntz as mz
        monkeypatch.setattr(mz, "ORTHO_TOL", 0.0)
        with pytest.raises(OrthogonalityError):
            orthogonal_monic_sequence(WeightFunction.power(2.0, 1.0), 0.5, 4)
