import mpmath
import numpy as np
import pytest

from toeplitz_spectra.asymptotics import (appendix_identity_check, e0beta,
                                          e_const_integral, e_const_sum,
                                          fh_constants, fh_logdet_prediction,
                                          h_const, ln_barnes_g, log_barnes_gg,
                                          szego_constants)
from toeplitz_spectra.errors import (ConfigError, NumericalError,
                                     QuadratureError)
from toeplitz_spectra.symbol import (Composite, FourierSeries, PureJump,
                                     evaluate, fourier_coeffs)
from toeplitz_spectra.toeplitz import build, log_det, shifted

mpmath.mp.dps = 30


def exp_of_series(log_series, k_cut=40, n_quad=4096):
    """Band-limit exp(log_series) at machine precision (test helper)."""
    return fourier_coeffs(lambda p: np.exp(evaluate(log_series, p)),
                          (-k_cut, k_cut), n_quad=n_quad)


class TestSzegoConstants:
    def test_h_constant_symbol(self):
        c = 2.0 + 1.0j
        assert h_const(FourierSeries({0: np.log(c)})) == pytest.approx(np.log(c))

    def test_h_no_zero_mode(self):
        assert h_const(FourierSeries({1: 0.3, -1: 0.3})) == 0

    def test_h_resolvent_symbol(self):
        # log(zeta - e^{ip}) = log zeta - sum_{k>=1} zeta^{-k} e^{ikp} / k
        zeta = 3.0 + 1.0j
        series = {0: np.log(zeta)}
        for k in range(1, 30):
            series[k] = -(zeta ** -k) / k
        assert h_const(FourierSeries(series)) == pytest.approx(np.log(zeta))

    def test_e_sum_single_mode(self):
        g = 0.25 + 0.1j
        assert e_const_sum(FourierSeries({1: g, -1: g})) == pytest.approx(g * g)

    def test_e_sum_analytic_vanishes(self):
        assert e_const_sum(FourierSeries({1: 1.0, 2: -2.0, 5: 1.0j})) == 0

    def test_e_sum_mixed(self):
        f = FourierSeries({1: 1.0, -1: 2.0, 2: 1.0, -2: 3.0})
        assert e_const_sum(f) == pytest.approx(8.0)

    def test_integral_matches_sum_specific(self):
        log_a = FourierSeries({1: 0.3, -1: 0.3})
        sc = szego_constants(log_a)
        assert sc.e_integral == pytest.approx(0.09, abs=1e-12)
        assert sc.e_sum == pytest.approx(0.09, abs=1e-15)

    def test_integral_matches_sum_random(self, rng):
        for _ in range(50):
            sup = rng.integers(1, 9)
            log_a = FourierSeries(
                {int(k): complex(*rng.normal(size=2) * 0.4)
                 for k in range(-sup, sup + 1)})
            sc = szego_constants(log_a)
            assert abs(sc.e_sum - sc.e_integral) <= 1e-10

    def test_integral_rejects_coarse_grid(self):
        log_a = FourierSeries({7: 1.0, -7: 1.0})
        p = -np.pi + 2 * np.pi * np.arange(16) / 16
        with pytest.raises(QuadratureError):
            e_const_integral(evaluate(log_a, p))


class TestBarnesG:
    def test_small_integers(self):
        assert ln_barnes_g(1.0) == pytest.approx(0.0, abs=1e-13)
        assert ln_barnes_g(2.0) == pytest.approx(0.0, abs=1e-13)
        assert ln_barnes_g(4.0) == pytest.approx(np.log(2.0), abs=1e-12)

    def test_against_mpmath(self, rng):
        checked = 0
        while checked < 120:
            w = complex(rng.uniform(-6, 6), rng.uniform(-6, 6))
            if abs(w) > 6 or (abs(w.imag) < 0.15 and w.real < 0.6):
                continue
            ref = complex(mpmath.barnesg(mpmath.mpc(w)))
            got = np.exp(ln_barnes_g(w))
            assert abs(got - ref) <= 1e-10 * max(abs(ref), 1e-12)
            checked += 1

    def test_recurrence(self, rng):
        checked = 0
        while checked < 60:
            w = complex(rng.uniform(0.05, 4.0), rng.uniform(-4.0, 4.0))
            if abs(w) > 4:
                continue
            from scipy.special import loggamma
            r = ln_barnes_g(w + 1) - ln_barnes_g(w) - loggamma(w)
            r_wrapped = complex(r.real, np.angle(np.exp(1j * r.imag)))
            assert abs(r_wrapped) <= 1e-10
            checked += 1

    def test_zero_arguments_rejected(self):
        for w in (0.0, -1.0, -5.0):
            with pytest.raises(NumericalError):
                ln_barnes_g(w)


class TestE0Beta:
    def test_pure_jump_reduces_to_barnes(self):
        beta = 0.37 - 0.21j
        assert e0beta(PureJump(beta)) == pytest.approx(log_barnes_gg(beta), abs=1e-13)

    def test_beta_zero_reduces_to_szego(self):
        log_b = FourierSeries({1: 0.3, -1: 0.3})
        smooth = exp_of_series(log_b)
        got = e0beta(Composite(smooth=smooth))
        assert got == pytest.approx(0.09, abs=1e-9)

    def test_composite_vs_series_route(self):
        # asymmetric smooth factor so the boundary series is nonzero
        beta = 0.45 + 0.15j
        log_b = FourierSeries({1: 0.3, -1: 0.2, 2: 0.1j})
        smooth = exp_of_series(log_b)
        got = e0beta(Composite(jump=PureJump(beta), smooth=smooth))
        series_s = sum(((-1.0) ** j) * (log_b[j] - log_b[-j]) for j in (1, 2))
        want = e_const_sum(log_b) + beta * series_s + log_barnes_gg(beta)
        assert got == pytest.approx(want, abs=1e-9)

    def test_nonzero_winding_rejected(self):
        with pytest.raises(ConfigError):
            e0beta(Composite(jump=PureJump(0.5), smooth=FourierSeries({1: 1.0})))


class TestAppendixIdentity:
    def test_zero_beta(self):
        log_b = FourierSeries({1: 0.4, -2: 0.3j})
        assert appendix_identity_check(log_b, 0.0) <= 1e-12

    def test_constant_smooth_part(self):
        assert appendix_identity_check(FourierSeries({0: 0.7}), 0.37) <= 1e-12

    def test_random_cases(self, rng):
        for _ in range(100):
            sup = rng.integers(1, 7)
            log_b = FourierSeries(
                {int(k): complex(*rng.normal(size=2) * 0.3)
                 for k in range(-sup, sup + 1)})
            beta = complex(rng.uniform(0.05, 0.9), rng.uniform(-0.4, 0.4))
            assert appendix_identity_check(log_b, beta) <= 1e-8


class TestSzegoLimit:
    def test_monotone_convergence(self):
        gamma = 0.3
        smooth = exp_of_series(FourierSeries({1: gamma, -1: gamma}))
        errs = []
        floors = []
        for n in (8, 16, 32, 64):
            T = build(smooth, n)
            errs.append(abs(log_det(T) - gamma ** 2))
            floors.append(64 * n * np.finfo(float).eps)
        # convergence is already below the LU roundoff floor at n = 8, so
        # monotone decrease is asserted up to that floor
        assert all(errs[i + 1] <= max(errs[i], floors[i + 1])
                   for i in range(len(errs) - 1))
        assert errs[-1] <= 1e-6


class TestFHPrediction:
    def test_smooth_symbol_slope_zero(self):
        smooth = exp_of_series(FourierSeries({1: 0.3, -1: 0.3}))
        zeta = 3.0 + 0.5j
        h, bz, e0, _ = fh_constants(lambda p: zeta - evaluate(smooth, p),
                                    n_grid=2 ** 14)
        assert abs(bz) < 1e-10
        pred = fh_logdet_prediction(smooth, zeta, 64, n_grid=2 ** 14)
        T = build(smooth, 64)
        ld = log_det(shifted(T, zeta))
        diff = ld - pred.log_det_pred
        diff = complex(diff.real, np.angle(np.exp(1j * diff.imag)))
        assert abs(diff) < 1e-8

    def test_pure_jump_prediction_converges(self):
        s = PureJump(0.8 + 1j / 3)
        zeta = 2.0 + 0.0j
        errs = []
        for n in (64, 128, 256):
            pred = fh_logdet_prediction(s, zeta, n)
            T = build(fourier_coeffs(s, (-(n - 1), n - 1)), n)
            ld = log_det(shifted(T, zeta))
            diff = ld - pred.log_det_pred
            errs.append(abs(complex(diff.real, np.angle(np.exp(1j * diff.imag)))))
        assert errs[0] < 5e-4
        assert errs[-1] < errs[0]

    def test_parts_reassemble_exactly(self):
        pred = fh_logdet_prediction(PureJump(0.5), 2.0, 128)
        assert pred.log_det_pred == pred.nh_part + pred.log_n_part + pred.constant

    def test_zeta_on_image_rejected(self):
        with pytest.raises(NumericalError):
            fh_logdet_prediction(PureJump(0.5), 1.0, 64)  # image hits 1 at p=0
