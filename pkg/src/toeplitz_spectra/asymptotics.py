"""Determinant asymptotics: Szego constants, Barnes G, and jump-symbol constants.

For a smooth zero-winding symbol, log det T_n -> n H(a) + E(a) with
H(a) = (log a)_0 and E(a) = sum_{k>=1} k (log a)_k (log a)_{-k}. A jump
factor e^{i beta p} adds an algebraic n^{-beta^2} correction whose constant
term involves the Barnes G function through G(1+beta) G(1-beta).

All H/E computations take branch data (a log series, or samples of a chosen
continuous branch) explicitly; branch selection never happens silently here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import loggamma, zeta

from .errors import ConfigError, NumericalError, QuadratureError
from .symbol import (Composite, FourierSeries, PureJump, SymbolSpec, TWO_PI,
                     continuous_log, evaluate)

# Euler-Mascheroni constant to 30 digits.
EULER_GAMMA = 0.577215664901532860606512090082

_GL_CACHE: dict = {}


def _gl(n: int):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = leggauss(n)
    return _GL_CACHE[n]


# ---------------------------------------------------------------------------
# Szego constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SzegoConstants:
    h: complex
    e_sum: complex
    e_integral: complex


def h_const(log_a: FourierSeries) -> complex:
    """Zeroth coefficient of the supplied branch of log a."""
    return log_a[0]


def e_const_sum(log_a: FourierSeries) -> complex:
    """sum_{k>=1} k (log a)_k (log a)_{-k} over the finite support."""
    out = 0.0 + 0.0j
    for k in range(1, max(log_a.k_max, -log_a.k_min) + 1):
        out += k * log_a[k] * log_a[-k]
    return out


def e_const_integral(log_a_samples) -> complex:
    """Quadratic Szego constant from samples of log a on a uniform grid.

    Takes N samples on p_j = -pi + 2 pi j / N and evaluates
    int dp/4pi [(log a)^H]'(p) log a(p) by spectral differentiation of the
    Hilbert transform: mode k of the integrand's first factor is |k| times
    mode k of log a. Raises when the spectral tail shows the grid does not
    resolve the branch.
    """
    g = np.asarray(log_a_samples, dtype=complex)
    n = g.shape[0]
    if n < 8:
        raise ConfigError("need at least 8 samples")
    c = np.fft.fft(g) / n
    scale = float(np.max(np.abs(c))) or 1.0
    tail = np.abs(c[n // 2 - n // 8: n // 2 + n // 8])
    if float(np.max(tail)) > 1e-10 * scale:
        raise QuadratureError("grid too coarse: spectral tail above 1e-10 of norm")
    k = np.fft.fftfreq(n, 1.0 / n)
    hp = np.fft.ifft(np.abs(k) * c * n)
    return complex(0.5 * np.mean(hp * g))


def szego_constants(log_a: FourierSeries, n_grid: int = 1024) -> SzegoConstants:
    """H and both routes to E for a band-limited branch of log a."""
    p = -np.pi + TWO_PI * np.arange(n_grid) / n_grid
    return SzegoConstants(
        h=h_const(log_a),
        e_sum=e_const_sum(log_a),
        e_integral=e_const_integral(evaluate(log_a, p)),
    )


# ---------------------------------------------------------------------------
# Barnes G
# ---------------------------------------------------------------------------

_BARNES_N = 64


def _ln_barnes_g_core(w: complex) -> complex:
    """Product formula near w = 1, truncated with a Hurwitz-zeta tail.

    The factor terms behave like -z^3/(3 n^2) + ..., so the truncated
    remainder is sum_{k>=3} (-1)^{k+1} z^k / k * sum_{n>N} n^{-(k-1)}, with
    the inner sums taken from the Hurwitz zeta to avoid cancellation.
    """
    z = w - 1.0
    out = (z / 2) * np.log(2 * np.pi) - z * (z + 1) / 2 - EULER_GAMMA * z * z / 2
    n = np.arange(1, _BARNES_N + 1)
    out += complex(np.sum(n * np.log1p(z / n) - z + z * z / (2 * n)))
    zk = z * z
    for k in range(3, 120):
        zk *= z
        term = ((-1) ** (k + 1)) * zk / k * zeta(float(k - 1), _BARNES_N + 1)
        out += term
        if abs(term) < 1e-18:
            break
    return out


def ln_barnes_g(w: complex) -> complex:
    """log G(w), continuous along rays from 1, ~1e-13 accurate for |w| <= 6.

    G vanishes at nonpositive integers, where the logarithm is undefined
    and a NumericalError is raised. Arguments are recurrence-shifted into
    the unit neighborhood of 1 using log G(w+1) = log Gamma(w) + log G(w).
    """
    w = complex(w)
    if abs(w - round(w.real)) < 1e-12 and round(w.real) <= 0:
        raise NumericalError(f"log G undefined at nonpositive integer {w}")
    shift = 0.0 + 0.0j
    while w.real > 2.5:
        w -= 1
        shift += loggamma(w)
    while w.real < 0.5:
        shift -= loggamma(w)
        w += 1
    return _ln_barnes_g_core(w) + shift


def log_barnes_gg(beta: complex) -> complex:
    """log[G(1 + beta) G(1 - beta)]."""
    return ln_barnes_g(1 + beta) + ln_barnes_g(1 - beta)


# ---------------------------------------------------------------------------
# jump-symbol constant E_{0,beta}
# ---------------------------------------------------------------------------

def _series_e0(beta: complex, c: np.ndarray) -> complex:
    """E(b) + beta * boundary series + log GG from FFT-ordered log-b modes."""
    n = c.shape[0]
    kk = np.arange(1, n // 2)
    cpos = c[1:n // 2]
    cneg = c[-1:-n // 2:-1]
    e_b = complex(np.sum(kk * cpos * cneg))
    s = complex(np.sum(((-1.0) ** kk) * (cpos - cneg)))
    return e_b + beta * s + log_barnes_gg(beta)


def e0beta(s: SymbolSpec, n_grid: int = 4096) -> complex:
    """Constant term of log det T_n for a symbol with one jump at +-pi.

    The symbol must factor as jump * smooth with no modulus part (alpha = 0)
    and a zero-winding smooth part. The smooth factor's branch constants
    enter only through its nonzero modes, so the result is independent of
    the branch anchor.
    """
    if isinstance(s, PureJump):
        jump, smooth = s, None
    elif isinstance(s, Composite):
        if s.modulus is not None and s.modulus.alpha != 0:
            raise ConfigError("modulus exponent must be zero for this constant")
        jump, smooth = s.jump, s.smooth
    else:
        jump, smooth = None, s if isinstance(s, FourierSeries) else None
    beta = jump.beta if jump is not None else 0.0 + 0.0j
    if smooth is None:
        return log_barnes_gg(beta)
    p = -np.pi + TWO_PI * np.arange(n_grid) / n_grid
    vals = np.asarray(evaluate(smooth, p), dtype=complex)
    closed = continuous_log(np.concatenate([vals, vals[:1]]))
    wind = (closed[-1].imag - closed[0].imag) / TWO_PI
    if abs(wind) > 1e-8:
        raise ConfigError(f"smooth part has nonzero winding {wind:.3g}")
    c = np.fft.fft(closed[:-1]) / n_grid
    c *= np.exp(1j * np.fft.fftfreq(n_grid, 1.0 / n_grid) * np.pi)  # grid starts at -pi
    return _series_e0(beta, c)


def fh_constants(v_fn, n_grid: int = 2 ** 16, n_gl: int = 512):
    """Generic (H, beta, E0, min|v|) for a sampled symbol v with jump at +-pi.

    v_fn(p) is evaluated on the closed interval [-pi, pi]; the branch of
    log v is unwrapped from p = -pi with a principal anchor. The jump
    exponent comes from the endpoint increment, H from Gauss-Legendre
    quadrature of the analytic-on-the-interval branch, and the smooth-part
    modes from the FFT of log v - i beta p.
    """
    p = np.linspace(-np.pi, np.pi, n_grid + 1)
    vals = np.asarray(v_fn(p), dtype=complex)
    min_abs = float(np.min(np.abs(vals)))
    w = continuous_log(vals)
    beta_z = (w[-1] - w[0]) / (2j * np.pi)

    x, wt = _gl(n_gl)
    pg = np.pi * x
    vg = np.asarray(v_fn(pg), dtype=complex)
    ref = np.interp(pg, p, w.imag)
    ph = np.angle(vg)
    ph += TWO_PI * np.round((ref - ph) / TWO_PI)
    h = complex(np.sum(wt * (np.log(np.abs(vg)) + 1j * ph)) * np.pi / TWO_PI)

    logb = w[:-1] - 1j * beta_z * p[:-1]
    c = np.fft.fft(logb) / n_grid
    c *= np.exp(1j * np.fft.fftfreq(n_grid, 1.0 / n_grid) * np.pi)  # start at -pi
    e0 = _series_e0(beta_z, c)
    return h, complex(beta_z), e0, min_abs


@dataclass(frozen=True)
class FHPrediction:
    """Predicted log det(zeta - T_n) split into its three parts."""

    n: int
    nh_part: complex
    log_n_part: complex
    constant: complex

    @property
    def parts(self):
        return (self.nh_part, self.log_n_part, self.constant)

    @property
    def log_det_pred(self) -> complex:
        return self.nh_part + self.log_n_part + self.constant


def fh_logdet_prediction(s: SymbolSpec, zeta: complex, n: int,
                         n_grid: int = 2 ** 16) -> FHPrediction:
    """n H(zeta - a) - beta_zeta^2 log n + E0(zeta - a) for zeta off the image."""
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    h, beta_z, e0, min_abs = fh_constants(lambda p: zeta - evaluate(s, p), n_grid)
    scale = max(abs(zeta), 1.0)
    if min_abs < 1e-6 * scale:
        raise NumericalError(
            f"zeta within {min_abs:.3g} of the symbol image; prediction undefined"
        )
    return FHPrediction(n=n, nh_part=n * h,
                        log_n_part=-(beta_z ** 2) * np.log(n), constant=e0)


# ---------------------------------------------------------------------------
# identity behind the E0 formula
# ---------------------------------------------------------------------------

def _hilbert_derivative_samples(logb: FourierSeries, p: np.ndarray) -> np.ndarray:
    """d/dp of the Hilbert transform: mode k picks up the factor |k|."""
    out = np.zeros(p.shape, dtype=complex)
    for k, c in logb.items():
        out += abs(k) * c * np.exp(1j * k * p)
    return out


def appendix_identity_check(logb: FourierSeries, beta: complex,
                            n_gl: int = 512) -> float:
    """Residual of the boundary-term identity linking the two E0 forms.

    Quadrature route: int dp/4pi [(log a)^H]' log a - [(log phi)^H]' log phi
    with log a = i beta p + log b, expanded so every derivative lands on the
    smooth factor (the sawtooth factor i beta p stays pointwise). Series
    route: E(b) + beta * sum_j (-1)^j (b_j - b_{-j}). Returns |difference|.
    """
    x, wt = _gl(n_gl)
    p = np.pi * x
    hb = _hilbert_derivative_samples(logb, p)
    lb = np.asarray(evaluate(logb, p), dtype=complex)
    q_bb = complex(np.sum(wt * hb * lb) * np.pi / (2 * TWO_PI))
    q_bphi = complex(np.sum(wt * hb * (1j * beta * p)) * np.pi / TWO_PI)
    lhs = q_bb + q_bphi - e_const_sum(logb)
    ks = np.arange(1, max(logb.k_max, -logb.k_min) + 1)
    rhs = beta * complex(np.sum([((-1.0) ** k) * (logb[k] - logb[-k]) for k in ks])) \
        if ks.size else 0.0 + 0.0j
    return float(abs(lhs - rhs))
