"""First-order eigenvalue deviation from the symbol image.

For a symbol with a single jump at +-pi, the eigenvalues of T_n deviate from
the image curve a(e^{i theta}) by

    delta_a = i a'(theta) [ -(log n / n) dbeta2(theta) + Omega(theta) / n ],

where dbeta2 is the jump of the squared jump exponent of zeta - a across the
image at zeta = a(e^{i theta}), and Omega collects two principal-value
integrals of the continuous log branch F(theta; p) against tan(p/2) and
cot((p-theta)/2) kernels plus a Gamma-function ratio.

Numerical strategy for the PV integrals: F carries a log|p - theta|
singularity with unit coefficient. Splitting F = log|2 sin((p-theta)/2)| + G
leaves G analytic at theta, and the split-off model integrates in closed
form against both kernels:

    PV int_-pi^pi cot((p-theta)/2) log|2 sin((p-theta)/2)| dp = 0,
    PV int_-pi^pi tan(p/2)        log|2 sin((p-theta)/2)| dp = -pi theta,

(antiderivative [log|2 sin((p-theta)/2)|]^2 for the first; differentiate in
theta and use the sine/cosine mode expansions for the second). The endpoint
pole of the tan kernel is removed by subtracting a multiple of tan(p/2),
whose own principal value vanishes by oddness; the cot pole at p = theta by
subtracting G(theta), whose cot principal value over the full circle also
vanishes. What remains is analytic on each of [-pi, theta] and [theta, pi]
and is handled by Gauss-Legendre panels with a doubling check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import loggamma

from . import _kernels
from .errors import ConfigError, BranchError, DegenerateJumpError, QuadratureError
from .symbol import (Composite, FourierSeries, PureJump, SymbolSpec, TWO_PI,
                     derivative, evaluate, second_derivative)

_GL_CACHE: dict = {}


def _gl(n: int):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the principal-value engine.

    gl_points is the per-panel Gauss-Legendre order; the engine always
    reruns at twice the order and requires the two Omega values to agree
    within doubling_tol. grid_points sets the uniform branch-tracking grid.
    """

    gl_points: int = 1024
    doubling_tol: float = 1e-8
    grid_points: int = 8192


@dataclass
class JumpData:
    """Per-theta bundle: continuous branch F, jump exponents, and evaluators."""

    theta: float
    p_grid: np.ndarray
    f_values: np.ndarray
    beta_plus: complex
    beta_minus: complex
    delta_beta_sq: complex
    f_at_pi: complex
    f_at_minus_pi: complex
    log_coeff: float                     # coefficient of log|2 sin((p-theta)/2)| in F
    g_eval: Callable = field(repr=False)
    g_at_theta: complex = 0.0 + 0.0j


def f_closed_form_pure(beta: complex, theta: float, p) -> complex | np.ndarray:
    """Continuous branch for the pure jump symbol, in closed form.

    Standard arctan branch; the removable point p = theta is filled with its
    limit. Valid for |Re beta| < 1 away from integer beta.
    """
    scalar = np.isscalar(p)
    p = np.atleast_1d(np.asarray(p, dtype=float))
    out = _kernels.pure_jump_f(float(theta), p, float(beta.real), float(beta.imag))
    return complex(out[0]) if scalar else out


def _g_closed_form_pure(beta: complex, theta: float, p) -> np.ndarray:
    p = np.atleast_1d(np.asarray(p, dtype=float))
    return _kernels.pure_jump_g(float(theta), p, float(beta.real), float(beta.imag))


def _check_admissible(theta: float, beta: complex | None) -> None:
    if not (-np.pi < theta < np.pi):
        raise ConfigError(f"theta = {theta:.6g} must lie strictly inside (-pi, pi)")
    if beta is not None:
        if abs(beta.imag) < 1e-12 and abs(beta.real - round(beta.real)) < 1e-12:
            raise DegenerateJumpError(
                f"beta = {beta:.6g} is an integer; the symbol has no jump"
            )


def _pure_jump_parts(s: SymbolSpec):
    """(beta, symbol) when s is a jump times a constant, else (None, s)."""
    if isinstance(s, PureJump):
        return s.beta, s
    if isinstance(s, Composite) and s.jump is not None:
        mod_ok = s.modulus is None or s.modulus.alpha == 0
        smooth_const = s.smooth is None or (s.smooth.k_min == s.smooth.k_max == 0)
        if mod_ok and smooth_const:
            return s.jump.beta, s
    return None, s


def _from_closed_form(beta: complex, s: SymbolSpec, theta: float,
                      grid_points: int) -> JumpData:
    """Closed-form branch, re-anchored to the principal value at p = -pi."""
    zeta = evaluate(s, theta)
    v_mpi = zeta - evaluate(s, -np.pi)
    offset = np.log(v_mpi) - f_closed_form_pure(beta, theta, -np.pi)

    def f_eval(p):
        return f_closed_form_pure(beta, theta, p) + offset

    def g_eval(p):
        return _g_closed_form_pure(beta, theta, p) + offset

    p_grid = np.linspace(-np.pi, np.pi, grid_points + 1)
    f_vals = f_eval(p_grid)
    f_pi = complex(f_eval(np.pi))
    f_mpi = complex(f_eval(-np.pi))
    db2 = (1j / np.pi) * (f_pi - f_mpi)
    b_re, b_im = beta.real, beta.imag
    g_theta = (0.5j * beta * (2 * theta + np.pi)
               + 1j * (np.arctan2(b_im, b_re) if b_re != 0 else 0.0)
               + np.log(abs(beta)) + offset)
    return JumpData(theta=float(theta), p_grid=p_grid, f_values=f_vals,
                    beta_plus=(-db2 - 1) / 2, beta_minus=(-db2 + 1) / 2,
                    delta_beta_sq=db2, f_at_pi=f_pi, f_at_minus_pi=f_mpi,
                    log_coeff=1.0, g_eval=g_eval, g_at_theta=complex(g_theta))


def f_continuous(s: SymbolSpec, theta: float,
                 grid_points: int = 8192) -> JumpData:
    """Continuous branch of log(zeta - a(e^{ip})) at zeta on the image.

    The branch is tracked on a uniform grid by independent phase unwrapping
    left and right of the structural zero at p = theta (principal anchor at
    p = -pi), then joined continuously across the excluded stencil; the
    join removes the -+ i pi step, so the result is the average of the two
    one-sided branches. The two jump exponents follow from the endpoint
    increment.
    """
    beta = None
    if isinstance(s, PureJump):
        beta = s.beta
    elif isinstance(s, Composite) and s.jump is not None:
        beta = s.jump.beta
    _check_admissible(theta, beta)

    zeta = evaluate(s, theta)
    da = derivative(s, theta)
    if abs(da) < 1e-14:
        raise BranchError(f"stationary image point at theta = {theta:.6g}")

    n = int(grid_points)
    h = TWO_PI / n
    p_grid = np.linspace(-np.pi, np.pi, n + 1)
    vals = zeta - evaluate(s, p_grid)
    keep = np.abs(vals) > 0.0
    near = np.abs(p_grid - theta) < h * 1e-6
    keep &= ~near
    dead = np.nonzero(~keep)[0]
    # an off-axis zero of zeta - a leaves |v| <~ |v'| h/2 at its nearest
    # node, so compare against the locally resolved derivative scale
    local_deriv = np.empty(n + 1)
    local_deriv[1:-1] = np.abs(vals[2:] - vals[:-2]) / (2 * h)
    local_deriv[0] = local_deriv[1]
    local_deriv[-1] = local_deriv[-2]
    suspicious = np.abs(vals) < 2 * h * local_deriv
    structural = np.abs(p_grid - theta) < 8 * h
    bad = np.nonzero(suspicious & ~structural)[0]
    if bad.size:
        i = int(bad[0])
        raise BranchError(
            f"zeta - a vanishes away from theta, at p = {p_grid[i]:.6g}",
            index=i, p=float(p_grid[i]),
        )

    left = np.nonzero((p_grid < theta) & keep)[0]
    right = np.nonzero((p_grid > theta) & keep)[0]
    if left.size < 3 or right.size < 3:
        raise ConfigError("grid too coarse around theta")
    ph_left = _kernels.unwrap_phases(np.angle(vals[left]))
    ph_right = _kernels.unwrap_phases(np.angle(vals[right]))
    pl, pr = p_grid[left], p_grid[right]
    slope = (ph_left[-1] - ph_left[-2]) / (pl[-1] - pl[-2])
    predicted = ph_left[-1] + slope * (pr[0] - pl[-1])
    ph_right = ph_right + np.pi * np.round((predicted - ph_right[0]) / np.pi)

    phases = np.empty(n + 1)
    phases[left] = ph_left
    phases[right] = ph_right
    p_known = np.concatenate([pl, pr])
    ph_known = np.concatenate([ph_left, ph_right])
    if dead.size:
        phases[dead] = np.interp(p_grid[dead], p_known, ph_known)
    with np.errstate(divide="ignore"):
        f_vals = np.log(np.abs(vals)) + 1j * phases
    if dead.size:
        f_vals[dead] = np.interp(p_grid[dead], p_known,
                                 np.log(np.abs(vals[keep]))) + 1j * phases[dead]

    f_pi = complex(f_vals[-1])
    f_mpi = complex(f_vals[0])
    db2 = (1j / np.pi) * (f_pi - f_mpi)

    d2a = second_derivative(s, theta)
    guard = 1e-6

    def f_eval(p):
        p = np.atleast_1d(np.asarray(p, dtype=float))
        x = p - theta
        vv = zeta - evaluate(s, p)
        tiny = np.abs(x) < guard
        if np.any(tiny):
            vv = np.where(tiny, -da * x * (1.0 + (d2a / (2 * da)) * x), vv)
        ref = np.interp(p, p_known, ph_known)
        ang = np.angle(vv)
        # the step-removed branch sits an odd multiple of pi above the raw
        # phase on one side of theta, so snap to pi (not 2 pi) multiples
        ang += np.pi * np.round((ref - ang) / np.pi)
        return np.log(np.abs(vv)) + 1j * ang

    def g_eval(p):
        p = np.atleast_1d(np.asarray(p, dtype=float))
        x = p - theta
        with np.errstate(divide="ignore"):
            model = np.log(np.abs(2 * np.sin(x / 2)))
        return f_eval(p) - model

    h1 = 2 * TWO_PI / n
    a1 = 0.5 * (g_eval(theta + h1) + g_eval(theta - h1))
    a2 = 0.5 * (g_eval(theta + 2 * h1) + g_eval(theta - 2 * h1))
    g_theta = complex(((4 * a1 - a2) / 3)[0])

    return JumpData(theta=float(theta), p_grid=p_grid, f_values=f_vals,
                    beta_plus=(-db2 - 1) / 2, beta_minus=(-db2 + 1) / 2,
                    delta_beta_sq=db2, f_at_pi=f_pi, f_at_minus_pi=f_mpi,
                    log_coeff=1.0, g_eval=g_eval, g_at_theta=g_theta)


def synthetic_jump_data(theta: float, f_callable: Callable,
                        delta_beta_sq: complex,
                        grid_points: int = 2048) -> JumpData:
    """Diagnostic bundle from a smooth F with no log singularity.

    The supplied endpoints must satisfy the consistency relation
    F(pi) - F(-pi) = -i pi dbeta2 for the tan-kernel endpoint subtraction
    to stay finite.
    """
    p_grid = np.linspace(-np.pi, np.pi, grid_points + 1)

    def g_eval(p):
        return np.atleast_1d(np.asarray(f_callable(np.asarray(p, dtype=float)),
                                        dtype=complex))

    f_pi = complex(f_callable(np.pi))
    f_mpi = complex(f_callable(-np.pi))
    db2 = complex(delta_beta_sq)
    return JumpData(theta=float(theta), p_grid=p_grid, f_values=g_eval(p_grid),
                    beta_plus=(-db2 - 1) / 2, beta_minus=(-db2 + 1) / 2,
                    delta_beta_sq=db2, f_at_pi=f_pi, f_at_minus_pi=f_mpi,
                    log_coeff=0.0, g_eval=g_eval,
                    g_at_theta=complex(f_callable(theta)))


def _gamma_ratio_term(db2: complex) -> complex:
    """log of the Barnes-G jump ratio, reduced to ordinary Gamma functions.

    G(1+b+) G(1-b+) / (G(1+b-) G(1-b-)) with b- = b+ + 1 telescopes to
    Gamma(-b+)/Gamma(1+b+) = Gamma(1/2 + dbeta2/2)/Gamma(1/2 - dbeta2/2).
    """
    z1 = 0.5 + db2 / 2
    z2 = 0.5 - db2 / 2
    for z in (z1, z2):
        if abs(z.imag) < 1e-8 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-8:
            raise DegenerateJumpError(
                f"Gamma pole at jump exponent configuration dbeta2 = {db2:.6g}"
            )
    return loggamma(z1) - loggamma(z2)


_GRADE_LEVELS = 46


def _graded_edges(a: float, b: float) -> np.ndarray:
    """Dyadic panel edges refined toward both interval ends.

    The integrands are analytic inside (a, b) but can carry logarithmic
    boundary layers as thin as the distance from theta to +-pi, so panels
    shrink geometrically toward each end, stopping at absolute float
    resolution so no edge collapses onto an endpoint.
    """
    w = b - a
    fr = 2.0 ** -np.arange(_GRADE_LEVELS, 0, -1)
    off = w * fr
    off = off[off > 1e-13]
    lefts = a + off                       # ascending, ends at the midpoint
    rights = b - off[-2::-1]              # from just past midpoint toward b
    edges = np.concatenate([[a], lefts, rights, [b]])
    return np.unique(edges)


def _omega_at_order(jd: JumpData, k_gl: int) -> complex:
    theta, db2, sigma = jd.theta, jd.delta_beta_sq, jd.log_coeff
    g = jd.g_eval

    def g_tilde(p):
        return 0.5 * db2 * np.asarray(p) - 1j * g(p)

    g_star = 0.5 * (complex(g_tilde(np.array([np.pi]))[0])
                    + complex(g_tilde(np.array([-np.pi]))[0]))
    g_theta = jd.g_at_theta

    order = max(12, k_gl // 64)
    x, w = _gl(order)

    def graded(fn, a, b):
        edges = _graded_edges(a, b)
        lo, hi = edges[:-1], edges[1:]
        pm = (0.5 * (hi - lo)[:, None] * x[None, :]
              + 0.5 * (hi + lo)[:, None]).ravel()
        vals = fn(pm).reshape(len(lo), order)
        return np.sum(0.5 * (hi - lo) * (vals @ w))

    # a quadrature node can collapse exactly onto theta at float resolution;
    # such nodes carry vanishing panel weights, so their values are dropped
    def tan_integrand(p):
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.tan(p / 2) * (g_tilde(p) - g_star)
        return np.where(p == theta, 0.0, out)

    def cot_integrand(p):
        t = np.tan((p - theta) / 2)
        hit = t == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (g(p) - g_theta) / np.where(hit, 1.0, t)
        return np.where(hit, 0.0, out)

    tan_part = (graded(tan_integrand, -np.pi, theta)
                + graded(tan_integrand, theta, np.pi)) / TWO_PI
    cot_part = -1j * (graded(cot_integrand, -np.pi, theta)
                      + graded(cot_integrand, theta, np.pi)) / TWO_PI
    return tan_part + 0.5j * sigma * theta + cot_part + _gamma_ratio_term(db2)


def omega(jd: JumpData, quad: QuadratureConfig | None = None) -> complex:
    """The 1/n-order constant: PV integrals of F plus the Gamma ratio.

    Evaluated at the configured Gauss-Legendre order and again at twice
    that order; disagreement beyond doubling_tol raises QuadratureError
    carrying the finer estimate.
    """
    quad = quad or QuadratureConfig()
    coarse = _omega_at_order(jd, quad.gl_points)
    fine = _omega_at_order(jd, 2 * quad.gl_points)
    if abs(fine - coarse) > quad.doubling_tol:
        raise QuadratureError(
            f"Omega doubling check failed: |delta| = {abs(fine - coarse):.3g}",
            estimate=fine,
        )
    return fine


@dataclass(frozen=True)
class DeviationPrediction:
    """delta_a at one theta with the log n/n and 1/n parts split out."""

    theta: float
    n: int
    delta_a: complex
    log_n_part: complex
    inv_n_part: complex
    tangent: complex
    endpoint_flag: bool = False


def predict_deviation(s: SymbolSpec, theta: float, n: int,
                      quad: QuadratureConfig | None = None,
                      exclusion_margin: float | None = None) -> DeviationPrediction:
    """Predicted eigenvalue deviation at angle theta for matrix size n.

    Pure jump symbols (up to constant factors) use the closed-form branch;
    everything else goes through the sampled branch construction. Angles
    within the endpoint exclusion margin (default 3 * 2 pi / n of +-pi) are
    still computed but flagged, since the expansion degrades there.
    """
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}")
    quad = quad or QuadratureConfig()
    beta_pure, _ = _pure_jump_parts(s)
    if beta_pure is not None:
        _check_admissible(theta, beta_pure)
        jd = _from_closed_form(beta_pure, s, theta, quad.grid_points)
    else:
        jd = f_continuous(s, theta, quad.grid_points)
    om = omega(jd, quad)
    tangent = 1j * derivative(s, theta)
    log_n_part = -tangent * jd.delta_beta_sq * (np.log(n) / n)
    inv_n_part = tangent * om / n
    margin = exclusion_margin if exclusion_margin is not None else 3 * TWO_PI / n
    flagged = (np.pi - abs(theta)) < margin
    return DeviationPrediction(theta=float(theta), n=int(n),
                               delta_a=log_n_part + inv_n_part,
                               log_n_part=log_n_part, inv_n_part=inv_n_part,
                               tangent=complex(tangent), endpoint_flag=bool(flagged))


def endpoint_asymptotic(beta: float, theta: float, n: int) -> complex:
    """Leading divergence estimate of delta_a/a near theta = pi (real beta).

    (i/pi) [ (log n / n) log(pi - theta) + (1/n) log(pi - theta)^2 ]: the two
    terms balance exactly at pi - theta = 1/n and exchange dominance there.
    """
    u = np.pi - theta
    lu = np.log(u)
    return (1j / np.pi) * ((np.log(n) / n) * lu + (1.0 / n) * lu * lu)
