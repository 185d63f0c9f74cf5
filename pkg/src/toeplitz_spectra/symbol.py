"""Symbols on the unit circle and their basic transforms.

A symbol is a map a: T -> C evaluated as a(e^{ip}) for p in [-pi, pi).
Three kinds are supported: a pure jump factor e^{i beta (p - p0)}, a
finite Fourier series, and a composite of jump * modulus * smooth factors.
The angular parameter p always lives on the fundamental interval
[-pi, pi); evaluating at p = +pi gives the one-sided limit from below,
so the jump of a discontinuous symbol sits at the wrap point +-pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Tuple, Union

import numpy as np
from scipy.special import loggamma

from . import _kernels
from .errors import BranchError, ConfigError

TWO_PI = 2.0 * np.pi


def normalize_angle(p: float) -> float:
    """Map an angle to the fundamental interval [-pi, pi)."""
    out = math.remainder(p, TWO_PI)
    if out >= np.pi:
        out -= TWO_PI
    if out < -np.pi:
        out += TWO_PI
    return out


class FourierSeries:
    """Finite-support complex Fourier series sum_k c_k e^{ikp}.

    Doubles as the band-limited smooth symbol kind. Coefficients outside
    [k_min, k_max] are zero; lookups outside the support return 0.
    """

    def __init__(self, coeffs: Mapping[int, complex]):
        clean: Dict[int, complex] = {}
        for k, c in coeffs.items():
            c = complex(c)
            if c != 0:
                clean[int(k)] = c
        self._coeffs = clean
        if clean:
            self.k_min = min(clean)
            self.k_max = max(clean)
        else:
            self.k_min = 0
            self.k_max = 0

    def __getitem__(self, k: int) -> complex:
        return self._coeffs.get(int(k), 0.0 + 0.0j)

    def items(self):
        return sorted(self._coeffs.items())

    def __eq__(self, other):
        return isinstance(other, FourierSeries) and self._coeffs == other._coeffs

    def __repr__(self):
        return f"FourierSeries({dict(self.items())})"

    def __mul__(self, other: "FourierSeries") -> "FourierSeries":
        out: Dict[int, complex] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0.0) + c1 * c2
        return FourierSeries(out)

    def conjugate_reflect(self) -> "FourierSeries":
        """Series of conj(a(e^{ip})); used for the transpose-symbol identity."""
        return FourierSeries({-k: np.conj(c) for k, c in self._coeffs.items()})


@dataclass(frozen=True)
class PureJump:
    """Jump factor e^{i beta (p - p0)} with the discontinuity at p = +-pi."""

    beta: complex
    p0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "p0", normalize_angle(float(self.p0)))


@dataclass(frozen=True)
class Modulus:
    """Modulus factor |e^{ip} - e^{ip0}|^{2 alpha}."""

    alpha: complex
    p0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "p0", normalize_angle(float(self.p0)))


@dataclass(frozen=True)
class Composite:
    """Product of an optional jump, optional modulus, and a smooth part."""

    jump: PureJump | None = None
    modulus: Modulus | None = None
    smooth: FourierSeries | None = None


SymbolSpec = Union[PureJump, FourierSeries, Composite]


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def evaluate(s: SymbolSpec, p):
    """Evaluate a(e^{ip}); accepts a scalar angle or an ndarray of angles."""
    p = np.asarray(p, dtype=float)
    if isinstance(s, PureJump):
        out = np.exp(1j * s.beta * (p - s.p0))
    elif isinstance(s, FourierSeries):
        out = np.zeros(p.shape, dtype=complex)
        for k, c in s.items():
            out += c * np.exp(1j * k * p)
    elif isinstance(s, Composite):
        out = np.ones(p.shape, dtype=complex)
        if s.jump is not None:
            out = out * evaluate(s.jump, p)
        if s.modulus is not None:
            d = 2.0 - 2.0 * np.cos(p - s.modulus.p0)
            out = out * np.power(d.astype(complex), s.modulus.alpha)
    elif callable(s):
        out = np.asarray(s(p), dtype=complex)
    else:
        raise ConfigError(f"unsupported symbol kind: {type(s).__name__}")
    if isinstance(s, Composite) and s.smooth is not None:
        out = out * evaluate(s.smooth, p)
    if out.ndim == 0:
        return complex(out)
    return out


def derivative(s: SymbolSpec, p):
    """d/dp of a(e^{ip}), analytic per kind (p on the open interval)."""
    p = np.asarray(p, dtype=float)
    if isinstance(s, PureJump):
        out = 1j * s.beta * np.exp(1j * s.beta * (p - s.p0))
    elif isinstance(s, FourierSeries):
        out = np.zeros(p.shape, dtype=complex)
        for k, c in s.items():
            out += 1j * k * c * np.exp(1j * k * p)
    elif isinstance(s, Composite):
        factors = []
        if s.jump is not None:
            factors.append(s.jump)
        if s.modulus is not None:
            factors.append(s.modulus)
        if s.smooth is not None:
            factors.append(s.smooth)
        out = np.zeros(p.shape, dtype=complex)
        for i, f in enumerate(factors):
            term = _factor_derivative(f, p)
            for j, g in enumerate(factors):
                if j != i:
                    term = term * _factor_value(g, p)
            out = out + term
    else:
        raise ConfigError(f"unsupported symbol kind: {type(s).__name__}")
    if out.ndim == 0:
        return complex(out)
    return out


def _factor_value(f, p):
    if isinstance(f, Modulus):
        d = 2.0 - 2.0 * np.cos(p - f.p0)
        return np.power(d.astype(complex), f.alpha)
    return evaluate(f, p)


def _factor_derivative(f, p):
    if isinstance(f, Modulus):
        d = 2.0 - 2.0 * np.cos(p - f.p0)
        return f.alpha * 2.0 * np.sin(p - f.p0) * np.power(d.astype(complex), f.alpha - 1)
    return derivative(f, p)


def second_derivative(s: SymbolSpec, p):
    """d^2/dp^2 of a(e^{ip}) for the jump and band-limited kinds."""
    p = np.asarray(p, dtype=float)
    if isinstance(s, PureJump):
        out = (1j * s.beta) ** 2 * np.exp(1j * s.beta * (p - s.p0))
    elif isinstance(s, FourierSeries):
        out = np.zeros(p.shape, dtype=complex)
        for k, c in s.items():
            out += (1j * k) ** 2 * c * np.exp(1j * k * p)
    elif isinstance(s, Composite) and s.modulus is None:
        h = 1e-5
        out = np.asarray((derivative(s, p + h) - derivative(s, p - h)) / (2 * h))
    else:
        raise ConfigError("second derivative unsupported for this symbol kind")
    if out.ndim == 0:
        return complex(out)
    return out


# ---------------------------------------------------------------------------
# Fourier coefficients
# ---------------------------------------------------------------------------

def _safe_sinc(z):
    """sin(pi z)/(pi z) with the removable zero handled, complex-safe."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-8
    zs = np.where(small, 1.0, z)
    out = np.sin(np.pi * zs) / (np.pi * zs)
    series = 1.0 - (np.pi * z) ** 2 / 6.0
    return np.where(small, series, out)


def jump_coeffs(beta: complex, p0: float, ks) -> np.ndarray:
    """Closed-form Fourier coefficients of e^{i beta (p - p0)} on [-pi, pi)."""
    ks = np.asarray(ks)
    return np.exp(-1j * beta * p0) * _safe_sinc(beta - ks)


def modulus_coeffs(alpha: complex, p0: float, ks) -> np.ndarray:
    """Closed-form coefficients of |e^{ip} - e^{ip0}|^{2 alpha} (Re alpha > -1/2)."""
    ks = np.asarray(ks)
    out = np.exp(
        loggamma(1 + 2 * alpha) - loggamma(1 + alpha + ks) - loggamma(1 + alpha - ks)
    )
    return ((-1.0) ** ks) * np.exp(-1j * ks * p0) * out


def fourier_coeffs_of_callable(fn: Callable, k_range: Tuple[int, int],
                               n_quad: int = 8192) -> FourierSeries:
    """FFT-grade trapezoid quadrature of int dp/2pi e^{-ikp} f(p)."""
    k_min, k_max = int(k_range[0]), int(k_range[1])
    need = 4 * (abs(k_min) + abs(k_max) + 1)
    if n_quad < need:
        raise ConfigError(f"n_quad={n_quad} below required {need} for range {k_range}")
    p = -np.pi + TWO_PI * np.arange(n_quad) / n_quad
    vals = np.asarray(fn(p), dtype=complex)
    c = np.fft.fft(vals) / n_quad
    ks = np.arange(k_min, k_max + 1)
    out = {}
    for k in ks:
        out[int(k)] = ((-1.0) ** k) * c[k % n_quad]
    return FourierSeries(out)


def fourier_coeffs(s: SymbolSpec, k_range: Tuple[int, int],
                   n_quad: int = 8192) -> FourierSeries:
    """Fourier coefficients of the symbol over [k_min, k_max].

    Jump and modulus factors use closed forms; a discontinuous factor is
    never integrated numerically across its jump. Finite-support input
    whose support exceeds the requested range raises instead of silently
    truncating.
    """
    k_min, k_max = int(k_range[0]), int(k_range[1])
    if k_min > k_max:
        raise ConfigError(f"empty coefficient range {k_range}")
    ks = np.arange(k_min, k_max + 1)

    if isinstance(s, FourierSeries):
        if s.items() and (s.k_min < k_min or s.k_max > k_max):
            raise ConfigError(
                f"requested range {k_range} does not cover support "
                f"[{s.k_min}, {s.k_max}]"
            )
        return FourierSeries({k: s[k] for k in ks})

    if isinstance(s, PureJump):
        vals = jump_coeffs(s.beta, s.p0, ks)
        return FourierSeries(dict(zip(ks.tolist(), vals)))

    if isinstance(s, Composite):
        if s.modulus is not None and s.jump is None and s.smooth is None:
            vals = modulus_coeffs(s.modulus.alpha, s.modulus.p0, ks)
            return FourierSeries(dict(zip(ks.tolist(), vals)))
        if s.modulus is not None:
            raise ConfigError(
                "coefficients of modulus-times-anything composites are unsupported"
            )
        smooth = s.smooth if s.smooth is not None else FourierSeries({0: 1.0})
        if s.jump is None:
            return fourier_coeffs(smooth, k_range, n_quad)
        out = {}
        for k in ks:
            acc = 0.0 + 0.0j
            for j, c in smooth.items():
                acc += c * jump_coeffs(s.jump.beta, s.jump.p0, k - j)
            out[int(k)] = acc
        return FourierSeries(out)

    if callable(s):
        return fourier_coeffs_of_callable(s, k_range, n_quad)

    raise ConfigError(f"unsupported symbol kind: {type(s).__name__}")


# ---------------------------------------------------------------------------
# winding, Hilbert transform, continuous logarithm
# ---------------------------------------------------------------------------

def continuous_log(samples, anchor_phase: float | None = None) -> np.ndarray:
    """Logarithm with the imaginary part unwrapped along the sample path.

    The first sample gets the principal-branch phase shifted by the 2 pi
    multiple closest to ``anchor_phase`` (default: the principal value
    itself). Raises when a sample vanishes or the phase step between
    consecutive samples reaches pi (grid too coarse), reporting the index.
    """
    samples = np.asarray(samples, dtype=complex)
    mags = np.abs(samples)
    bad = np.nonzero(mags == 0.0)[0]
    if bad.size:
        raise BranchError(f"zero sample at index {bad[0]}", index=int(bad[0]))
    phases = _kernels.unwrap_phases(np.angle(samples))
    steps = np.abs(np.diff(phases))
    coarse = np.nonzero(steps >= np.pi * (1 - 1e-9))[0]
    if coarse.size:
        i = int(coarse[0])
        raise BranchError(f"phase step >= pi between samples {i} and {i+1}", index=i)
    if anchor_phase is not None:
        shift = TWO_PI * np.round((anchor_phase - phases[0]) / TWO_PI)
        phases = phases + shift
    return np.log(mags) + 1j * phases


def winding(s: SymbolSpec, n_grid: int = 8192) -> float:
    """Phase-unwrapped increment of log a over [-pi, pi], divided by 2 pi.

    Integer for continuous nonvanishing symbols; for a pure jump the raw
    increment equals Re beta and the caller interprets it.
    """
    p = np.linspace(-np.pi, np.pi, n_grid + 1)
    vals = evaluate(s, p)
    mags = np.abs(vals)
    tol = 1e-13 * float(np.max(mags))
    small = np.nonzero(mags <= tol)[0]
    if small.size:
        i = int(small[0])
        raise BranchError(f"|a| ~ 0 at p = {p[i]:.6g}", index=i, p=float(p[i]))
    w = continuous_log(vals)
    return float((w[-1].imag - w[0].imag) / TWO_PI)


def hilbert_transform(f: FourierSeries) -> FourierSeries:
    """Circular conjugate-function transform in coefficient form.

    Mode k maps to f_k / i for k >= 0 and to -f_k / i for k < 0.
    """
    out = {}
    for k, c in f.items():
        out[k] = c / 1j if k >= 0 else -c / 1j
    return FourierSeries(out)


# ---------------------------------------------------------------------------
# text round-trip
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dump_symbol(s: SymbolSpec) -> str:
    lines = []
    if isinstance(s, PureJump):
        lines.append("kind purejump")
        lines.append(f"beta_re {_fmt(s.beta.real)}")
        lines.append(f"beta_im {_fmt(s.beta.imag)}")
        lines.append(f"p0 {_fmt(s.p0)}")
    elif isinstance(s, FourierSeries):
        lines.append("kind fourier")
        for k, c in s.items():
            lines.append(f"coeff {k} {_fmt(c.real)} {_fmt(c.imag)}")
    elif isinstance(s, Composite):
        lines.append("kind composite")
        if s.jump is not None:
            lines.append(f"beta_re {_fmt(s.jump.beta.real)}")
            lines.append(f"beta_im {_fmt(s.jump.beta.imag)}")
            lines.append(f"p0 {_fmt(s.jump.p0)}")
        if s.modulus is not None:
            lines.append(f"alpha_re {_fmt(s.modulus.alpha.real)}")
            lines.append(f"alpha_im {_fmt(s.modulus.alpha.imag)}")
            lines.append(f"alpha_p0 {_fmt(s.modulus.p0)}")
        if s.smooth is not None:
            for k, c in s.smooth.items():
                lines.append(f"coeff {k} {_fmt(c.real)} {_fmt(c.imag)}")
    else:
        raise ConfigError(f"cannot serialize symbol kind {type(s).__name__}")
    return "\n".join(lines) + "\n"


def parse_symbol(text: str) -> SymbolSpec:
    kind = None
    fields: Dict[str, float] = {}
    coeffs: Dict[int, complex] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "kind":
                kind = parts[1]
            elif key == "coeff":
                k = int(parts[1])
                coeffs[k] = coeffs.get(k, 0.0) + complex(float(parts[2]), float(parts[3]))
            else:
                fields[key] = float(parts[1])
        except (IndexError, ValueError) as exc:
            raise ConfigError(f"bad symbol line {ln}: {raw!r}") from exc
    if kind == "purejump":
        return PureJump(complex(fields.get("beta_re", 0.0), fields.get("beta_im", 0.0)),
                        fields.get("p0", 0.0))
    if kind == "fourier":
        return FourierSeries(coeffs)
    if kind == "composite":
        jump = None
        if "beta_re" in fields or "beta_im" in fields:
            jump = PureJump(complex(fields.get("beta_re", 0.0), fields.get("beta_im", 0.0)),
                            fields.get("p0", 0.0))
        modulus = None
        if "alpha_re" in fields or "alpha_im" in fields:
            modulus = Modulus(complex(fields.get("alpha_re", 0.0), fields.get("alpha_im", 0.0)),
                              fields.get("alpha_p0", 0.0))
        smooth = FourierSeries(coeffs) if coeffs else None
        return Composite(jump=jump, modulus=modulus, smooth=smooth)
    raise ConfigError(f"unknown or missing symbol kind: {kind!r}")


def save_symbol(s: SymbolSpec, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dump_symbol(s))


def load_symbol(path) -> SymbolSpec:
    with open(path, "r", encoding="ascii") as fh:
        return parse_symbol(fh.read())
