"""Hot numeric kernels, JIT-compiled with numba when available.

Every kernel has a pure-numpy twin. Selection order:

* ``TOEPLITZ_SPECTRA_NUMBA=0`` (or ``false``/``no``) forces the numpy path;
* otherwise numba is used when it imports cleanly, numpy when it does not.

``benchmarks/bench_kernels.py`` compares the two paths.
"""

import os

import numpy as np

_env = os.environ.get("TOEPLITZ_SPECTRA_NUMBA", "1").strip().lower()
_want_numba = _env not in ("0", "false", "no")

if _want_numba:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - exercised via env flag instead
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if not NUMBA_ENABLED:
    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# closed-form continuous branch for the pure jump symbol
# ---------------------------------------------------------------------------

def _pure_jump_f_numpy(theta, p, b_re, b_im):
    x = theta - p
    sr = np.sin(b_re * x / 2)
    sh = np.sinh(b_im * x / 2)
    num = np.cos(b_re * x / 2) * sh
    den = np.cosh(b_im * x / 2) * sr
    with np.errstate(divide="ignore", invalid="ignore"):
        at = np.arctan(num / den)
        at = np.where(x == 0.0, np.arctan2(b_im, b_re) if b_re != 0.0 else 0.0, at)
        lg = 0.5 * np.log(sr * sr + sh * sh)
    beta = b_re + 1j * b_im
    return 0.5j * beta * (p + theta + np.pi) + np.log(2.0) + 1j * at + lg


def _pure_jump_g_numpy(theta, p, b_re, b_im):
    x = theta - p
    sr = np.sin(b_re * x / 2)
    sh = np.sinh(b_im * x / 2)
    num = np.cos(b_re * x / 2) * sh
    den = np.cosh(b_im * x / 2) * sr
    s2 = np.sin(x / 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        at = np.arctan(num / den)
        at = np.where(x == 0.0, np.arctan2(b_im, b_re) if b_re != 0.0 else 0.0, at)
        ratio = (sr * sr + sh * sh) / (s2 * s2)
        ratio = np.where(x == 0.0, b_re * b_re + b_im * b_im, ratio)
    beta = b_re + 1j * b_im
    return 0.5j * beta * (p + theta + np.pi) + 1j * at + 0.5 * np.log(ratio)


@njit(cache=True)
def _pure_jump_f_numba(theta, p, b_re, b_im):  # pragma: no cover - numba path
    out = np.empty(p.shape[0], dtype=np.complex128)
    beta = complex(b_re, b_im)
    log2 = np.log(2.0)
    for i in range(p.shape[0]):
        x = theta - p[i]
        sr = np.sin(b_re * x / 2)
        sh = np.sinh(b_im * x / 2)
        if x == 0.0:
            at = np.arctan2(b_im, b_re) if b_re != 0.0 else 0.0
        else:
            at = np.arctan(np.cos(b_re * x / 2) * sh / (np.cosh(b_im * x / 2) * sr))
        lg = 0.5 * np.log(sr * sr + sh * sh)
        out[i] = 0.5j * beta * (p[i] + theta + np.pi) + log2 + 1j * at + lg
    return out


@njit(cache=True)
def _pure_jump_g_numba(theta, p, b_re, b_im):  # pragma: no cover - numba path
    out = np.empty(p.shape[0], dtype=np.complex128)
    beta = complex(b_re, b_im)
    babs2 = b_re * b_re + b_im * b_im
    for i in range(p.shape[0]):
        x = theta - p[i]
        sr = np.sin(b_re * x / 2)
        sh = np.sinh(b_im * x / 2)
        if x == 0.0:
            at = np.arctan2(b_im, b_re) if b_re != 0.0 else 0.0
            ratio = babs2
        else:
            at = np.arctan(np.cos(b_re * x / 2) * sh / (np.cosh(b_im * x / 2) * sr))
            s2 = np.sin(x / 2)
            ratio = (sr * sr + sh * sh) / (s2 * s2)
        out[i] = 0.5j * beta * (p[i] + theta + np.pi) + 1j * at + 0.5 * np.log(ratio)
    return out


# ---------------------------------------------------------------------------
# eigenvalue matching helpers
# ---------------------------------------------------------------------------

def _project_numpy(lams, curve, chunk=128):
    idx = np.empty(lams.shape[0], dtype=np.int64)
    for lo in range(0, lams.shape[0], chunk):
        hi = min(lo + chunk, lams.shape[0])
        d = np.abs(lams[lo:hi, None] - curve[None, :])
        idx[lo:hi] = np.argmin(d, axis=1)
    return idx


@njit(cache=True)
def _project_numba(lams, curve):  # pragma: no cover - numba path
    idx = np.empty(lams.shape[0], dtype=np.int64)
    for i in range(lams.shape[0]):
        best = 1e300
        arg = 0
        for j in range(curve.shape[0]):
            dr = lams[i].real - curve[j].real
            di = lams[i].imag - curve[j].imag
            d = dr * dr + di * di
            if d < best:
                best = d
                arg = j
        idx[i] = arg
    return idx


def _swap_improve_numpy(order, lams, targets, max_passes):
    n = order.shape[0]
    for _ in range(max_passes):
        improved = False
        for i in range(n - 1):
            a, b = order[i], order[i + 1]
            keep = abs(lams[a] - targets[i]) ** 2 + abs(lams[b] - targets[i + 1]) ** 2
            swap = abs(lams[b] - targets[i]) ** 2 + abs(lams[a] - targets[i + 1]) ** 2
            if swap < keep - 1e-15 * (keep + 1.0):
                order[i], order[i + 1] = b, a
                improved = True
        if not improved:
            break
    return order


@njit(cache=True)
def _swap_improve_numba(order, lams, targets, max_passes):  # pragma: no cover
    n = order.shape[0]
    for _ in range(max_passes):
        improved = False
        for i in range(n - 1):
            a = order[i]
            b = order[i + 1]
            da = lams[a] - targets[i]
            db = lams[b] - targets[i + 1]
            keep = da.real * da.real + da.imag * da.imag + db.real * db.real + db.imag * db.imag
            da = lams[b] - targets[i]
            db = lams[a] - targets[i + 1]
            swap = da.real * da.real + da.imag * da.imag + db.real * db.real + db.imag * db.imag
            if swap < keep - 1e-15 * (keep + 1.0):
                order[i] = b
                order[i + 1] = a
                improved = True
        if not improved:
            break
    return order


# ---------------------------------------------------------------------------
# phase unwrapping
# ---------------------------------------------------------------------------

def _unwrap_numpy(phases):
    return np.unwrap(phases)


@njit(cache=True)
def _unwrap_numba(phases):  # pragma: no cover - numba path
    out = np.empty_like(phases)
    out[0] = phases[0]
    two_pi = 2 * np.pi
    for i in range(1, phases.shape[0]):
        d = phases[i] - phases[i - 1]
        d -= two_pi * np.round(d / two_pi)
        out[i] = out[i - 1] + d
    return out


if NUMBA_ENABLED:
    pure_jump_f = _pure_jump_f_numba
    pure_jump_g = _pure_jump_g_numba
    project_to_curve = _project_numba
    swap_improve = _swap_improve_numba
    unwrap_phases = _unwrap_numba
else:
    pure_jump_f = _pure_jump_f_numpy
    pure_jump_g = _pure_jump_g_numpy
    project_to_curve = _project_numpy
    swap_improve = _swap_improve_numpy
    unwrap_phases = _unwrap_numpy
