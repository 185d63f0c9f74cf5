"""Finite Toeplitz sections and complex log-determinants."""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg as sla

from .errors import ConfigError, SingularMatrixError
from .symbol import FourierSeries


class ToeplitzMatrix:
    """Dense n x n section with entries[j][k] = a_{j-k}.

    Construction copies generator coefficients without arithmetic, so the
    entries match the generators bit-for-bit. Arrays are frozen after
    construction.
    """

    def __init__(self, first_col: np.ndarray, first_row: np.ndarray):
        first_col = np.asarray(first_col, dtype=complex)
        first_row = np.asarray(first_row, dtype=complex)
        if first_col.ndim != 1 or first_col.shape != first_row.shape:
            raise ConfigError("generator vectors must be 1-d and equally long")
        if first_col.shape[0] < 1:
            raise ConfigError("n must be >= 1")
        if first_col[0] != first_row[0]:
            raise ConfigError("first_col[0] and first_row[0] disagree")
        self.n = first_col.shape[0]
        self.first_col = first_col.copy()
        self.first_row = first_row.copy()
        self.entries = sla.toeplitz(self.first_col, self.first_row)
        for arr in (self.first_col, self.first_row, self.entries):
            arr.setflags(write=False)

    def generator(self, k: int) -> complex:
        """a_k: positive k from the first column, negative from the first row."""
        if k >= 0:
            return complex(self.first_col[k]) if k < self.n else 0.0j
        return complex(self.first_row[-k]) if -k < self.n else 0.0j


def build(coeffs: FourierSeries, n: int) -> ToeplitzMatrix:
    """Section T_n with entries coeffs[j - k] (zero outside the support)."""
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    col = np.array([coeffs[k] for k in range(n)], dtype=complex)
    row = np.array([coeffs[-k] for k in range(n)], dtype=complex)
    return ToeplitzMatrix(col, row)


def shifted(T: ToeplitzMatrix, zeta: complex) -> ToeplitzMatrix:
    """zeta*I - T; still Toeplitz with generator zeta*delta_{k,0} - a_k."""
    col = -T.first_col.copy()
    row = -T.first_row.copy()
    col[0] += zeta
    row[0] += zeta
    return ToeplitzMatrix(col, row)


def log_det(T) -> complex:
    """Complex log-determinant via pivoted LU.

    The real part accumulates log|u_ii| factor by factor (no overflow up to
    n ~ 2048); the imaginary part adds the pivot arguments plus pi for odd
    permutation parity and is reported modulo 2 pi in (-pi, pi].
    """
    M = T.entries if isinstance(T, ToeplitzMatrix) else np.asarray(T, dtype=complex)
    n = M.shape[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=True)
    d = np.diag(lu)
    scale = float(np.max(np.abs(M))) or 1.0
    small = np.nonzero(np.abs(d) <= n * np.finfo(float).eps * scale)[0]
    if small.size:
        k = int(small[0])
        raise SingularMatrixError(f"singular to working precision at pivot {k}", pivot=k)
    re = float(np.sum(np.log(np.abs(d))))
    im = float(np.sum(np.angle(d)))
    if int(np.count_nonzero(piv != np.arange(n))) % 2:
        im += np.pi
    im = (im + np.pi) % (2 * np.pi) - np.pi
    if im <= -np.pi:
        im = np.pi
    return complex(re, im)


def to_csv(T: ToeplitzMatrix, path) -> None:
    """Debug export: one row per entry as (row, col, re, im)."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("row,col,re,im\n")
        for j in range(T.n):
            for k in range(T.n):
                v = T.entries[j, k]
                fh.write(f"{j},{k},{v.real:.17g},{v.imag:.17g}\n")
