"""Dense complex eigensolve and eigenvalue-to-grid matching."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import _kernels
from .errors import ConfigError, EigenConvergenceError, MatchingError
from .symbol import SymbolSpec, evaluate
from .toeplitz import ToeplitzMatrix


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues of one matrix plus a backward-error estimate.

    residual_bound is relative to the matrix norm; without eigenvectors it
    is the standard backward-stability estimate of the QR iteration.
    """

    eigenvalues: np.ndarray
    residual_bound: float


@dataclass(frozen=True)
class MatchedSpectrum:
    thetas: np.ndarray
    lambdas: np.ndarray          # lambdas[j] is matched to thetas[j]
    permutation: np.ndarray      # indices into the input spectrum

    @property
    def pairs(self):
        return list(zip(self.thetas.tolist(), self.lambdas.tolist()))


def eigenvalues(T) -> Spectrum:
    """Full spectrum via balancing + Hessenberg reduction + shifted QR (LAPACK).

    Raises EigenConvergenceError if the iteration stalls; the LAPACK info
    index (first unconverged eigenvalue) is preserved in the message.
    """
    M = T.entries if isinstance(T, ToeplitzMatrix) else np.asarray(T, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ConfigError("expected a square matrix with n >= 1")
    if not np.all(np.isfinite(M)):
        raise ConfigError("matrix has non-finite entries")
    try:
        vals = sla.eigvals(M, check_finite=False)
    except sla.LinAlgError as exc:
        m = re.search(r"\d+", str(exc))
        idx = f" (index {m.group(0)})" if m else ""
        raise EigenConvergenceError(f"QR iteration did not converge{idx}") from exc
    return Spectrum(eigenvalues=vals, residual_bound=M.shape[0] * np.finfo(float).eps)


def theta_grid(n: int) -> np.ndarray:
    """Uniform midpoint angles 2 pi (j - 1/2)/n - pi, j = 1..n.

    Computed as (2j - 1 - n) * pi/n so the grid is exactly symmetric
    about zero in floating point.
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    j = np.arange(1, n + 1)
    return (2 * j - 1 - n) * (np.pi / n)


def match_to_grid(spec: Spectrum, s: SymbolSpec, n: int,
                  fine_factor: int = 16) -> MatchedSpectrum:
    """Pair each eigenvalue with a grid angle theta_j on the symbol's image.

    Each eigenvalue is projected to its closest point on a fine sampling of
    the image curve, eigenvalues are sorted by projected angle and paired
    order-to-order with theta_grid(n), then adjacent swaps run to a local
    cost fixpoint. Deterministic: ties in the projection sort are broken by
    (real, imag) lexicographic order of the eigenvalue.
    """
    lams = np.asarray(spec.eigenvalues, dtype=complex)
    if lams.shape[0] != n:
        raise ConfigError(f"spectrum size {lams.shape[0]} != n = {n}")
    thetas = theta_grid(n)
    targets = evaluate(s, thetas)
    if n == 1:
        perm = np.array([0], dtype=np.int64)
        return MatchedSpectrum(thetas, lams.copy(), perm)

    m = max(4096, fine_factor * n)
    fine = -np.pi + 2 * np.pi * np.arange(m) / m
    curve = np.asarray(evaluate(s, fine), dtype=complex)
    proj_idx = _kernels.project_to_curve(lams, curve)
    proj = fine[proj_idx]
    order = np.lexsort((lams.imag, lams.real, proj)).astype(np.int64)
    order = _kernels.swap_improve(order, lams, np.asarray(targets, dtype=complex),
                                  max_passes=4 * n)
    if np.unique(order).size != n:
        contested = np.setdiff1d(np.arange(n), order)
        raise MatchingError(f"matching is not a bijection; contested: {contested}")
    return MatchedSpectrum(thetas, lams[order], order)


def matching_cost(ms: MatchedSpectrum, s: SymbolSpec) -> float:
    """Total squared distance between matched eigenvalues and image points."""
    targets = evaluate(s, ms.thetas)
    return float(np.sum(np.abs(ms.lambdas - targets) ** 2))
