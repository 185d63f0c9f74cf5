import itertools

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def brute_force_det(M):
    """Cofactor-expansion determinant for tiny matrices (test oracle)."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if n == 1:
        return M[0, 0]
    out = 0.0 + 0.0j
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        out += ((-1) ** j) * M[0, j] * brute_force_det(minor)
    return out


def brute_force_matching_cost(lams, targets):
    """Minimal assignment cost over all permutations (n <= 8)."""
    n = len(lams)
    best = np.inf
    for perm in itertools.permutations(range(n)):
        cost = sum(abs(lams[perm[i]] - targets[i]) ** 2 for i in range(n))
        best = min(best, cost)
    return best


def charpoly_coefficients(M):
    """Characteristic polynomial via Newton's identities on power traces."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    power = np.eye(n, dtype=complex)
    traces = []
    for _ in range(n):
        power = power @ M
        traces.append(np.trace(power))
    e = [1.0 + 0.0j]
    for k in range(1, n + 1):
        acc = 0.0 + 0.0j
        for i in range(1, k + 1):
            acc += ((-1) ** (i - 1)) * e[k - i] * traces[i - 1]
        e.append(acc / k)
    return np.array([((-1) ** k) * e[k] for k in range(n + 1)])


def match_multisets(a, b, tol):
    """True when two complex multisets pair up within tol."""
    a = sorted(a, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    b = list(b)
    for za in a:
        j = int(np.argmin([abs(za - zb) for zb in b]))
        if abs(za - b[j]) > tol:
            return False
        b.pop(j)
    return True
