"""The JIT kernels and their numpy twins must agree bit-for-bit in behavior."""

import numpy as np

from toeplitz_spectra import _kernels as K


def test_pure_jump_f_paths_agree():
    p = np.linspace(-np.pi, np.pi, 1001)
    a = K.pure_jump_f(0.7, p, 0.8, 1 / 3)
    b = K._pure_jump_f_numpy(0.7, p, 0.8, 1 / 3)
    assert np.allclose(a, b, atol=1e-14, rtol=0)


def test_pure_jump_g_paths_agree():
    p = np.linspace(-np.pi, np.pi, 1001)
    a = K.pure_jump_g(-0.4, p, 0.5, 0.0)
    b = K._pure_jump_g_numpy(-0.4, p, 0.5, 0.0)
    assert np.allclose(a, b, atol=1e-14, rtol=0)


def test_project_paths_agree():
    rng = np.random.default_rng(3)
    lams = rng.normal(size=50) + 1j * rng.normal(size=50)
    curve = np.exp(1j * np.linspace(-np.pi, np.pi, 512, endpoint=False))
    assert np.array_equal(K.project_to_curve(lams, curve),
                          K._project_numpy(lams, curve))


def test_swap_improve_paths_agree():
    rng = np.random.default_rng(4)
    n = 30
    targets = np.exp(1j * np.linspace(-3, 3, n))
    lams = targets + 0.05 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    order0 = rng.permutation(n).astype(np.int64)
    a = K.swap_improve(order0.copy(), lams, targets, 4 * n)
    b = K._swap_improve_numpy(order0.copy(), lams, targets, 4 * n)
    cost = lambda o: float(np.sum(np.abs(lams[o] - targets) ** 2))
    assert cost(a) == cost(b)


def test_unwrap_paths_agree():
    phi = np.cumsum(np.full(300, 0.4))
    wrapped = np.angle(np.exp(1j * phi))
    a = K.unwrap_phases(wrapped)
    b = K._unwrap_numpy(wrapped)
    assert np.allclose(a, b, atol=1e-12)
