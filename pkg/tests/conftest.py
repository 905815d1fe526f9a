"""Shared oracles for the test suite.

These deliberately avoid the library's own code paths: direct O(N^2)
summation for the sweeps, adaptive quadrature for the local integrals, and
high-precision evaluation (mpmath) for the coefficient formulas.
"""

import mpmath as mp
import numpy as np
import pytest


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


def direct_sweep_left(J, q):
    """O(N^2) oracle for the left recursion: I_i = sum_{j<=i} q^{i-j} J_j."""
    n = len(J) - 1
    I = np.zeros_like(J)
    for i in range(1, n + 1):
        acc = 0.0
        for j in range(1, i + 1):
            acc += q ** (i - j) * J[j]
        I[i] = acc
    return I


def direct_sweep_right(J, q):
    n = len(J) - 1
    I = np.zeros_like(J)
    for i in range(n):
        acc = 0.0
        for j in range(i, n):
            acc += q ** (j - i) * J[j]
        I[i] = acc
    return I


def exp_cell_integral(func, nu, dps=40):
    """alpha * int over one cell of e^{-alpha(x_i - y)} f(y) dy in normalized
    coordinates: nu * int_0^1 e^{-nu s} f(s) ds, to dps digits."""
    with mp.workdps(dps):
        val = mp.quad(lambda s: nu * mp.e ** (-nu * s) * func(s), [0, 1])
        return float(val)


def window_values(func, orientation="left"):
    """Six window values for the normalized cell: node offset m sits at
    s = -m for the left orientation."""
    if orientation == "left":
        return [func(-m) for m in range(-3, 3)]
    return [func(m) for m in range(-3, 3)]
