import mpmath as mp
import numpy as np
import pytest

from advdiff import quadrature as qd
from conftest import exp_cell_integral, window_values

NU_SET = (0.01, 0.1, 1.0, 10.0)


def test_rows_exact_on_constants():
    # each substencil row integrates v = 1 to 1 - e^{-nu}
    for nu in (0.003, 0.05, 0.2, 0.7, 3.0, 25.0):
        cs = qd.small_stencil_coefficients(nu)
        target = -np.expm1(-nu)
        for r in range(3):
            assert abs(cs[r].sum() - target) < 1e-13 * max(1.0, target)


@pytest.mark.parametrize("nu", NU_SET)
def test_substencils_exact_on_cubics(nu, rng):
    cs = qd.small_stencil_coefficients(nu)
    for _ in range(5):
        coefs = rng.uniform(-2, 2, size=4)
        poly = np.polynomial.Polynomial(coefs)
        exact = exp_cell_integral(lambda s: poly(float(s)), nu)
        for r in range(3):
            # substencil r sees nodes at offsets -3+r .. r
            vals = [poly(-(m)) for m in range(-3 + r, r + 1)]
            approx = float(np.dot(cs[r], vals))
            assert abs(approx - exact) <= 1e-10 * max(abs(exact), 1e-3)


@pytest.mark.parametrize("nu", NU_SET)
def test_linear_rule_exact_on_quintics(nu, rng):
    c = qd.linear_coefficients(nu)
    for _ in range(5):
        coefs = rng.uniform(-2, 2, size=6)
        poly = np.polynomial.Polynomial(coefs)
        exact = exp_cell_integral(lambda s: poly(float(s)), nu)
        vals = window_values(lambda s: poly(float(s)))
        approx = float(np.dot(c, vals))
        assert abs(approx - exact) <= 1e-10 * max(abs(exact), 1e-3)


def test_linear_weights_sum_and_sign():
    for nu in np.geomspace(1e-3, 50, 40):
        d = qd.linear_weights(nu)
        assert abs(sum(d) - 1.0) < 1e-14
        assert all(w > 0 for w in d)


def test_weights_at_nu_one_vs_multiprecision():
    # closed forms evaluated at 50 digits
    with mp.workdps(50):
        nu = mp.mpf(1)
        e = mp.e ** (-nu)
        d0 = ((2 * nu**4 - 15 * nu**2 + 60) - (60 + 60 * nu + 15 * nu**2 - 5 * nu**3 - 3 * nu**4) * e) / \
             (10 * nu**2 * (2 * nu**2 - 6 * nu + 6 + (nu**2 - 6) * e))
        d2 = (60 - 60 * nu + 15 * nu**2 + 5 * nu**3 - 3 * nu**4 - (60 - 15 * nu**2 + 2 * nu**4) * e) / \
             (10 * nu**2 * (6 - nu**2 - (6 + 6 * nu + 2 * nu**2) * e))
        d0, d2 = float(d0), float(d2)
    got = qd.linear_weights(1.0)
    assert got[0] == pytest.approx(d0, rel=1e-13)
    assert got[2] == pytest.approx(d2, rel=1e-13)


def test_coefficients_at_nu_one_vs_multiprecision():
    with mp.workdps(50):
        nu = mp.mpf(1)
        e = mp.e ** (-nu)
        ref = float((6 - 6 * nu + 2 * nu**2 - (6 - nu**2) * e) / (6 * nu**3))
    got = qd.small_stencil_coefficients(1.0)[0][0]
    assert got == pytest.approx(ref, rel=1e-13)


def test_branch_continuity_at_switch(monkeypatch):
    # evaluate both branches at the switch point itself
    nu0 = qd._C_SWITCH
    closed = qd.small_stencil_coefficients(nu0)
    monkeypatch.setattr(qd, "_C_SWITCH", nu0 * 2)
    series = qd.small_stencil_coefficients(nu0)
    assert np.max(np.abs(closed - series)) < 1e-10

    nu0 = qd._D_SWITCH
    closed_d = np.asarray(qd.linear_weights(nu0))
    monkeypatch.setattr(qd, "_D_SWITCH", nu0 * 2)
    series_d = np.asarray(qd.linear_weights(nu0))
    assert np.max(np.abs(closed_d - series_d)) < 1e-10


def test_coefficients_vanish_linearly_as_nu_to_zero():
    for nu in (1e-3, 1e-4, 1e-5):
        cs = qd.small_stencil_coefficients(nu)
        assert np.max(np.abs(cs)) < 1.0 * nu
        assert np.max(np.abs(cs)) > 0.0


def test_small_stencil_rejects_bad_nu():
    with pytest.raises(ValueError):
        qd.small_stencil_coefficients(0.0)
    with pytest.raises(ValueError):
        qd.linear_weights(-1.0)


def test_smoothness_indicators_constant_window():
    si = qd.smoothness_indicators([np.float64(3.5)] * 6)
    assert si == (0.0, 0.0, 0.0)


def test_smoothness_indicators_linear_window():
    # unit slope: only the cell-jump term survives
    si = qd.smoothness_indicators([np.float64(j) for j in range(6)])
    assert si == pytest.approx((1.0, 1.0, 1.0), abs=1e-14)


def test_smoothness_indicators_step_window():
    w = [np.float64(v) for v in (0, 0, 0, 1, 1, 1)]
    si0, si1, si2 = qd.smoothness_indicators(w)
    # direct evaluation of the three closed forms
    assert si0 == pytest.approx(781 / 720 + 13 * 9 / 48 + 1)
    assert si1 == pytest.approx(781 / 720 * 4 + 1)
    assert si2 == pytest.approx(781 / 720 + 13 * 9 / 48 + 1)
    # substencils holding the jump are flagged much rougher than a shifted
    # window whose substencil 2 is entirely on the flat part
    w_shift = [np.float64(v) for v in (0, 0, 1, 1, 1, 1)]
    s0, _, s2 = qd.smoothness_indicators(w_shift)
    assert s2 == 0.0 and s0 > 1.0


def test_nonlinear_weights_equal_si_gives_linear():
    d = qd.linear_weights(0.8)
    om = qd.nonlinear_weights((0.3, 0.3, 0.3), d)
    assert om == pytest.approx(d, rel=1e-14)


def test_nonlinear_weights_example():
    om = qd.nonlinear_weights((0.0, 0.0, 1e3), (0.3, 0.5, 0.2), epsilon=1e-6)
    assert om[0] == pytest.approx(0.375, rel=1e-9)
    assert om[1] == pytest.approx(0.625, rel=1e-9)
    assert om[2] == pytest.approx(2.5e-19, rel=1e-6)


def test_nonlinear_weights_degenerate_d():
    om = qd.nonlinear_weights((5.0, 0.1, 7.0), (1.0, 0.0, 0.0))
    assert om == (1.0, 0.0, 0.0)


def test_nonlinear_weights_convexity(rng):
    for _ in range(50):
        si = rng.uniform(0, 10, size=3)
        d = qd.linear_weights(float(rng.uniform(0.01, 20)))
        om = qd.nonlinear_weights(tuple(si), d)
        assert abs(sum(om) - 1) < 1e-13
        assert all(0 <= w <= 1 for w in om)


def test_weno_constant_window_exact():
    for nu in NU_SET:
        J, si0, si2 = qd.weno_local_integral([1.0] * 6, nu)
        assert J == pytest.approx(-np.expm1(-nu), rel=1e-13)
        assert si0 == 0.0 and si2 == 0.0


def test_weno_matches_linear_on_smooth_quintic(rng):
    nu = 0.9
    coefs = rng.uniform(-1, 1, size=6)
    # smooth, slowly varying data: quintic sampled at dx-scaled offsets
    dx = 0.02
    poly = np.polynomial.Polynomial(coefs)
    win = window_values(lambda s: poly(float(s) * dx))
    J_w, _, _ = qd.weno_local_integral(win, nu)
    J_l = float(qd.linear_integrals([np.float64(w) for w in win], nu))
    assert J_w == pytest.approx(J_l, rel=1e-8, abs=1e-12)


def test_right_orientation_mirrors_left(rng):
    # the right-side integral at node i is the left rule fed with the window
    # reflected about x_i: offsets (+3..-2) instead of (-3..+2)
    from advdiff import Boundary, KernelParams, Side, build_grid_1d, local_integrals
    nu = 1.3
    grid = build_grid_1d(0.0, 1.0, 24)
    p = KernelParams.from_alpha(nu / grid.dx, grid)
    v = rng.uniform(-1, 1, size=25)
    JR, _, _ = local_integrals(v, p, Side.RIGHT, qd.WENO5, Boundary.PERIODIC)
    for i in (5, 12, 20):
        mirrored = [v[i + 3], v[i + 2], v[i + 1], v[i], v[i - 1], v[i - 2]]
        J_mirror, _, _ = qd.weno_local_integral(mirrored, nu)
        assert JR[i] == pytest.approx(J_mirror, rel=1e-13)
