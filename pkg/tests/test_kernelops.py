import numpy as np
import pytest

from advdiff import (Boundary, KernelParams, Side, apply_D,
                     apply_D_power_chain, apply_L_inverse, build_grid_1d,
                     compose_I0, convolve, local_integrals, sweep_left,
                     sweep_right)
from advdiff.kernelops import BoundaryData, boundary_coefficients, d_chain_pair
from advdiff.quadrature import LINEAR6, WENO5
from conftest import direct_sweep_left, direct_sweep_right, exp_cell_integral

PER = Boundary.PERIODIC
HOM = Boundary.HOMOGENEOUS


def params_for(alpha, grid):
    return KernelParams.from_alpha(alpha, grid)


def test_sweep_left_small_example():
    # decay factor 0.5 corresponds to nu = ln 2
    p = KernelParams(alpha=np.log(2.0), nu=np.log(2.0), mu=0.125)
    J = np.array([np.nan, 0.5, 0.5, 0.5])
    J[0] = 0.0
    I = sweep_left(J, p)
    assert np.allclose(I, [0.0, 0.5, 0.75, 0.875], rtol=1e-14)


def test_sweep_geometric_series_matches_analytic():
    grid = build_grid_1d(0.0, 2.0, 64)
    p = params_for(3.0, grid)
    J = np.full(65, -np.expm1(-p.nu))  # local integrals of v = 1
    J[0] = 0.0
    I = sweep_left(J, p)
    i = np.arange(65)
    assert np.allclose(I, 1 - np.exp(-i * p.nu), atol=1e-14)
    Jr = np.full(65, -np.expm1(-p.nu))
    Jr[-1] = 0.0
    Ir = sweep_right(Jr, p)
    assert np.allclose(Ir, 1 - np.exp(-(64 - i) * p.nu), atol=1e-14)


def test_sweep_zero_input():
    grid = build_grid_1d(0, 1, 16)
    p = params_for(1.0, grid)
    assert np.all(sweep_left(np.zeros(17), p) == 0)
    assert np.all(sweep_right(np.zeros(17), p) == 0)


@pytest.mark.parametrize("nu", [1e-3, 0.05, 0.7, 4.0, 50.0])
def test_sweeps_match_direct_summation(nu, rng):
    n = 257
    grid = build_grid_1d(0.0, 1.0, n)
    p = KernelParams(alpha=nu / grid.dx, nu=nu, mu=float(np.exp(-nu * n)))
    J = rng.standard_normal(n + 1)
    q = np.exp(-nu)
    JL = J.copy(); JL[0] = 0.0
    assert np.max(np.abs(sweep_left(JL, p) - direct_sweep_left(JL, q))) <= 1e-12 * n
    JR = J.copy(); JR[-1] = 0.0
    assert np.max(np.abs(sweep_right(JR, p) - direct_sweep_right(JR, q))) <= 1e-12 * n


def test_local_integrals_constant():
    grid = build_grid_1d(-1.0, 1.0, 32)
    p = params_for(2.5, grid)
    v = np.ones(33)
    for mode in (WENO5, LINEAR6):
        J, _, _ = local_integrals(v, p, Side.LEFT, mode, PER)
        assert np.allclose(J[1:], -np.expm1(-p.nu), rtol=1e-13)
        Jr, _, _ = local_integrals(v, p, Side.RIGHT, mode, PER)
        assert np.allclose(Jr[:-1], -np.expm1(-p.nu), rtol=1e-13)


def test_local_integrals_linear_data_vs_quadrature_oracle():
    grid = build_grid_1d(0.0, 1.0, 50)
    p = params_for(12.0, grid)
    v = 2.0 * grid.nodes - 0.3
    # interior nodes only: near the ends the replicate extension kinks the data
    J, _, _ = local_integrals(v, p, Side.LEFT, LINEAR6, HOM)
    for i in (5, 20, 47):
        # normalized cell coordinates: value at s is v(x_i - s dx)
        xi = grid.nodes[i]
        exact = exp_cell_integral(lambda s: 2.0 * (xi - float(s) * grid.dx) - 0.3, p.nu)
        assert J[i] == pytest.approx(exact, rel=1e-12)
    Jr, _, _ = local_integrals(v, p, Side.RIGHT, LINEAR6, HOM)
    for i in (5, 20, 30):
        xi = grid.nodes[i]
        exact = exp_cell_integral(lambda s: 2.0 * (xi + float(s) * grid.dx) - 0.3, p.nu)
        assert Jr[i] == pytest.approx(exact, rel=1e-12)


def test_local_integrals_zero():
    grid = build_grid_1d(0, 1, 16)
    p = params_for(1.0, grid)
    J, _, _ = local_integrals(np.zeros(17), p, Side.LEFT, WENO5, PER)
    assert np.all(J == 0)


def test_compose_I0():
    IL = np.array([0.0, 1.0, 2.0])
    assert np.all(compose_I0(IL, IL) == IL)
    assert np.all(compose_I0(np.zeros(3), np.zeros(3)) == 0)
    with pytest.raises(ValueError):
        compose_I0(IL, np.zeros(4))


def test_constant_convolution_closed_form():
    grid = build_grid_1d(-2.0, 2.0, 64)
    p = params_for(1.7, grid)
    res = convolve(np.ones(65), p, Side.ZERO, LINEAR6, PER)
    i = np.arange(65)
    expected = 1 - 0.5 * np.exp(-i * p.nu) - 0.5 * np.exp(-(64 - i) * p.nu)
    assert np.allclose(res.I, expected, atol=1e-13)


def test_boundary_coefficients_periodic_constant():
    grid = build_grid_1d(0.0, 1.0, 40)
    p = params_for(2.0, grid)
    res = convolve(np.ones(41), p, Side.ZERO, LINEAR6, PER)
    a0, b0 = boundary_coefficients(Side.ZERO, PER, BoundaryData(),
                                   res.I[0], res.I[-1], p.mu)
    assert a0 == pytest.approx(0.5, rel=1e-12)
    assert b0 == pytest.approx(0.5, rel=1e-12)


def test_boundary_coefficients_homogeneous_constant():
    grid = build_grid_1d(0.0, 1.0, 40)
    p = params_for(2.0, grid)
    res = convolve(np.ones(41), p, Side.ZERO, LINEAR6, HOM)
    data = BoundaryData(v1_a=1.0, v1_b=1.0)
    a0, b0 = boundary_coefficients(Side.ZERO, HOM, data, res.I[0], res.I[-1], p.mu)
    assert a0 == pytest.approx(0.5, rel=1e-12)
    assert b0 == pytest.approx(0.5, rel=1e-12)


def test_boundary_coefficients_zero_data():
    vals = boundary_coefficients(Side.ZERO, PER, BoundaryData(), 0.0, 0.0, 0.3)
    assert vals == (0.0, 0.0)
    with pytest.raises(ValueError):
        boundary_coefficients(Side.ZERO, PER, BoundaryData(), 0.0, 0.0, 1.0)


@pytest.mark.parametrize("side", [Side.ZERO, Side.LEFT, Side.RIGHT])
@pytest.mark.parametrize("bc", [PER, HOM])
def test_L_inverse_fixes_constants(side, bc):
    if side is not Side.ZERO and bc is HOM:
        partner = np.ones(49)
    else:
        partner = None
    grid = build_grid_1d(-1.0, 3.0, 48)
    p = params_for(2.2, grid)
    w = apply_L_inverse(side, np.ones(49), p, bc, LINEAR6, partner=partner)
    assert np.allclose(w, 1.0, atol=1e-12)
    assert np.allclose(apply_L_inverse(side, np.zeros(49), p, bc, LINEAR6), 0.0)


@pytest.mark.parametrize("side", [Side.ZERO, Side.LEFT, Side.RIGHT])
def test_D_annihilates_constants_periodic(side):
    grid = build_grid_1d(0.0, 1.0, 40)
    p = params_for(3.0, grid)
    d = apply_D(side, np.full(41, 2.5), p, PER, WENO5)
    assert np.max(np.abs(d)) < 1e-12


def test_D_zero_fourier_mode():
    # D0 acting on sin(x) with alpha = 2 scales it by (1/4)/(1+1/4) = 0.2
    grid = build_grid_1d(-np.pi, np.pi, 256)
    p = params_for(2.0, grid)
    v = np.sin(grid.nodes)
    d = apply_D(Side.ZERO, v, p, PER, LINEAR6)
    assert np.max(np.abs(d - 0.2 * v)) < 1e-8


def test_D_zero_homogeneous_constant():
    grid = build_grid_1d(0.0, 1.0, 40)
    p = params_for(3.0, grid)
    d = apply_D(Side.ZERO, np.ones(41), p, HOM, WENO5)
    assert np.max(np.abs(d)) < 1e-12


def test_power_chain_constants_and_k1():
    grid = build_grid_1d(0.0, 2.0, 32)
    p = params_for(1.5, grid)
    powers, _ = apply_D_power_chain(Side.ZERO, np.full(33, 4.0), p, PER, 3, WENO5)
    for d in powers:
        assert np.max(np.abs(d)) < 1e-11
    v = np.sin(np.pi * np.linspace(0, 2, 33))
    one, _ = apply_D_power_chain(Side.LEFT, v, p, PER, 1, LINEAR6)
    direct = apply_D(Side.LEFT, v, p, PER, LINEAR6)
    assert np.array_equal(one[0], direct)


def test_power_chain_fourier_symbol_powers():
    grid = build_grid_1d(-np.pi, np.pi, 512)
    p = params_for(2.0, grid)
    v = np.sin(grid.nodes)
    powers, _ = apply_D_power_chain(Side.ZERO, v, p, PER, 3, LINEAR6)
    for k, d in enumerate(powers, start=1):
        assert np.max(np.abs(d - 0.2 ** k * v)) < 1e-8


def test_integration_by_parts_identity():
    # for smooth periodic v: D0[v] + (1/alpha^2) L0^{-1}[v_xx] = 0
    grid = build_grid_1d(-np.pi, np.pi, 512)
    v = np.sin(grid.nodes) + 0.3 * np.cos(2 * grid.nodes)
    vxx = -np.sin(grid.nodes) - 1.2 * np.cos(2 * grid.nodes)
    for alpha in (1.0, 5.0, 20.0):
        p = params_for(alpha, grid)
        d = apply_D(Side.ZERO, v, p, PER, LINEAR6)
        w = apply_L_inverse(Side.ZERO, vxx, p, PER, LINEAR6)
        assert np.max(np.abs(d + w / alpha ** 2)) < 1e-9


def test_periodicity_preserved_at_ends(rng):
    n = 128
    grid = build_grid_1d(-np.pi, np.pi, n)
    modes = rng.standard_normal(5)
    v = sum(a * np.sin((j + 1) * grid.nodes) for j, a in enumerate(modes))
    p = params_for(4.0, grid)
    for side in (Side.ZERO, Side.LEFT, Side.RIGHT):
        d = apply_D(side, v, p, PER, WENO5)
        assert d[0] == pytest.approx(d[-1], abs=1e-12)


def test_homogeneous_closures_vanish_at_ends(rng):
    n = 200
    grid = build_grid_1d(-2.0, 2.0, n)
    v = np.exp(-4 * grid.nodes ** 2)
    w = np.where(np.abs(grid.nodes) < 1, (1 - grid.nodes ** 2) ** 2, 0.0)
    p = params_for(7.0, grid)
    powers, _ = apply_D_power_chain(Side.ZERO, v, p, HOM, 3, WENO5)
    for d in powers:
        assert abs(d[0]) < 1e-12 and abs(d[-1]) < 1e-12
    pl, pr, _, _ = d_chain_pair(v, w, p, HOM, 3, WENO5)
    for dl, dr in zip(pl, pr):
        assert abs(dl[0] - dr[0]) < 1e-12
        assert abs(dl[-1] - dr[-1]) < 1e-12


def test_truncation_scaling_first_order():
    # residual of the k=1 partial sum decays like alpha^-2 (symmetric family)
    # and alpha^-1 (one-sided); higher orders are covered by the acceptance suite
    grid = build_grid_1d(-np.pi, np.pi, 1024)
    v = np.sin(grid.nodes)
    errs0, errsL = [], []
    alphas = (20.0, 40.0, 80.0)
    for alpha in alphas:
        p = params_for(alpha, grid)
        d0 = apply_D(Side.ZERO, v, p, PER, LINEAR6)
        errs0.append(np.max(np.abs(-v + alpha ** 2 * d0)))
        dl = apply_D(Side.LEFT, v, p, PER, LINEAR6)
        errsL.append(np.max(np.abs(np.cos(grid.nodes) - alpha * dl)))
    s0 = np.polyfit(np.log(alphas), np.log(errs0), 1)[0]
    sL = np.polyfit(np.log(alphas), np.log(errsL), 1)[0]
    assert s0 == pytest.approx(-2.0, abs=0.1)
    assert sL == pytest.approx(-1.0, abs=0.1)


def test_batched_inputs_match_rowwise(rng):
    grid = build_grid_1d(0.0, 1.0, 48)
    p = params_for(5.0, grid)
    batch = rng.standard_normal((4, 49))
    stacked = apply_D(Side.ZERO, batch, p, PER, WENO5)
    for row in range(4):
        single = apply_D(Side.ZERO, batch[row], p, PER, WENO5)
        assert np.array_equal(stacked[row], single)


@pytest.mark.parametrize("bc", [PER, HOM])
def test_L_inverse_property_zero_family(bc, rng):
    # w = L0^{-1}[v] must satisfy w - w''/alpha^2 = v at interior nodes for
    # any closure (the closure terms solve the homogeneous equation exactly);
    # w'' from 4th-order centered differences
    n = 512
    grid = build_grid_1d(-np.pi, np.pi, n)
    alpha = 4.0
    p = params_for(alpha, grid)
    v = np.exp(-2 * grid.nodes ** 2) * (1 + 0.3 * np.sin(3 * grid.nodes))
    w = apply_L_inverse(Side.ZERO, v, p, bc, LINEAR6)
    dx = grid.dx
    wxx = (-w[:-4] + 16 * w[1:-3] - 30 * w[2:-2] + 16 * w[3:-1] - w[4:]) / (12 * dx ** 2)
    residual = w[2:-2] - wxx / alpha ** 2 - v[2:-2]
    assert np.max(np.abs(residual)) < 1e-6


@pytest.mark.parametrize("side", [Side.LEFT, Side.RIGHT])
def test_L_inverse_property_one_sided(side, rng):
    # L_L w = w + w'/alpha = v (and the mirrored relation for the right family)
    n = 512
    grid = build_grid_1d(-np.pi, np.pi, n)
    alpha = 4.0
    p = params_for(alpha, grid)
    v = np.sin(grid.nodes) + 0.4 * np.cos(2 * grid.nodes)
    w = apply_L_inverse(side, v, p, PER, LINEAR6)
    dx = grid.dx
    wx = (w[:-4] - 8 * w[1:-3] + 8 * w[3:-1] - w[4:]) / (12 * dx)
    sign = 1.0 if side is Side.LEFT else -1.0
    residual = w[2:-2] + sign * wx / alpha - v[2:-2]
    assert np.max(np.abs(residual)) < 1e-6
