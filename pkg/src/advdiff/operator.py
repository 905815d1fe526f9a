"""Assembly of the discrete spatial operator H[u] ~ -f(u)_x + g(u)_xx.

With wave-speed bounds c = max|f'| and b = max|g'|, the kernel parameters are

    alpha_L = alpha_R = beta/(c dt),     alpha_0 = sqrt(beta/(b dt)),

and H combines the filtered convection chains with the diffusion chain:

    H = -alpha_L * (D_L[f+] + sum_{p=2..k} sigma_L^{p-1} D_L^p[f+])
        + alpha_R * (D_R[f-] + sum_{p=2..k} sigma_R^{p-1} D_R^p[f-])
        - alpha_0^2 * sum_{p=1..k} D_0^p[g(u)],

f± = (f(u) ± c u)/2 being the Lax-Friedrichs split.  At k = 3 an extra
correction term alpha_L * D_0[D_L^2[f+] - D_L^2[f-]] (same alpha_L family,
linear quadrature) restores A-stability of the convection part.  Blocks whose
wave-speed bound vanishes are skipped.

Everything operates on arrays along the last axis; the 2D operator runs the
same assembly per axis on batched lines and sums the results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEGENERATE_TOL, Grid1D, Grid2D, ProblemSpec, SchemeConfig, WaveBounds
from .filtering import sigma_fields, xi
from .kernelops import KernelParams, _Family, _d_pair, _d_zero, d_chain_pair, d_chain_zero
from .quadrature import LINEAR6


@dataclass
class SplitFlux:
    fplus: np.ndarray
    fminus: np.ndarray
    c: float


def flux_split(problem: ProblemSpec, u: np.ndarray, bounds: WaveBounds) -> SplitFlux:
    """Lax-Friedrichs split f± = (f(u) ± c u)/2, so f+ + f- = f(u) with
    df+/du >= 0 and df-/du <= 0 over the bounded range."""
    f = problem.flux(u)
    cu = bounds.c * u
    return SplitFlux(fplus=0.5 * (f + cu), fminus=0.5 * (f - cu), c=bounds.c)


def _convection(u, problem, config, bounds, dt, grid, bc):
    k = config.order
    split = flux_split(problem, u, bounds)
    params = KernelParams.from_alpha(config.beta / (bounds.c * dt), grid)
    chain_l, chain_r, si_l, si_r = d_chain_pair(
        split.fplus, split.fminus, params, bc, k, mode_first=config.quadrature)
    if config.filter_enabled and k >= 2 and si_l is not None:
        sig_l, sig_r = sigma_fields(xi(*si_l), xi(*si_r), bc)
    else:
        sig_l = sig_r = None
    h = -chain_l[0]
    for p in range(2, k + 1):
        term = chain_l[p - 1]
        h = h - (sig_l ** (p - 1) * term if sig_l is not None else term)
    h = h + chain_r[0]
    for p in range(2, k + 1):
        term = chain_r[p - 1]
        h = h + (sig_r ** (p - 1) * term if sig_r is not None else term)
    if k == 3 and config.cross_term_k3:
        fam = _Family(params, u.shape[-1] - 1)
        # extra left chain on f-, paired with a right chain on f+ so the
        # homogeneous closure stays well-posed; periodic closures ignore the pair
        lm, rp, _, _ = _d_pair(split.fminus, split.fplus, fam, bc, LINEAR6)
        lm2, _, _, _ = _d_pair(lm, rp, fam, bc, LINEAR6)
        correction, _ = _d_zero(chain_l[1] - lm2, fam, bc, LINEAR6)
        h = h + correction
    return params.alpha * h


def _diffusion(u, problem, config, bounds, dt, grid, bc):
    params = KernelParams.from_alpha(np.sqrt(config.beta / (bounds.b_diff * dt)), grid)
    chain, _ = d_chain_zero(problem.diffusion(u), params, bc, config.order,
                            mode_first=config.quadrature)
    return -params.alpha ** 2 * sum(chain)


def build_H(u: np.ndarray, problem: ProblemSpec, config: SchemeConfig,
            bounds: WaveBounds, dt: float, grid: Grid1D) -> np.ndarray:
    """Spatial operator for one stage; pure in u."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    h = np.zeros_like(u)
    if bounds.c > DEGENERATE_TOL:
        h = h + _convection(u, problem, config, bounds, dt, grid, problem.bc)
    if bounds.b_diff > DEGENERATE_TOL:
        h = h + _diffusion(u, problem, config, bounds, dt, grid, problem.bc)
    return h


def build_H_2d(u: np.ndarray, problem2d, config: SchemeConfig,
               bounds_x: WaveBounds, bounds_y: WaveBounds,
               dt: float, grid: Grid2D) -> np.ndarray:
    """Dimension-by-dimension operator on a (ny+1, nx+1) field.

    x-sweeps treat rows as a batch; y-sweeps run on the transposed field.
    Both are evaluated from the same input field and summed.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    px, py = problem2d.x_problem(), problem2d.y_problem()
    h = np.zeros_like(u)
    if bounds_x.c > DEGENERATE_TOL:
        h = h + _convection(u, px, config, bounds_x, dt, grid.gx, px.bc)
    if bounds_x.b_diff > DEGENERATE_TOL:
        h = h + _diffusion(u, px, config, bounds_x, dt, grid.gx, px.bc)
    if bounds_y.c > DEGENERATE_TOL or bounds_y.b_diff > DEGENERATE_TOL:
        ut = np.ascontiguousarray(u.T)
        ht = np.zeros_like(ut)
        if bounds_y.c > DEGENERATE_TOL:
            ht = ht + _convection(ut, py, config, bounds_y, dt, grid.gy, py.bc)
        if bounds_y.b_diff > DEGENERATE_TOL:
            ht = ht + _diffusion(ut, py, config, bounds_y, dt, grid.gy, py.bc)
        h = h + ht.T
    return h
