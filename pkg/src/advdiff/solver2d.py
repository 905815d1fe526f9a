"""Two-dimensional driver: dimension-by-dimension sweeps with SSP-RK stepping.

A 2D problem u_t + f1(u)_x + f2(u)_y = g1(u)_xx + g2(u)_yy is advanced by
applying the 1D operator along every grid line of each axis (batched), with
per-axis wave-speed bounds and kernel parameters.  The stability parameter
beta should be half its 1D value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (Boundary, Grid2D, ProblemSpec, SchemeConfig, SolutionField,
                   compute_bounds, compute_dt)
from .operator import build_H_2d
from .timestep import TIME_TOL, UnstableSolution


@dataclass
class ProblemSpec2D:
    """Axis fluxes/diffusions with derivatives, initial data u0(x, y)."""

    f1: Callable
    f1_deriv: Callable
    g1: Callable
    g1_deriv: Callable
    f2: Callable
    f2_deriv: Callable
    g2: Callable
    g2_deriv: Callable
    initial: Callable[[np.ndarray, np.ndarray], np.ndarray]
    bc: Boundary = Boundary.PERIODIC

    def x_problem(self) -> ProblemSpec:
        return ProblemSpec(flux=self.f1, flux_deriv=self.f1_deriv,
                           diffusion=self.g1, diffusion_deriv=self.g1_deriv,
                           initial=lambda x: x, bc=self.bc)

    def y_problem(self) -> ProblemSpec:
        return ProblemSpec(flux=self.f2, flux_deriv=self.f2_deriv,
                           diffusion=self.g2, diffusion_deriv=self.g2_deriv,
                           initial=lambda y: y, bc=self.bc)


def compute_bounds_2d(problem: ProblemSpec2D, u: np.ndarray):
    bx = compute_bounds(problem.x_problem(), u)
    by = compute_bounds(problem.y_problem(), u)
    return bx, by


def initial_field_2d(problem: ProblemSpec2D, grid: Grid2D, t0: float = 0.0) -> SolutionField:
    """Sample u0 on the tensor grid as a (ny+1, nx+1) field."""
    X, Y = np.meshgrid(grid.gx.nodes, grid.gy.nodes)
    return SolutionField(values=np.asarray(problem.initial(X, Y), dtype=float), time=t0)


def advance_2d(u0: SolutionField, T: float, problem: ProblemSpec2D,
               config: SchemeConfig, grid: Grid2D) -> SolutionField:
    """March a (ny+1, nx+1) field to time T (same stepping policy as 1D)."""
    if T < u0.time:
        raise ValueError("target time lies before the field's time")
    u = u0.copy()
    tol = TIME_TOL * max(1.0, abs(T))
    while u.time < T - tol:
        bx, by = compute_bounds_2d(problem, u.values)
        dt = compute_dt(config, (bx, by), grid)
        dt = min(dt, T - u.time)
        H = lambda v: build_H_2d(v, problem, config, bx, by, dt, grid)
        v = u.values
        if config.order == 1:
            out = v + dt * H(v)
        elif config.order == 2:
            v1 = v + dt * H(v)
            out = 0.5 * v + 0.5 * (v1 + dt * H(v1))
        else:
            v1 = v + dt * H(v)
            v2 = 0.75 * v + 0.25 * (v1 + dt * H(v1))
            out = v / 3.0 + (2.0 / 3.0) * (v2 + dt * H(v2))
        if not np.all(np.isfinite(out)):
            raise UnstableSolution(f"non-finite values after 2D step to t={u.time + dt:g}")
        u = SolutionField(values=out, time=u.time + dt)
    return u
