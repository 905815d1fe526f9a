"""Grids, problem descriptions, scheme configuration and time-step selection.

The solver works on uniform node grids: [a, b] split into N cells gives N+1
nodes x_i = a + i*dx.  A problem is the scalar conservation-diffusion law

    u_t + f(u)_x = g(u)_xx,        g'(u) >= 0 (degeneracy allowed),

with either periodic boundary conditions or the special homogeneous regime
(all spatial derivatives vanish at both ends; satisfied by data that is
constant near the boundary).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

#: samples used when bounding |f'| and |g'| over the solution range
BOUND_SAMPLES = 2048

#: below this, an advection/diffusion block is considered absent
DEGENERATE_TOL = 1e-14


class Boundary(enum.Enum):
    PERIODIC = "periodic"
    HOMOGENEOUS = "homogeneous"


@dataclass(frozen=True)
class Grid1D:
    a: float
    b: float
    n_cells: int
    dx: float
    nodes: np.ndarray

    def __len__(self):
        return self.n_cells + 1


@dataclass(frozen=True)
class Grid2D:
    gx: Grid1D
    gy: Grid1D


def build_grid_1d(a: float, b: float, n_cells: int) -> Grid1D:
    """Uniform grid of n_cells cells (n_cells+1 nodes) on [a, b]."""
    if not b > a:
        raise ValueError(f"need b > a, got [{a}, {b}]")
    if n_cells < 6:
        raise ValueError(f"need at least 6 cells for the quadrature stencil, got {n_cells}")
    dx = (b - a) / n_cells
    nodes = a + dx * np.arange(n_cells + 1)
    return Grid1D(a=float(a), b=float(b), n_cells=int(n_cells), dx=float(dx), nodes=nodes)


def build_grid_2d(ax: float, bx: float, nx: int, ay: float, by: float, ny: int) -> Grid2D:
    return Grid2D(gx=build_grid_1d(ax, bx, nx), gy=build_grid_1d(ay, by, ny))


@dataclass
class ProblemSpec:
    """Scalar 1D problem u_t + f(u)_x = g(u)_xx."""

    flux: Callable[[np.ndarray], np.ndarray]
    flux_deriv: Callable[[np.ndarray], np.ndarray]
    diffusion: Callable[[np.ndarray], np.ndarray]
    diffusion_deriv: Callable[[np.ndarray], np.ndarray]
    initial: Callable[[np.ndarray], np.ndarray]
    bc: Boundary = Boundary.PERIODIC
    exact: Optional[Callable[[np.ndarray, float], np.ndarray]] = None


@dataclass
class SchemeConfig:
    """Scheme parameters: truncation order k, stabilization beta, CFL, quadrature.

    cross_term_k3 activates the extra fourth-derivative correction that makes
    the k=3 convection operator A-stable; it only applies at order 3.
    """

    order: int = 3
    beta: float = 0.4
    cfl: float = 0.5
    quadrature: str = "weno5"  # "weno5" or "linear6"
    filter_enabled: bool = True
    cross_term_k3: bool = True

    def __post_init__(self):
        if self.order not in (1, 2, 3):
            raise ValueError(f"order must be 1, 2 or 3, got {self.order}")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.cfl <= 0:
            raise ValueError("cfl must be positive")
        if self.quadrature not in ("weno5", "linear6"):
            raise ValueError(f"unknown quadrature {self.quadrature!r}")
        if self.order < 3:
            self.cross_term_k3 = False


@dataclass
class SolutionField:
    values: np.ndarray
    time: float = 0.0

    def copy(self) -> "SolutionField":
        return SolutionField(values=self.values.copy(), time=self.time)


@dataclass(frozen=True)
class WaveBounds:
    c: float       # max |f'(u)| over the sampled range
    b_diff: float  # max |g'(u)| over the sampled range


def compute_bounds(problem: ProblemSpec, u: SolutionField | np.ndarray) -> WaveBounds:
    """Bound |f'| and |g'| by dense sampling over the current solution range.

    The range [min u, max u] is widened by 1e-6*(range+1) so endpoint extrema
    are not missed, then sampled at BOUND_SAMPLES points.
    """
    values = u.values if isinstance(u, SolutionField) else np.asarray(u)
    if values.size == 0:
        raise ValueError("empty solution field")
    lo, hi = float(np.min(values)), float(np.max(values))
    delta = 1e-6 * ((hi - lo) + 1.0)
    samples = np.linspace(lo - delta, hi + delta, BOUND_SAMPLES)
    fp = np.abs(np.asarray(problem.flux_deriv(samples), dtype=float))
    gp = np.asarray(problem.diffusion_deriv(samples), dtype=float)
    if not (np.all(np.isfinite(fp)) and np.all(np.isfinite(gp))):
        raise ValueError("non-finite derivative samples while bounding wave speeds")
    if np.min(gp) < -1e-12 * max(1.0, float(np.max(np.abs(gp)))):
        raise ValueError("diffusion derivative must be nonnegative over the solution range")
    return WaveBounds(c=float(np.max(fp)), b_diff=float(np.max(gp)))


def compute_dt(config: SchemeConfig, bounds: WaveBounds, grid: Grid1D | Grid2D) -> float:
    """Nominal time step; the integrator truncates the final step to land on T.

    1D:  dt = CFL * dx / (b + c)
    2D:  dt = CFL / max((b_x+c_x)/dx, (b_y+c_y)/dy), bounds given per axis as
         a (WaveBounds, WaveBounds) pair.
    """
    if isinstance(grid, Grid2D):
        bx, by = bounds  # type: ignore[misc]
        sx = (bx.b_diff + bx.c) / grid.gx.dx
        sy = (by.b_diff + by.c) / grid.gy.dx
        if max(sx, sy) <= 0:
            raise ValueError("both wave-speed bounds vanish; nothing to evolve")
        return config.cfl / max(sx, sy)
    total = bounds.b_diff + bounds.c
    if total <= 0:
        raise ValueError("both wave-speed bounds vanish; nothing to evolve")
    return config.cfl * grid.dx / total
