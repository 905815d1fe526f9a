"""Explicit SSP Runge-Kutta time integration of u_t = H[u].

The kernel parameters inside H depend on the step size, so H is rebuilt for
every step (including the truncated final step).  Stage combinations are the
classic convex forms:

    k=1:  u + dt H[u]
    k=2:  u1 = u + dt H[u];  u <- u/2 + (u1 + dt H[u1])/2
    k=3:  u1 = u + dt H[u];  u2 = 3u/4 + (u1 + dt H[u1])/4;
          u <- u/3 + 2*(u2 + dt H[u2])/3
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .core import (Grid1D, ProblemSpec, SchemeConfig, SolutionField,
                   compute_bounds, compute_dt)
from .operator import build_H

#: relative slack when deciding whether the target time is reached
TIME_TOL = 1e-12


class UnstableSolution(RuntimeError):
    """Raised when a stage produces non-finite values."""


def rk_step(u: SolutionField, dt: float, order: int,
            H: Callable[[np.ndarray], np.ndarray]) -> SolutionField:
    """One SSP-RK step of the given order with operator handle H."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    v = u.values
    if order == 1:
        out = v + dt * H(v)
    elif order == 2:
        v1 = v + dt * H(v)
        out = 0.5 * v + 0.5 * (v1 + dt * H(v1))
    elif order == 3:
        v1 = v + dt * H(v)
        v2 = 0.75 * v + 0.25 * (v1 + dt * H(v1))
        out = v / 3.0 + (2.0 / 3.0) * (v2 + dt * H(v2))
    else:
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    if not np.all(np.isfinite(out)):
        raise UnstableSolution(
            f"non-finite values after step to t={u.time + dt:g} (dt={dt:g})")
    return SolutionField(values=out, time=u.time + dt)


def advance(u0: SolutionField, T: float, problem: ProblemSpec,
            config: SchemeConfig, grid: Grid1D,
            snapshot_times: Optional[Sequence[float]] = None):
    """March u0 to time T: each step recomputes bounds, picks dt, truncates to
    land exactly on T (and on any requested snapshot times).

    Returns the final field, or (final, snapshots) when snapshot_times is
    given; snapshots maps each requested time to a SolutionField.
    """
    if T < u0.time:
        raise ValueError("target time lies before the field's time")
    marks = sorted(t for t in (snapshot_times or []) if u0.time < t <= T)
    snaps = {}
    u = u0.copy()
    tol = TIME_TOL * max(1.0, abs(T))
    while u.time < T - tol:
        bounds = compute_bounds(problem, u)
        dt = compute_dt(config, bounds, grid)
        limit = marks[0] if marks else T
        dt = min(dt, limit - u.time)
        u = rk_step(u, dt, config.order,
                    lambda v: build_H(v, problem, config, bounds, dt, grid))
        if marks and u.time >= marks[0] - tol:
            snaps[marks.pop(0)] = u.copy()
    if snapshot_times is not None:
        return u, snaps
    return u
