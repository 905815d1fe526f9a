"""Oscillation filter for the high-order convection terms.

From the smoothness pair (SI0, SI2) of a WENO pass, tau = |SI0 - SI2| is a
seventh-order quantity on smooth data but O(SI) at a jump, so

    xi = (1 + tau^2/(SImax + eps)^2) / (1 + tau^2/(SImin + eps)^2)

is 1 + O(dx^6) in smooth regions and small near discontinuities.  Per-node
damping factors sigma are pairwise minima of neighboring xi; the convection
partial sums scale their p-th term by sigma^(p-1) (diffusion terms are left
alone).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Boundary
from .quadrature import WENO_EPSILON


@dataclass
class FilterField:
    xi: np.ndarray
    sigma_left: np.ndarray
    sigma_right: np.ndarray
    epsilon: float = WENO_EPSILON


def xi(si0, si2, epsilon: float = WENO_EPSILON):
    """Smoothness ratio in (0, 1]; equals 1 when SI0 == SI2."""
    tau = np.abs(si0 - si2)
    si_max = np.maximum(si0, si2)
    si_min = np.minimum(si0, si2)
    return (1.0 + (tau / (si_max + epsilon)) ** 2) / (1.0 + (tau / (si_min + epsilon)) ** 2)


def _shift_next(a: np.ndarray, bc: Boundary) -> np.ndarray:
    if bc is Boundary.PERIODIC:
        return np.roll(a, -1, axis=-1)
    return np.concatenate([a[..., 1:], a[..., -1:]], axis=-1)


def _shift_prev(a: np.ndarray, bc: Boundary) -> np.ndarray:
    if bc is Boundary.PERIODIC:
        return np.roll(a, 1, axis=-1)
    return np.concatenate([a[..., :1], a[..., :-1]], axis=-1)


def sigma_fields(xi_left: np.ndarray, xi_right: np.ndarray, bc: Boundary):
    """Damping factors: sigma_L,i = min(xi_i, xi_{i+1}) from the left-pass xi,
    sigma_R,i = min(xi_{i-1}, xi_i) from the right-pass xi."""
    sig_l = np.minimum(xi_left, _shift_next(xi_left, bc))
    sig_r = np.minimum(_shift_prev(xi_right, bc), xi_right)
    return sig_l, sig_r
