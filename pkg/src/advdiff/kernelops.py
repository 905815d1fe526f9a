"""Exponential-kernel convolutions and the derivative operators built on them.

For a modified-Helmholtz-type operator L (one of the three families below),
the inverse is an exponential convolution plus homogeneous solutions, and

    D = I - L^{-1}

acts like a scaled derivative: truncated sums of powers of D approximate
d/dx (one-sided families) and d^2/dx^2 (symmetric family).

Convolutions are evaluated from per-cell local integrals J by the O(N)
recursions

    I^L_i = I^L_{i-1} e^{-nu} + J^L_i,   I^L_0 = 0,
    I^R_i = I^R_{i+1} e^{-nu} + J^R_i,   I^R_N = 0,

(implemented as a linear recurrence filter), and the symmetric convolution is
I^0 = (I^L + I^R)/2.  Boundary closures fix the homogeneous-solution
coefficients: periodic closures enforce end-value matching of D, while the
homogeneous regime enforces D_0 = 0 at both ends and closes the left/right
pair jointly so that the combination D_L[v1] - D_R[v2] vanishes at both ends.

All array operations act along the last axis, so a leading batch dimension
(used for 2D line sweeps) comes for free.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.signal import lfilter

from .core import Boundary, Grid1D
from . import quadrature
from .quadrature import LINEAR6, WENO5


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    ZERO = "zero"


@dataclass(frozen=True)
class KernelParams:
    """One convolution family: alpha, nu = alpha*dx, mu = e^{-alpha(b-a)}."""

    alpha: float
    nu: float
    mu: float

    @classmethod
    def from_alpha(cls, alpha: float, grid: Grid1D) -> "KernelParams":
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        nu = alpha * grid.dx
        return cls(alpha=float(alpha), nu=float(nu), mu=float(np.exp(-nu * grid.n_cells)))


@dataclass
class ConvolutionResult:
    """Convolution of one operand: global I, local J, and the smoothness pairs
    captured by the WENO pass (None in linear mode)."""

    I: np.ndarray
    J: np.ndarray
    si_left: Optional[tuple] = None
    si_right: Optional[tuple] = None


class _Family:
    """Cached per-(params, n_cells) sweep data: decay factor and edge profiles."""

    def __init__(self, params: KernelParams, n_cells: int):
        self.params = params
        self.nu = params.nu
        self.mu = params.mu
        self.q = np.exp(-params.nu)
        idx = np.arange(n_cells + 1)
        self.e_left = np.exp(-params.nu * idx)        # e^{-alpha (x_i - a)}
        self.e_right = self.e_left[::-1].copy()       # e^{-alpha (b - x_i)}


def _gather_windows(v: np.ndarray, bc: Boundary):
    """Six shifted views w_m = v_{i+m}, m = -3..2, wrapped or clamp-extended."""
    n = v.shape[-1] - 1
    base = np.arange(n + 1)
    out = []
    for m in range(-3, 3):
        idx = base + m
        if bc is Boundary.PERIODIC:
            idx = np.mod(idx, n)
        else:
            idx = np.clip(idx, 0, n)
        out.append(v[..., idx])
    return out


def local_integrals(v: np.ndarray, params: KernelParams, side: Side,
                    mode: str, bc: Boundary):
    """Per-cell local integrals J for one side; returns (J, si0, si2).

    side LEFT:  J_i over [x_{i-1}, x_i], anchored at x_i (entry 0 unused).
    side RIGHT: J_i over [x_i, x_{i+1}], anchored at x_i (entry N unused),
                computed as the left rule on the reversed data.
    si0/si2 are None in linear mode.
    """
    if side is Side.ZERO:
        raise ValueError("local integrals are one-sided; use LEFT or RIGHT")
    flip = side is Side.RIGHT
    data = v[..., ::-1] if flip else v
    win = _gather_windows(data, bc)
    if mode == WENO5:
        J, si0, si2 = quadrature.weno_integrals(win, params.nu)
    elif mode == LINEAR6:
        J = quadrature.linear_integrals(win, params.nu)
        si0 = si2 = None
    else:
        raise ValueError(f"unknown quadrature mode {mode!r}")
    if flip:
        J = J[..., ::-1]
        if si0 is not None:
            si0, si2 = si0[..., ::-1], si2[..., ::-1]
    return J, si0, si2


def sweep_left(J: np.ndarray, params: KernelParams) -> np.ndarray:
    """I_0 = 0; I_i = I_{i-1} e^{-nu} + J_i.  O(N) via a linear recurrence."""
    q = np.exp(-params.nu)
    I = np.empty_like(J, dtype=float)
    I[..., 0] = 0.0
    I[..., 1:] = lfilter([1.0], [1.0, -q], J[..., 1:], axis=-1)
    return I


def sweep_right(J: np.ndarray, params: KernelParams) -> np.ndarray:
    """I_N = 0; I_i = I_{i+1} e^{-nu} + J_i; mirror of sweep_left."""
    q = np.exp(-params.nu)
    I = np.empty_like(J, dtype=float)
    I[..., -1] = 0.0
    I[..., :-1] = lfilter([1.0], [1.0, -q], J[..., -2::-1], axis=-1)[..., ::-1]
    return I


def compose_I0(IL: np.ndarray, IR: np.ndarray) -> np.ndarray:
    if IL.shape != IR.shape:
        raise ValueError("left/right convolution length mismatch")
    return 0.5 * (IL + IR)


def convolve(v: np.ndarray, params: KernelParams, side: Side,
             mode: str = LINEAR6, bc: Boundary = Boundary.PERIODIC) -> ConvolutionResult:
    """Global convolution at the nodes (local integrals + recursive sweep)."""
    if side is Side.ZERO:
        JL, si0l, si2l = local_integrals(v, params, Side.LEFT, mode, bc)
        JR, si0r, si2r = local_integrals(v, params, Side.RIGHT, mode, bc)
        I = compose_I0(sweep_left(JL, params), sweep_right(JR, params))
        return ConvolutionResult(I=I, J=0.5 * (JL + JR),
                                 si_left=None if si0l is None else (si0l, si2l),
                                 si_right=None if si0r is None else (si0r, si2r))
    J, si0, si2 = local_integrals(v, params, side, mode, bc)
    I = sweep_left(J, params) if side is Side.LEFT else sweep_right(J, params)
    si = None if si0 is None else (si0, si2)
    return ConvolutionResult(I=I, J=J,
                             si_left=si if side is Side.LEFT else None,
                             si_right=si if side is Side.RIGHT else None)


@dataclass
class BoundaryData:
    """End values feeding a closure: operand v1 (left chain) and partner v2
    (right chain) at x=a and x=b.  Entries may be batch arrays."""

    v1_a: np.ndarray | float = 0.0
    v1_b: np.ndarray | float = 0.0
    v2_a: np.ndarray | float = 0.0
    v2_b: np.ndarray | float = 0.0


def boundary_coefficients(side: Side, bc: Boundary, data: BoundaryData,
                          i_at_a, i_at_b, mu: float):
    """Closure coefficients for one operator application.

    Periodic: A_0 = I0(b)/(1-mu), B_0 = I0(a)/(1-mu); one-sided closures take
    the analogous single coefficient.  Homogeneous: coefficients that zero
    D_0 at both ends (ZERO side) or zero D_L[v1] - D_R[v2] at both ends
    (coupled LEFT/RIGHT pair; returns (A_L, B_R)).
    """
    if not 0.0 <= mu < 1.0:
        raise ValueError(f"need 0 <= mu < 1, got {mu}")
    if bc is Boundary.PERIODIC:
        if side is Side.ZERO:
            return i_at_b / (1.0 - mu), i_at_a / (1.0 - mu)
        if side is Side.LEFT:
            return i_at_b / (1.0 - mu)
        return i_at_a / (1.0 - mu)
    one = 1.0 - mu ** 2
    if side is Side.ZERO:
        ea = i_at_a - data.v1_a
        eb = i_at_b - data.v1_b
        a0 = (mu * eb - ea) / one
        b0 = (mu * ea - eb) / one
        return a0, b0
    # coupled left/right closure; i_at_b = I^L[v1](b), i_at_a = I^R[v2](a)
    p = data.v2_b - data.v1_b + i_at_b
    q = data.v2_a - data.v1_a - i_at_a
    a_l = (mu * p - q) / one
    b_r = (p - mu * q) / one
    return a_l, b_r


def _d_zero(v, fam: _Family, bc: Boundary, mode: str):
    """One application of the symmetric-family D; returns (D[v], si pairs)."""
    params = fam.params
    JL, si0l, si2l = local_integrals(v, params, Side.LEFT, mode, bc)
    JR, si0r, si2r = local_integrals(v, params, Side.RIGHT, mode, bc)
    I0 = compose_I0(sweep_left(JL, params), sweep_right(JR, params))
    data = BoundaryData(v1_a=v[..., 0], v1_b=v[..., -1])
    a0, b0 = boundary_coefficients(Side.ZERO, bc, data, I0[..., 0], I0[..., -1], fam.mu)
    w = I0 + np.asarray(a0)[..., None] * fam.e_left + np.asarray(b0)[..., None] * fam.e_right
    si = None if si0l is None else ((si0l, si2l), (si0r, si2r))
    return v - w, si


def _d_pair(vl, vr, fam: _Family, bc: Boundary, mode: str):
    """One application of D_L to vl and D_R to vr.

    Periodic closures are independent; in the homogeneous regime the pair is
    closed jointly so D_L[vl] - D_R[vr] vanishes at both ends.
    Returns (D_L[vl], D_R[vr], si_left, si_right).
    """
    params = fam.params
    JL, si0l, si2l = local_integrals(vl, params, Side.LEFT, mode, bc)
    JR, si0r, si2r = local_integrals(vr, params, Side.RIGHT, mode, bc)
    IL = sweep_left(JL, params)
    IR = sweep_right(JR, params)
    if bc is Boundary.PERIODIC:
        a_l = boundary_coefficients(Side.LEFT, bc, BoundaryData(), IL[..., 0], IL[..., -1], fam.mu)
        b_r = boundary_coefficients(Side.RIGHT, bc, BoundaryData(), IR[..., 0], IR[..., -1], fam.mu)
    else:
        data = BoundaryData(v1_a=vl[..., 0], v1_b=vl[..., -1],
                            v2_a=vr[..., 0], v2_b=vr[..., -1])
        a_l, b_r = boundary_coefficients(Side.LEFT, bc, data, IR[..., 0], IL[..., -1], fam.mu)
    dl = vl - (IL + np.asarray(a_l)[..., None] * fam.e_left)
    dr = vr - (IR + np.asarray(b_r)[..., None] * fam.e_right)
    si_l = None if si0l is None else (si0l, si2l)
    si_r = None if si0r is None else (si0r, si2r)
    return dl, dr, si_l, si_r


def apply_L_inverse(side: Side, v: np.ndarray, params: KernelParams,
                    bc: Boundary, mode: str = LINEAR6,
                    partner: Optional[np.ndarray] = None) -> np.ndarray:
    """L^{-1}[v]: convolution plus closure terms.

    In the homogeneous regime the LEFT/RIGHT families need the partner
    operand of the opposite chain (defaults to zero data).
    """
    fam = _Family(params, v.shape[-1] - 1)
    if side is Side.ZERO:
        d, _ = _d_zero(v, fam, bc, mode)
        return v - d
    if partner is None:
        partner = np.zeros_like(v)
    if side is Side.LEFT:
        dl, _, _, _ = _d_pair(v, partner, fam, bc, mode)
        return v - dl
    _, dr, _, _ = _d_pair(partner, v, fam, bc, mode)
    return v - dr


def apply_D(side: Side, v: np.ndarray, params: KernelParams,
            bc: Boundary, mode: str = LINEAR6,
            partner: Optional[np.ndarray] = None) -> np.ndarray:
    """D[v] = v - L^{-1}[v]."""
    return v - apply_L_inverse(side, v, params, bc, mode, partner)


def apply_D_power_chain(side: Side, v: np.ndarray, params: KernelParams,
                        bc: Boundary, k: int, mode_first: str = WENO5,
                        partner: Optional[np.ndarray] = None):
    """All powers D^1[v] .. D^k[v], re-closing the boundary at every power.

    The first application uses `mode_first` (WENO by default, capturing
    smoothness data); higher powers always use the linear rule.  For the
    one-sided families under homogeneous closure the opposite chain runs on
    `partner` (zero data when omitted) so the coupled conditions are enforced
    at every power.  Returns (powers, si) where si is the smoothness pair of
    the first pass (None in linear mode).
    """
    if not 1 <= k <= 3:
        raise ValueError("power count k must be 1, 2 or 3")
    fam = _Family(params, v.shape[-1] - 1)
    powers = []
    si_first = None
    if side is Side.ZERO:
        cur = v
        for p in range(1, k + 1):
            cur, si = _d_zero(cur, fam, bc, LINEAR6 if p > 1 else mode_first)
            if p == 1:
                si_first = si
            powers.append(cur)
        return powers, si_first
    cur_main = v
    cur_partner = np.zeros_like(v) if partner is None else partner
    for p in range(1, k + 1):
        mode = LINEAR6 if p > 1 else mode_first
        if side is Side.LEFT:
            cur_main, cur_partner, si, _ = _d_pair(cur_main, cur_partner, fam, bc, mode)
        else:
            cur_partner, cur_main, _, si = _d_pair(cur_partner, cur_main, fam, bc, mode)
        if p == 1:
            si_first = si
        powers.append(cur_main)
    return powers, si_first


def d_chain_pair(vl: np.ndarray, vr: np.ndarray, params: KernelParams,
                 bc: Boundary, k: int, mode_first: str = WENO5):
    """Left chain on vl and right chain on vr advanced together through k
    powers (the form the convection operator consumes).

    Returns (powers_left, powers_right, si_left, si_right) with the
    smoothness pairs taken from the first (WENO) pass.
    """
    fam = _Family(params, vl.shape[-1] - 1)
    pl, pr = [], []
    si_l = si_r = None
    cl, cr = vl, vr
    for p in range(1, k + 1):
        mode = LINEAR6 if p > 1 else mode_first
        cl, cr, sl, sr = _d_pair(cl, cr, fam, bc, mode)
        if p == 1:
            si_l, si_r = sl, sr
        pl.append(cl)
        pr.append(cr)
    return pl, pr, si_l, si_r


def d_chain_zero(v: np.ndarray, params: KernelParams, bc: Boundary, k: int,
                 mode_first: str = WENO5):
    """Symmetric-family chain D_0^1[v] .. D_0^k[v]; see apply_D_power_chain."""
    return apply_D_power_chain(Side.ZERO, v, params, bc, k, mode_first)
