"""Frenet frame and the nine isoline characteristics of an unsteady field.

All closed forms are algebraic in the order-2 jet at a single point. Writing
g for the gradient, H for the spatial Hessian, g_t for the mixed
time-gradient, N = g/|g| and T = N rotated clockwise by a quarter turn:

    rho        = |g|                      (isoline density)
    lambda     = -D_t / rho               (front velocity along N)
    v_rho      = <g_t + lambda H N, N> / rho
    omega      = -<g_t + lambda H N, T> / rho
    alpha      = -(D_tt + lambda <g_t, N>) / rho - lambda v_rho
    kappa      = -<H T, T> / rho          (signed curvature)
    omega_grad = -<g_t, T> / rho          (gradient angular velocity)
    tau_rho    = <H N, T> / rho
    n_rho      = <H N, N> / rho

The frame is right-handed with the superlevel set on the left of travel
along T. All sign-sensitive quantities inherit that convention.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError
from .fields import FieldJet2


@dataclass(slots=True)
class FrenetFrame:
    """Unit tangent/normal pair of the spatial isoline through a point."""

    tx: float
    ty: float
    nx: float
    ny: float

    @property
    def T(self) -> np.ndarray:
        return np.array([self.tx, self.ty])

    @property
    def N(self) -> np.ndarray:
        return np.array([self.nx, self.ny])


@dataclass(slots=True)
class CharSet:
    """The nine characteristics at one (t, r); built only at regular points."""

    lam: float
    rho: float
    alpha: float
    omega: float
    kappa: float
    omega_grad: float
    v_rho: float
    tau_rho: float
    n_rho: float

    # external column order for grids and reports
    FIELD_ORDER = ("lam", "rho", "alpha", "omega", "kappa",
                   "omega_grad", "v_rho", "tau_rho", "n_rho")


def frenet(jet: FieldJet2) -> FrenetFrame:
    """Frame with N = grad/|grad| (uphill) and T = N rotated by -pi/2."""
    rho = math.hypot(jet.gx, jet.gy)
    if rho == 0.0 or not math.isfinite(rho):
        raise DegeneratePointError(
            "gradient vanishes: the frame needs a nonzero spatial gradient")
    nx, ny = jet.gx / rho, jet.gy / rho
    return FrenetFrame(ny, -nx, nx, ny)


def char_set(jet: FieldJet2) -> CharSet:
    """All nine characteristics from the closed forms above."""
    rho = math.hypot(jet.gx, jet.gy)
    if rho == 0.0 or not math.isfinite(rho):
        raise DegeneratePointError(
            "gradient vanishes: characteristics need a nonzero spatial gradient")
    nx, ny = jet.gx / rho, jet.gy / rho
    tx, ty = ny, -nx

    lam = -jet.dt / rho
    hn_x = jet.hxx * nx + jet.hxy * ny
    hn_y = jet.hxy * nx + jet.hyy * ny
    wx = jet.gxt + lam * hn_x
    wy = jet.gyt + lam * hn_y
    v_rho = (wx * nx + wy * ny) / rho
    omega = -(wx * tx + wy * ty) / rho
    alpha = -(jet.dtt + lam * (jet.gxt * nx + jet.gyt * ny)) / rho - lam * v_rho
    ht_x = jet.hxx * tx + jet.hxy * ty
    ht_y = jet.hxy * tx + jet.hyy * ty
    kappa = -(ht_x * tx + ht_y * ty) / rho
    omega_grad = -(jet.gxt * tx + jet.gyt * ty) / rho
    tau_rho = (hn_x * tx + hn_y * ty) / rho
    n_rho = (hn_x * nx + hn_y * ny) / rho
    return CharSet(lam, rho, alpha, omega, kappa, omega_grad, v_rho, tau_rho, n_rho)


def identity_residuals(c: CharSet) -> tuple[float, float]:
    """Residuals of the two cross-characteristic identities.

    The first, omega = omega_grad - lam * tau_rho, is an algebraic
    consequence of the closed forms and must vanish to rounding. The second,
    v_rho = -omega_grad + lam * n_rho, fails on rotating fields (a rotating
    linear field at its center gives residual equal to the rotation rate);
    it is reported, never asserted.
    """
    first = c.omega - c.omega_grad + c.lam * c.tau_rho
    second = c.v_rho + c.omega_grad - c.lam * c.n_rho
    return first, second


class ShiftKind(enum.Enum):
    """Which first-order shift law to apply."""

    TANGENTIAL_SPACE = "tangential_space"
    NORMAL_SPACE = "normal_space"
    TIME_ALONG_FRONT = "time_along_front"


@dataclass(slots=True)
class ShiftPrediction:
    """First-order predictions of (lambda, T, N) after a small shift."""

    lam: float
    T: np.ndarray
    N: np.ndarray


def shift_predict(jet: FieldJet2, c: CharSet, kind: ShiftKind, ds: float) -> ShiftPrediction:
    """Predict lambda and the frame after an infinitesimal shift of size ds.

    Tangential shift (along T at fixed t):
        lambda -> lambda + omega ds;   T -> T + kappa N ds;  N -> N - kappa T ds
    Normal shift (along N at fixed t):
        lambda -> lambda - v_rho ds;   T -> T - tau_rho N ds; N -> N + tau_rho T ds
    Time shift following the front point:
        lambda -> lambda + alpha ds;   T -> T + omega N ds;  N -> N - omega T ds

    The time-shift lambda law comes straight from the definition of the
    front acceleration; the frame laws for it come from the definition of
    the isoline angular velocity.
    """
    if not math.isfinite(ds):
        raise ValueError("shift size must be finite")
    f = frenet(jet)
    T, N = f.T, f.N
    if kind is ShiftKind.TANGENTIAL_SPACE:
        return ShiftPrediction(c.lam + c.omega * ds,
                               T + c.kappa * ds * N,
                               N - c.kappa * ds * T)
    if kind is ShiftKind.NORMAL_SPACE:
        return ShiftPrediction(c.lam - c.v_rho * ds,
                               T - c.tau_rho * ds * N,
                               N + c.tau_rho * ds * T)
    if kind is ShiftKind.TIME_ALONG_FRONT:
        return ShiftPrediction(c.lam + c.alpha * ds,
                               T + c.omega * ds * N,
                               N - c.omega * ds * T)
    raise ValueError(f"unknown shift kind: {kind!r}")
