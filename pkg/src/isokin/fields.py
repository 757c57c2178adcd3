"""Time-varying planar scalar fields with exact order-2 space-time jets.

Every family evaluates both the raw field value ``D(t, x, y)`` and the full
jet (value, first and second time derivatives, gradient, mixed time-gradient,
spatial Hessian) in closed form. The closed forms are hand-derived per family;
:func:`fd_jet2` provides an independent finite-difference cross-check that
uses only ``value``.

Families are chosen for coverage of the isoline characteristics rather than
physical realism: a drifting linear field (pure front translation), an
accelerating ramp (front acceleration), a rotating linear field (gradient
rotation at zero curvature), a radial paraboloid (curvature and normal
density growth), a sum of moving Gaussian bumps (everything nonzero), and a
rotating anisotropic Gaussian (time-varying curvature and density).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Union

import numpy as np

from .errors import ContractViolationError


class Point2(NamedTuple):
    """A point in the plane."""

    x: float
    y: float


def as_point(r) -> Point2:
    """Coerce a 2-sequence (tuple, array, Point2) into a Point2."""
    x, y = float(r[0]), float(r[1])
    return Point2(x, y)


@dataclass(slots=True)
class FieldJet2:
    """Order-2 space-time jet of a scalar field at one point.

    Scalar storage keeps construction cheap on hot paths; ``grad``,
    ``grad_dt`` and ``hess`` expose the usual array views. The Hessian is
    symmetric by construction (one stored off-diagonal entry).
    """

    value: float
    dt: float
    dtt: float
    gx: float
    gy: float
    gxt: float
    gyt: float
    hxx: float
    hxy: float
    hyy: float

    @property
    def grad(self) -> np.ndarray:
        return np.array([self.gx, self.gy])

    @property
    def grad_dt(self) -> np.ndarray:
        return np.array([self.gxt, self.gyt])

    @property
    def hess(self) -> np.ndarray:
        return np.array([[self.hxx, self.hxy], [self.hxy, self.hyy]])

    def grad_norm(self) -> float:
        return math.hypot(self.gx, self.gy)


@dataclass(frozen=True)
class LinearDrift:
    """D = <gradient, r> + time_slope * t, a translating linear ramp."""

    gradient: tuple[float, float] = (0.0, 1.0)
    time_slope: float = -2.0

    def value(self, t: float, x: float, y: float) -> float:
        gx, gy = self.gradient
        return gx * x + gy * y + self.time_slope * t

    def jet(self, t: float, x: float, y: float) -> FieldJet2:
        gx, gy = self.gradient
        return FieldJet2(self.value(t, x, y), self.time_slope, 0.0,
                         gx, gy, 0.0, 0.0, 0.0, 0.0, 0.0)

    def length_scale(self) -> float:
        return 1.0


@dataclass(frozen=True)
class AcceleratingRamp:
    """A linear ramp whose front advances at speed front_speed + front_accel * t.

    D = <g, r> - |g| * (front_speed * t + front_accel * t^2 / 2), so the front
    velocity and acceleration equal the named parameters regardless of |g|.
    """

    gradient: tuple[float, float] = (0.0, 1.0)
    front_speed: float = 2.0
    front_accel: float = 9.81

    def value(self, t: float, x: float, y: float) -> float:
        gx, gy = self.gradient
        gn = math.hypot(gx, gy)
        return gx * x + gy * y - gn * (self.front_speed * t + 0.5 * self.front_accel * t * t)

    def jet(self, t: float, x: float, y: float) -> FieldJet2:
        gx, gy = self.gradient
        gn = math.hypot(gx, gy)
        return FieldJet2(self.value(t, x, y),
                         -gn * (self.front_speed + self.front_accel * t),
                         -gn * self.front_accel,
                         gx, gy, 0.0, 0.0, 0.0, 0.0, 0.0)

    def length_scale(self) -> float:
        return 1.0


@dataclass(frozen=True)
class RotatingLinear:
    """D = amplitude * <e(omega t + phase), r - center> with e(a) = (cos a, sin a).

    The gradient has constant norm and rotates rigidly at rate omega, so the
    gradient angular velocity is exactly omega while curvature and both
    density growth rates vanish.
    """

    omega: float = 0.7
    amplitude: float = 1.0
    phase: float = 0.0
    center: tuple[float, float] = (0.0, 0.0)

    def value(self, t: float, x: float, y: float) -> float:
        a = self.omega * t + self.phase
        ux, uy = x - self.center[0], y - self.center[1]
        return self.amplitude * (math.cos(a) * ux + math.sin(a) * uy)

    def jet(self, t: float, x: float, y: float) -> FieldJet2:
        a = self.omega * t + self.phase
        c, s = math.cos(a), math.sin(a)
        ux, uy = x - self.center[0], y - self.center[1]
        A, w = self.amplitude, self.omega
        return FieldJet2(A * (c * ux + s * uy),
                         A * w * (-s * ux + c * uy),
                         A * w * w * (-c * ux - s * uy),
                         A * c, A * s,
                         -A * w * s, A * w * c,
                         0.0, 0.0, 0.0)

    def length_scale(self) -> float:
        return 1.0


@dataclass(frozen=True)
class RadialParaboloid:
    """D = -coefficient * |r - center - velocity * t|^2, a drifting hill."""

    coefficient: float = 1.0
    center: tuple[float, float] = (0.0, 0.0)
    velocity: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.coefficient <= 0:
            raise ContractViolationError("paraboloid coefficient must be positive")

    def value(self, t: float, x: float, y: float) -> float:
        ux = x - self.center[0] - self.velocity[0] * t
        uy = y - self.center[1] - self.velocity[1] * t
        return -self.coefficient * (ux * ux + uy * uy)

    def jet(self, t: float, x: float, y: float) -> FieldJet2:
        k = self.coefficient
        vx, vy = self.velocity
        ux = x - self.center[0] - vx * t
        uy = y - self.center[1] - vy * t
        return FieldJet2(-k * (ux * ux + uy * uy),
                         2.0 * k * (ux * vx + uy * vy),
                         -2.0 * k * (vx * vx + vy * vy),
                         -2.0 * k * ux, -2.0 * k * uy,
                         2.0 * k * vx, 2.0 * k * vy,
                         -2.0 * k, 0.0, -2.0 * k)

    def length_scale(self) -> float:
        return 1.0 / math.sqrt(self.coefficient)


@dataclass(frozen=True)
class GaussianTerm:
    """One translating isotropic Gaussian bump."""

    amplitude: float
    center: tuple[float, float]
    velocity: tuple[float, float] = (0.0, 0.0)
    width: float = 1.0

    def __post_init__(self):
        if self.width <= 0:
            raise ContractViolationError("gaussian width must be strictly positive")


@dataclass(frozen=True)
class MovingGaussianSum:
    """A sum of translating Gaussian bumps; needs at least one term."""

    terms: tuple[GaussianTerm, ...] = dc_field(default=(
        GaussianTerm(1.0, (0.3, -0.2), (0.25, -0.15), 0.8),
        GaussianTerm(-0.6, (-0.5, 0.6), (-0.1, 0.3), 1.1),
    ))

    def __post_init__(self):
        if len(self.terms) < 1:
            raise ContractViolationError("moving gaussian sum needs at least one term")
        object.__setattr__(self, "terms", tuple(self.terms))

    def value(self, t: float, x: float, y: float) -> float:
        total = 0.0
        for term in self.terms:
            s2 = term.width * term.width
            ux = x - term.center[0] - term.velocity[0] * t
            uy = y - term.center[1] - term.velocity[1] * t
            total += term.amplitude * math.exp(-(ux * ux + uy * uy) / (2.0 * s2))
        return total

    def jet(self, t: float, x: float, y: float) -> FieldJet2:
        val = dt = dtt = gx = gy = gxt = gyt = hxx = hxy = hyy = 0.0
        for term in self.terms:
            s2 = term.width * term.width
            vx, vy = term.velocity
            ux = x - term.center[0] - vx * t
            uy = y - term.center[1] - vy * t
            g = term.amplitude * math.exp(-(ux * ux + uy * uy) / (2.0 * s2))
            ucdot = ux * vx + uy * vy
            val += g
            dt += g * ucdot / s2
            dtt += g * (ucdot * ucdot / (s2 * s2) - (vx * vx + vy * vy) / s2)
            gx += -g * ux / s2
            gy += -g * uy / s2
            gxt += g * (-ux * ucdot / (s2 * s2) + vx / s2)
            gyt += g * (-uy * ucdot / (s2 * s2) + vy / s2)
            hxx += g * (ux * ux / (s2 * s2) - 1.0 / s2)
            hxy += g * (ux * uy / (s2 * s2))
            hyy += g * (uy * uy / (s2 * s2) - 1.0 / s2)
        return FieldJet2(val, dt, dtt, gx, gy, gxt, gyt, hxx, hxy, hyy)

    def length_scale(self) -> float:
        return min(term.width for term in self.terms)


@dataclass(frozen=True)
class RotatingAnisotropicGaussian:
    """An anisotropic Gaussian whose principal axes rotate at rate omega.

    D = amplitude * exp(-<u, Q(t) u> / 2) with u = r - center - velocity * t
    and Q(t) the rotated inverse-covariance R(a) diag(1/wx^2, 1/wy^2) R(-a),
    a = omega * t + phase. Time derivatives use dQ/dt = omega (J Q - Q J)
    with J the quarter-turn matrix; the same rule applied once more gives
    the second derivative of Q.
    """

    amplitude: float = 1.0
    center: tuple[float, float] = (0.0, 0.0)
    velocity: tuple[float, float] = (0.0, 0.0)
    widths: tuple[float, float] = (0.8, 1.4)
    omega: float = 0.5
    phase: float = 0.0

    def __post_init__(self):
        if self.widths[0] <= 0 or self.widths[1] <= 0:
            raise ContractViolationError("gaussian widths must be strictly positive")

    def _inv_cov(self, t: float):
        a = self.omega * t + self.phase
        c, s = math.cos(a), math.sin(a)
        s1 = 1.0 / (self.widths[0] * self.widths[0])
        s2 = 1.0 / (self.widths[1] * self.widths[1])
        qxx = c * c * s1 + s * s * s2
        qxy = c * s * (s1 - s2)
        qyy = s * s * s1 + c * c * s2
        return qxx, qxy, qyy

    def value(self, t: float, x: float, y: float) -> float:
        qxx, qxy, qyy = self._inv_cov(t)
        ux = x - self.center[0] - self.velocity[0] * t
        uy = y - self.center[1] - self.velocity[1] * t
        e = -0.5 * (qxx * ux * ux + 2.0 * qxy * ux * uy + qyy * uy * uy)
        return self.amplitude * math.exp(e)

    def jet(self, t: float, x: float, y: float) -> FieldJet2:
        w = self.omega
        qxx, qxy, qyy = self._inv_cov(t)
        # dQ/dt = w (J Q - Q J); applying the same commutator to dQ/dt gives d2Q/dt2
        dqxx, dqxy, dqyy = -2.0 * w * qxy, w * (qxx - qyy), 2.0 * w * qxy
        ddqxx, ddqxy, ddqyy = -2.0 * w * dqxy, w * (dqxx - dqyy), 2.0 * w * dqxy
        vx, vy = self.velocity
        ux = x - self.center[0] - vx * t
        uy = y - self.center[1] - vy * t

        qux = qxx * ux + qxy * uy
        quy = qxy * ux + qyy * uy
        dqux = dqxx * ux + dqxy * uy
        dquy = dqxy * ux + dqyy * uy

        e = -0.5 * (ux * qux + uy * quy)
        val = self.amplitude * math.exp(e)
        # de/dt = <Qu, v> - <u, Q'u>/2; second time derivative below
        de = (qux * vx + quy * vy) - 0.5 * (ux * dqux + uy * dquy)
        dde = (2.0 * (dqux * vx + dquy * vy)
               - (qxx * vx * vx + 2.0 * qxy * vx * vy + qyy * vy * vy)
               - 0.5 * (ux * (ddqxx * ux + ddqxy * uy) + uy * (ddqxy * ux + ddqyy * uy)))

        gx = -val * qux
        gy = -val * quy
        gxt = val * (-qux * de + (qxx * vx + qxy * vy) - dqux)
        gyt = val * (-quy * de + (qxy * vx + qyy * vy) - dquy)
        return FieldJet2(val, val * de, val * (de * de + dde),
                         gx, gy, gxt, gyt,
                         val * (qux * qux - qxx),
                         val * (qux * quy - qxy),
                         val * (quy * quy - qyy))

    def length_scale(self) -> float:
        return min(self.widths)


FieldSpec = Union[LinearDrift, AcceleratingRamp, RotatingLinear,
                  RadialParaboloid, MovingGaussianSum, RotatingAnisotropicGaussian]

FAMILY_NAMES = {
    LinearDrift: "linear_drift",
    AcceleratingRamp: "accelerating_ramp",
    RotatingLinear: "rotating_linear",
    RadialParaboloid: "radial_paraboloid",
    MovingGaussianSum: "moving_gaussian_sum",
    RotatingAnisotropicGaussian: "rotating_anisotropic_gaussian",
}


def family_name(field) -> str:
    return FAMILY_NAMES[type(field)]


def eval_jet2(field: FieldSpec, t: float, r) -> FieldJet2:
    """Exact order-2 jet of the field at time t and point r."""
    p = as_point(r)
    if not (math.isfinite(t) and math.isfinite(p.x) and math.isfinite(p.y)):
        raise ContractViolationError("jet evaluation requires finite (t, r)")
    return field.jet(t, p.x, p.y)


def fd_jet2(field: FieldSpec, t: float, r, h: float) -> FieldJet2:
    """Finite-difference estimate of the order-2 jet, from field values only.

    Central differences at steps h and h/2 combined by one Richardson level,
    giving fourth-order accuracy on smooth fields. The mixed and second
    derivatives lose roughly eps / h^2 to rounding, so h far below the
    documented underflow guard is rejected rather than silently returned.
    """
    p = as_point(r)
    scale = max(1.0, abs(t), abs(p.x), abs(p.y))
    if h <= 0:
        raise ContractViolationError("finite-difference step must be positive")
    if h < 100.0 * np.finfo(float).eps * scale:
        raise ContractViolationError(
            f"finite-difference step {h} underflows at scale {scale}")

    def raw(hh: float) -> tuple:
        x, y = p
        f = field.value
        f0 = f(t, x, y)
        ft1, ft2 = f(t + hh, x, y), f(t - hh, x, y)
        fx1, fx2 = f(t, x + hh, y), f(t, x - hh, y)
        fy1, fy2 = f(t, x, y + hh), f(t, x, y - hh)
        dt = (ft1 - ft2) / (2 * hh)
        dtt = (ft1 - 2 * f0 + ft2) / (hh * hh)
        gx = (fx1 - fx2) / (2 * hh)
        gy = (fy1 - fy2) / (2 * hh)
        gxt = (f(t + hh, x + hh, y) - f(t + hh, x - hh, y)
               - f(t - hh, x + hh, y) + f(t - hh, x - hh, y)) / (4 * hh * hh)
        gyt = (f(t + hh, x, y + hh) - f(t + hh, x, y - hh)
               - f(t - hh, x, y + hh) + f(t - hh, x, y - hh)) / (4 * hh * hh)
        hxx = (fx1 - 2 * f0 + fx2) / (hh * hh)
        hyy = (fy1 - 2 * f0 + fy2) / (hh * hh)
        hxy = (f(t, x + hh, y + hh) - f(t, x + hh, y - hh)
               - f(t, x - hh, y + hh) + f(t, x - hh, y - hh)) / (4 * hh * hh)
        return dt, dtt, gx, gy, gxt, gyt, hxx, hxy, hyy

    coarse = raw(h)
    fine = raw(h / 2)
    dt, dtt, gx, gy, gxt, gyt, hxx, hxy, hyy = (
        (4.0 * fv - cv) / 3.0 for fv, cv in zip(fine, coarse))
    return FieldJet2(field.value(t, p.x, p.y), dt, dtt, gx, gy, gxt, gyt, hxx, hxy, hyy)


def regularity(jet: FieldJet2, eps: float) -> bool:
    """True iff the gradient norm clears the threshold eps (> 0)."""
    if eps <= 0:
        raise ContractViolationError("regularity threshold must be positive")
    return jet.grad_norm() >= eps
