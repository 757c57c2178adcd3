"""Unicycle kinematics, field readings, and rotation-deviation bounds.

The robot model is a plane integrator driven by speed and heading rate,
r' = v(t) e(theta), theta' = theta_dot(t), with e(a) = (cos a, sin a).
Heading is accumulated without wrapping so the total turned angle of a
multi-turn run stays well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .characteristics import char_set, frenet
from .errors import ContractViolationError
from .fields import FieldSpec, Point2, eval_jet2

TWO_PI = 2.0 * math.pi


@dataclass(slots=True)
class RobotState:
    """Pose plus current speed; theta is cumulative, never wrapped."""

    r: Point2
    theta: float
    v: float


@dataclass(slots=True)
class SteeringProgram:
    """Open-loop controls: heading rate and speed as functions of time."""

    theta_dot: Callable[[float], float]
    speed: Callable[[float], float]
    duration: float

    @classmethod
    def constant(cls, theta_dot: float, speed: float, duration: float) -> "SteeringProgram":
        return cls(lambda t: theta_dot, lambda t: speed, duration)

    @classmethod
    def piecewise_constant(cls, switch_times: Sequence[float],
                           theta_dots: Sequence[float],
                           speeds: Sequence[float],
                           duration: float) -> "SteeringProgram":
        """Right-continuous steps: value k applies on [s_{k-1}, s_k)."""
        times = list(switch_times)
        if len(theta_dots) != len(times) + 1 or len(speeds) != len(times) + 1:
            raise ValueError("need one more value than switch times")

        def pick(vals):
            def f(t: float) -> float:
                i = 0
                while i < len(times) and t >= times[i]:
                    i += 1
                return vals[i]
            return f

        return cls(pick(list(theta_dots)), pick(list(speeds)), duration)

    @classmethod
    def fourier(cls, mean: float, cos_coeffs: Sequence[float],
                sin_coeffs: Sequence[float], base_period: float,
                speed: float, duration: float) -> "SteeringProgram":
        """Band-limited smooth heading rate at constant speed."""
        ac = list(cos_coeffs)
        asn = list(sin_coeffs)
        w0 = TWO_PI / base_period

        def theta_dot(t: float) -> float:
            out = mean
            for k, (a, b) in enumerate(zip(ac, asn), start=1):
                out += a * math.cos(k * w0 * t) + b * math.sin(k * w0 * t)
            return out

        return cls(theta_dot, lambda t: speed, duration)


@dataclass(slots=True)
class Trajectory:
    """Uniformly sampled run: poses, speeds, and field readings."""

    field: FieldSpec
    dt: float
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    v: np.ndarray
    d: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def state(self, i: int) -> RobotState:
        return RobotState(Point2(float(self.x[i]), float(self.y[i])),
                          float(self.theta[i]), float(self.v[i]))


def integrate(field: FieldSpec, init: RobotState, prog: SteeringProgram,
              dt: float, t0: float = 0.0) -> Trajectory:
    """Classical fourth-order one-step integration on a uniform grid.

    The grid is t0 + i dt for i = 0 .. round(duration / dt); pick dt
    commensurate with the duration when the exact endpoint matters. The
    program is evaluated in run time (elapsed since t0) while the field is
    read at absolute time, and d is sampled at every node from the field
    itself, so the stored readings are exactly re-evaluable.
    """
    if dt <= 0:
        raise ContractViolationError("integration step must be positive")
    if dt > prog.duration:
        raise ContractViolationError("integration step exceeds program duration")
    n = int(round(prog.duration / dt))
    ts = t0 + np.arange(n + 1) * dt
    xs = np.empty(n + 1)
    ys = np.empty(n + 1)
    ths = np.empty(n + 1)
    vs = np.empty(n + 1)
    ds = np.empty(n + 1)

    theta_dot, speed, value = prog.theta_dot, prog.speed, field.value
    x, y, th = init.r.x, init.r.y, init.theta
    cos, sin = math.cos, math.sin
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n + 1):
        xs[i], ys[i], ths[i] = x, y, th
        t = i * dt
        vs[i] = speed(t)
        ds[i] = value(ts[i], x, y)
        if i == n:
            break
        v1, w1 = speed(t), theta_dot(t)
        k1x, k1y = v1 * cos(th), v1 * sin(th)
        tm = t + half
        v2, w2 = speed(tm), theta_dot(tm)
        th2 = th + half * w1
        k2x, k2y = v2 * cos(th2), v2 * sin(th2)
        th3 = th + half * w2
        k3x, k3y = v2 * cos(th3), v2 * sin(th3)
        te = t + dt
        v4, w4 = speed(te), theta_dot(te)
        th4 = th + dt * w2
        k4x, k4y = v4 * cos(th4), v4 * sin(th4)
        x += sixth * (k1x + 2.0 * (k2x + k3x) + k4x)
        y += sixth * (k1y + 2.0 * (k2y + k3y) + k4y)
        th += sixth * (w1 + 4.0 * w2 + w4)
    return Trajectory(field, dt, ts, xs, ys, ths, vs, ds)


@dataclass(slots=True)
class ReadingRates:
    """First and second reading derivatives plus the velocity split."""

    d_dot: float
    d_ddot: float
    v_delta: float
    v_t: float


def reading_rates(field: FieldSpec, t: float, state: RobotState,
                  theta_dot: float, v_max: float) -> ReadingRates:
    """Closed-form d-dot and d-ddot for a robot moving at full speed.

    With the frame built at the robot's location and e = e(theta):

        d_dot  = rho [ v <N, e> - lambda ]
        d_ddot = rho [ (theta_dot - 2 omega - kappa v_T + 2 v_delta tau_rho) v_T
                       + 2 v_rho v_delta - alpha + v_delta^2 n_rho ]

    where v_delta = v <N, e> - lambda and v_T = v <T, e>. The second
    derivative expansion assumes the speed is held at v_max, which is
    enforced rather than silently generalized. (The d_dot line is the plain
    chain rule and stays valid for any speed with v in place of v_max.)
    """
    if abs(state.v - v_max) > 1e-12 * max(1.0, abs(v_max)):
        raise ContractViolationError(
            f"reading rates require speed {v_max}, got {state.v}")
    jet = eval_jet2(field, t, state.r)
    c = char_set(jet)
    fr = frenet(jet)
    ex, ey = math.cos(state.theta), math.sin(state.theta)
    v_delta = v_max * (fr.nx * ex + fr.ny * ey) - c.lam
    v_t = v_max * (fr.tx * ex + fr.ty * ey)
    d_dot = c.rho * v_delta
    d_ddot = c.rho * ((theta_dot - 2.0 * c.omega - c.kappa * v_t
                       + 2.0 * v_delta * c.tau_rho) * v_t
                      + 2.0 * c.v_rho * v_delta - c.alpha
                      + v_delta * v_delta * c.n_rho)
    return ReadingRates(d_dot, d_ddot, v_delta, v_t)


def fd_reading_rates(traj: Trajectory, i: int) -> tuple[float, float]:
    """Fourth-order central estimates of d-dot and d-ddot at node i."""
    n = len(traj)
    if not 2 <= i <= n - 3:
        raise IndexError(f"node {i} has no centered 5-point stencil in 0..{n - 1}")
    d = traj.d
    h = traj.dt
    d_dot = (-d[i + 2] + 8.0 * d[i + 1] - 8.0 * d[i - 1] + d[i - 2]) / (12.0 * h)
    d_ddot = (-d[i + 2] + 16.0 * d[i + 1] - 30.0 * d[i]
              + 16.0 * d[i - 1] - d[i - 2]) / (12.0 * h * h)
    return float(d_dot), float(d_ddot)


def deviation_bound_cosine(v_max: float, omega_theta: float, phi: float) -> float:
    """Claimed tight deviation bound for a perpetually rotating robot.

    q(phi) = (2 v / w) floor(phi / 2 pi) + (v / w)(1 - cos min(frac, pi))
    with frac the fractional angle. Known to be undersized for fractional
    turns (a constant-rate quarter circle attains sqrt(2) v / w against
    q = v / w); kept exactly as stated and reported against trajectories,
    never asserted. See deviation_bound_ceil for the safe envelope.
    """
    if v_max <= 0 or omega_theta <= 0 or phi < 0:
        raise ContractViolationError("bound needs v_max > 0, omega_theta > 0, phi >= 0")
    k = math.floor(phi / TWO_PI)
    frac = phi - TWO_PI * k
    return (2.0 * v_max / omega_theta) * k + \
        (v_max / omega_theta) * (1.0 - math.cos(min(frac, math.pi)))


def deviation_bound_ceil(v_max: float, omega_theta: float, phi: float) -> float:
    """Safe deviation envelope (2 v / w) ceil(phi / 2 pi)."""
    if v_max <= 0 or omega_theta <= 0 or phi <= 0:
        raise ContractViolationError("bound needs v_max > 0, omega_theta > 0, phi > 0")
    return (2.0 * v_max / omega_theta) * math.ceil(phi / TWO_PI)


def _chord(a: float, b: float) -> tuple[float, float]:
    # integral of e(-s) over [a, b]
    return math.sin(b) - math.sin(a), math.cos(b) - math.cos(a)


def _bang_deviation(switches: Sequence[float], start_on: bool, phi: float) -> float:
    """Deviation of a bang-bang profile with unit on-level, given switch times."""
    pts = [0.0] + sorted(min(max(s, 0.0), phi) for s in switches) + [phi]
    on = start_on
    tx = ty = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        if on and b > a:
            cx, cy = _chord(a, b)
            tx += cx
            ty += cy
        on = not on
    return math.hypot(tx, ty)


def empirical_max_deviation(v_max: float, omega_theta: float, phi: float,
                            n_switch: int) -> float:
    """Best deviation found over bang-bang speed profiles, a lower bound on
    the true maximum.

    The reduced problem maximizes |integral of u(s) e(-s) ds| over s in
    [0, phi] with u piecewise constant in {0, v_max / omega_theta} and at
    most n_switch switches. Optimal profiles alternate on half-turn
    intervals, so candidates are generated from a scan of that interval
    phase and then polished locally; plain quantile starts are added as a
    safety net. Maximizing over at most k switches for k = 0 .. n_switch
    keeps the result nondecreasing in n_switch by construction.
    """
    if n_switch < 0:
        raise ContractViolationError("n_switch must be nonnegative")
    if phi <= 0:
        return 0.0
    best = 0.0
    for k in range(n_switch + 1):
        for start_on in (True, False):
            if k == 0 and not start_on:
                continue
            best = max(best, _best_bang(phi, k, start_on))
    return best * (v_max / omega_theta)


def _phase_switches(chi: float, phi: float) -> list[float]:
    """Switch times of the half-turn alternating profile with phase chi."""
    out = []
    s = chi % math.pi
    while s < phi:
        if s > 0.0:
            out.append(s)
        s += math.pi
    return out


def _best_bang(phi: float, k: int, start_on: bool) -> float:
    if k == 0:
        return _bang_deviation([], start_on, phi)

    best = 0.0
    best_sw = None
    # phase-scan candidates from the alternating half-turn structure
    for chi in np.linspace(0.0, math.pi, 361):
        sw = _phase_switches(chi, phi)
        if len(sw) > k:
            continue
        val = _bang_deviation(sw, start_on, phi)
        if val > best:
            best, best_sw = val, sw
    # quantile fallback keeps low switch counts covered when the phase scan
    # yields more switches than allowed
    quant = [phi * (i + 1) / (k + 1) for i in range(k)]
    val = _bang_deviation(quant, start_on, phi)
    if val > best:
        best, best_sw = val, quant

    if best_sw:
        pad = list(best_sw) + [phi] * (k - len(best_sw))
        res = minimize(lambda z: -_bang_deviation(z, start_on, phi),
                       np.array(pad), method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
        best = max(best, -float(res.fun))
    return best
