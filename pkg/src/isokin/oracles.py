"""Limit-definition oracles for the isoline characteristics.

Each characteristic is defined as a limit: a displacement found by
root-finding on the field values, divided by the step that produced it.
These oracles evaluate those defining quotients directly, symmetrized about
zero and Richardson-extrapolated, without touching the closed forms in
:mod:`isokin.characteristics` (closed-form values appear only to size root
brackets and to evaluate inner quantities whose own definitions are checked
separately). Agreement between the two routes is the core verification of
the package.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .characteristics import char_set, frenet
from .errors import (ContractViolationError, DegeneratePointError,
                     NoIntersectionError, OracleUnstableError)
from .fields import FieldSpec, as_point, eval_jet2

log = logging.getLogger(__name__)

_BRENTQ_RTOL = 4.0 * np.finfo(float).eps


@dataclass(frozen=True)
class OracleSettings:
    """Numerical knobs for the limit-definition oracles.

    step of None picks 1e-3 times the field's length scale at call time.
    root_tol is a residual tolerance relative to the local field scale.
    """

    step: float | None = None
    richardson_levels: int = 2
    root_tol: float = 1e-12
    max_iter: int = 64

    def __post_init__(self):
        if self.step is not None and self.step <= 0:
            raise ContractViolationError("oracle step must be positive")
        if self.richardson_levels < 1:
            raise ContractViolationError("richardson_levels must be >= 1")
        if self.root_tol <= 0:
            raise ContractViolationError("root_tol must be positive")
        if self.max_iter < 8:
            raise ContractViolationError("max_iter must be >= 8")

    def resolve_step(self, field: FieldSpec) -> float:
        return self.step if self.step is not None else 1e-3 * field.length_scale()


DEFAULT_SETTINGS = OracleSettings()


def signed_angle(ax: float, ay: float, bx: float, by: float) -> float:
    """Rotation taking direction a to direction b, in (-pi, pi]."""
    return math.atan2(ax * by - ay * bx, ax * bx + ay * by)


def richardson(quotient: Callable[[float], float], step: float, levels: int) -> float:
    """Extrapolate a symmetric difference quotient with an h^2 error series.

    Builds the usual triangular tableau from quotients at step / 2^k. Raises
    OracleUnstableError if an evaluation is non-finite or the corrections
    between successive diagonal entries grow well above rounding, which is
    the signature of a step driven into the noise floor.
    """
    raw = []
    for k in range(levels):
        q = quotient(step / (2.0 ** k))
        if not math.isfinite(q):
            raise OracleUnstableError("difference quotient evaluated non-finite")
        raw.append(q)
    if levels == 1:
        return raw[0]
    table = [raw]
    for j in range(1, levels):
        fac = 4.0 ** j
        prev = table[-1]
        table.append([(fac * prev[k + 1] - prev[k]) / (fac - 1.0)
                      for k in range(levels - j)])
    diag = [table[j][0] for j in range(levels)]
    scale = 1.0 + abs(diag[-1])
    for j in range(2, levels):
        d_prev = abs(diag[j - 1] - diag[j - 2])
        d_last = abs(diag[j] - diag[j - 1])
        if d_last > 8.0 * d_prev and d_last > 1e-6 * scale:
            raise OracleUnstableError(
                f"extrapolation diverging: corrections {d_prev:.3e} -> {d_last:.3e}")
    return diag[-1]


def _nearest_root(f: Callable[[float], float], half_width: float,
                  context: str, max_expansions: int = 16) -> float:
    """Root of f nearest zero, from a coarse scan plus bracketed polish.

    Scans [-P, P] at 65 points, picks the sign-change interval closest to
    the origin (warning if several exist: the definitions presume local
    uniqueness, so ambiguity is flagged, not fatal), and polishes with a
    bracketed solver. P doubles geometrically until a sign change appears.
    """
    P = half_width
    for _ in range(max_expansions):
        xs = np.linspace(-P, P, 65)
        fs = [f(x) for x in xs]
        intervals = []
        for i in range(64):
            a, b = fs[i], fs[i + 1]
            if a == 0.0 and b == 0.0:
                continue
            if a == 0.0:
                return float(xs[i])
            if b == 0.0:
                return float(xs[i + 1])
            if (a < 0.0) != (b < 0.0):
                intervals.append(i)
        if intervals:
            if len(intervals) > 1:
                log.warning("%s: %d sign changes in bracket, taking the nearest to 0",
                            context, len(intervals))
            i = min(intervals, key=lambda k: min(abs(xs[k]), abs(xs[k + 1])))
            xtol = 1e-15 * max(1.0, abs(xs[i]) + abs(xs[i + 1]))
            return float(brentq(f, xs[i], xs[i + 1], xtol=xtol, rtol=_BRENTQ_RTOL))
        P *= 2.0
    raise NoIntersectionError(
        f"{context}: no isoline intersection within half-width {P:.3e}")


def front_displacement(field: FieldSpec, t: float, r, dt: float,
                       settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Signed displacement p along N taking the isoline from t to t + dt.

    Solves D(t + dt, r + p N) = D(t, r) for the root nearest zero. The
    closed-form front velocity sizes the initial bracket only.
    """
    p = as_point(r)
    jet = eval_jet2(field, t, p)
    fr = frenet(jet)
    gamma = jet.value
    if dt == 0.0:
        return 0.0
    lam = -jet.dt / jet.grad_norm()
    half_width = abs(dt) * (abs(lam) + 1.0) * 4.0

    def resid(disp: float) -> float:
        return field.value(t + dt, p.x + disp * fr.nx, p.y + disp * fr.ny) - gamma

    root = _nearest_root(resid, half_width, "front_displacement")
    scale = max(1.0, abs(gamma))
    if abs(resid(root)) > settings.root_tol * scale * 1e3:
        raise OracleUnstableError("front displacement root failed residual check")
    return root


def _displaced(field: FieldSpec, t: float, r, s: float,
               settings: OracleSettings):
    """(t + s, r_plus(s)) with r_plus found by root-finding along N."""
    p = as_point(r)
    fr = frenet(eval_jet2(field, t, p))
    disp = front_displacement(field, t, p, s, settings)
    return t + s, (p.x + disp * fr.nx, p.y + disp * fr.ny)


def oracle_lambda(field: FieldSpec, t: float, r,
                  settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Front velocity from its definition, lim p(dt) / dt."""
    h = settings.resolve_step(field)

    def quotient(hh: float) -> float:
        return (front_displacement(field, t, r, hh, settings)
                - front_displacement(field, t, r, -hh, settings)) / (2.0 * hh)

    return richardson(quotient, h, settings.richardson_levels)


def oracle_alpha(field: FieldSpec, t: float, r,
                 settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Front acceleration: rate of change of lambda following the front."""
    h = settings.resolve_step(field)

    def lam_at(s: float) -> float:
        ts, rs = _displaced(field, t, r, s, settings)
        return char_set(eval_jet2(field, ts, rs)).lam

    return richardson(lambda hh: (lam_at(hh) - lam_at(-hh)) / (2.0 * hh),
                      h, settings.richardson_levels)


def oracle_omega(field: FieldSpec, t: float, r,
                 settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Isoline angular velocity: rate of rotation of T following the front."""
    h = settings.resolve_step(field)
    f0 = frenet(eval_jet2(field, t, r))

    def dphi(s: float) -> float:
        ts, rs = _displaced(field, t, r, s, settings)
        f1 = frenet(eval_jet2(field, ts, rs))
        return signed_angle(f0.tx, f0.ty, f1.tx, f1.ty)

    return richardson(lambda hh: (dphi(hh) - dphi(-hh)) / (2.0 * hh),
                      h, settings.richardson_levels)


def oracle_vrho(field: FieldSpec, t: float, r,
                settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Proportional density growth rate following the front."""
    h = settings.resolve_step(field)
    rho0 = eval_jet2(field, t, r).grad_norm()

    def rho_at(s: float) -> float:
        ts, rs = _displaced(field, t, r, s, settings)
        return eval_jet2(field, ts, rs).grad_norm()

    return richardson(lambda hh: (rho_at(hh) - rho_at(-hh)) / (2.0 * hh),
                      h, settings.richardson_levels) / rho0


def oracle_rho(field: FieldSpec, t: float, r,
               settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Density from its definition: level increment over normal distance.

    Solves D(t, r + q N) = gamma + dgamma for the nearest root q and
    extrapolates dgamma / q as dgamma tends to zero, symmetrized in sign.
    """
    p = as_point(r)
    jet = eval_jet2(field, t, p)
    fr = frenet(jet)
    gamma = jet.value
    rho_cf = jet.grad_norm()
    h = settings.resolve_step(field)

    def q_of(dgamma: float) -> float:
        def resid(q: float) -> float:
            return field.value(t, p.x + q * fr.nx, p.y + q * fr.ny) - gamma - dgamma
        return _nearest_root(resid, abs(dgamma) / rho_cf * 4.0, "oracle_rho")

    def quotient(hh: float) -> float:
        dg = hh * rho_cf
        return 0.5 * (dg / q_of(dg) + (-dg) / q_of(-dg))

    return richardson(quotient, h, settings.richardson_levels)


def oracle_taurho(field: FieldSpec, t: float, r,
                  settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Log-density growth under tangential displacement."""
    return _density_growth(field, t, r, settings, along_normal=False)


def oracle_nrho(field: FieldSpec, t: float, r,
                settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Log-density growth under normal displacement."""
    return _density_growth(field, t, r, settings, along_normal=True)


def _density_growth(field: FieldSpec, t: float, r, settings: OracleSettings,
                    along_normal: bool) -> float:
    p = as_point(r)
    fr = frenet(eval_jet2(field, t, p))
    dx, dy = (fr.nx, fr.ny) if along_normal else (fr.tx, fr.ty)
    h = settings.resolve_step(field)

    def quotient(hh: float) -> float:
        rp = eval_jet2(field, t, (p.x + hh * dx, p.y + hh * dy)).grad_norm()
        rm = eval_jet2(field, t, (p.x - hh * dx, p.y - hh * dy)).grad_norm()
        return (math.log(rp) - math.log(rm)) / (2.0 * hh)

    return richardson(quotient, h, settings.richardson_levels)


def oracle_omega_grad(field: FieldSpec, t: float, r,
                      settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Gradient angular velocity at a fixed point: quotient of the
    gradient orientation angle over time, tracked with signed angles."""
    p = as_point(r)
    jet0 = eval_jet2(field, t, p)
    if jet0.grad_norm() == 0.0:
        raise DegeneratePointError("gradient vanishes at the base point")
    h = settings.resolve_step(field)

    def dphi(s: float) -> float:
        jet = eval_jet2(field, t + s, p)
        return signed_angle(jet0.gx, jet0.gy, jet.gx, jet.gy)

    return richardson(lambda hh: (dphi(hh) - dphi(-hh)) / (2.0 * hh),
                      h, settings.richardson_levels)


def project_to_level(field: FieldSpec, t: float, r, level: float,
                     settings: OracleSettings = DEFAULT_SETTINGS):
    """Newton-project r onto the isoline D(t, .) = level along the gradient."""
    x, y = as_point(r)
    scale = max(1.0, abs(level))
    for _ in range(settings.max_iter):
        jet = eval_jet2(field, t, (x, y))
        err = jet.value - level
        if abs(err) <= settings.root_tol * scale:
            return x, y
        g2 = jet.gx * jet.gx + jet.gy * jet.gy
        if g2 == 0.0:
            raise DegeneratePointError("projection hit a critical point")
        x -= err * jet.gx / g2
        y -= err * jet.gy / g2
    raise OracleUnstableError("isoline projection did not converge")


def oracle_kappa(field: FieldSpec, t: float, r,
                 settings: OracleSettings = DEFAULT_SETTINGS) -> float:
    """Signed curvature: turning rate of T under arc-length steps along the
    isoline, where each step is a tangent move corrected back to the level."""
    p = as_point(r)
    jet0 = eval_jet2(field, t, p)
    fr0 = frenet(jet0)
    gamma = jet0.value
    h = settings.resolve_step(field)

    def tangent_after(step: float):
        rp = project_to_level(field, t, (p.x + step * fr0.tx, p.y + step * fr0.ty),
                              gamma, settings)
        return frenet(eval_jet2(field, t, rp))

    def quotient(hh: float) -> float:
        fp = tangent_after(hh)
        fm = tangent_after(-hh)
        return signed_angle(fm.tx, fm.ty, fp.tx, fp.ty) / (2.0 * hh)

    return richardson(quotient, h, settings.richardson_levels)


ORACLES = {
    "lam": oracle_lambda,
    "rho": oracle_rho,
    "alpha": oracle_alpha,
    "omega": oracle_omega,
    "kappa": oracle_kappa,
    "omega_grad": oracle_omega_grad,
    "v_rho": oracle_vrho,
    "tau_rho": oracle_taurho,
    "n_rho": oracle_nrho,
}
