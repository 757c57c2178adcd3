"""Deterministic CSV renderers for trajectories, isolines, and grids.

All numbers are written with shortest round-trip formatting and a '.'
decimal separator; records end with a bare newline. Identical inputs give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from .characteristics import CharSet, char_set
from .errors import DegeneratePointError
from .fields import FieldSpec, eval_jet2
from .isolines import march_isoline
from .kinematics import Trajectory, fd_reading_rates, reading_rates
from .oracles import OracleSettings

TRAJECTORY_COLUMNS = ("t", "x", "y", "theta", "v", "d",
                      "d_dot_formula", "d_ddot_formula", "d_dot_fd", "d_ddot_fd")

CHARGRID_COLUMNS = ("x", "y", "lambda", "rho", "alpha", "omega", "kappa",
                    "omega_grad", "v_rho", "tau_rho", "n_rho")


def _writer():
    buf = io.StringIO()
    return buf, csv.writer(buf, lineterminator="\n")


def _fmt(x: float) -> str:
    return repr(float(x))


def trajectory_csv(traj: Trajectory, v_max: float) -> str:
    """Trajectory samples with closed-form and stencil reading rates.

    Formula columns are filled only where the full-speed hypothesis holds;
    stencil columns only where the centered 5-point window fits. Everything
    else is written as nan.
    """
    buf, w = _writer()
    w.writerow(TRAJECTORY_COLUMNS)
    n = len(traj)
    for i in range(n):
        t = float(traj.t[i])
        state = traj.state(i)
        if abs(state.v - v_max) <= 1e-12 * max(1.0, abs(v_max)):
            try:
                rr = reading_rates(traj.field, t, state, _theta_dot_estimate(traj, i), v_max)
                f1, f2 = rr.d_dot, rr.d_ddot
            except DegeneratePointError:
                f1 = f2 = math.nan
        else:
            f1 = f2 = math.nan
        if 2 <= i <= n - 3:
            g1, g2 = fd_reading_rates(traj, i)
        else:
            g1 = g2 = math.nan
        w.writerow([_fmt(v) for v in
                    (t, traj.x[i], traj.y[i], traj.theta[i], traj.v[i], traj.d[i],
                     f1, f2, g1, g2)])
    return buf.getvalue()


def _theta_dot_estimate(traj: Trajectory, i: int) -> float:
    """Heading rate from the sampled headings (the program itself is not
    stored on the trajectory)."""
    n = len(traj)
    h = traj.dt
    if 2 <= i <= n - 3:
        return float((-traj.theta[i + 2] + 8 * traj.theta[i + 1]
                      - 8 * traj.theta[i - 1] + traj.theta[i - 2]) / (12 * h))
    if i == 0:
        return float((traj.theta[1] - traj.theta[0]) / h)
    if i == n - 1:
        return float((traj.theta[-1] - traj.theta[-2]) / h)
    return float((traj.theta[i + 1] - traj.theta[i - 1]) / (2 * h))


def isolines_csv(field: FieldSpec, t: float, levels, seed,
                 step: float | None = None,
                 bbox: tuple[float, float, float, float] | None = None,
                 settings: OracleSettings = OracleSettings()) -> str:
    """Marched polylines for each level, tagged by level in the last column."""
    buf, w = _writer()
    w.writerow(("x", "y", "level"))
    for level in levels:
        pts = march_isoline(field, t, seed, level, step=step, bbox=bbox,
                            settings=settings)
        for x, y in pts:
            w.writerow((_fmt(x), _fmt(y), _fmt(level)))
    return buf.getvalue()


def chargrid_csv(field: FieldSpec, t: float,
                 extent: tuple[float, float, float, float], n: int) -> str:
    """All nine characteristics on an n-by-n grid; nan rows at degenerate
    nodes."""
    buf, w = _writer()
    w.writerow(CHARGRID_COLUMNS)
    for x in np.linspace(extent[0], extent[1], n):
        for y in np.linspace(extent[2], extent[3], n):
            try:
                c = char_set(eval_jet2(field, t, (x, y)))
                vals = [getattr(c, name) for name in CharSet.FIELD_ORDER]
            except DegeneratePointError:
                vals = [math.nan] * 9
            w.writerow([_fmt(v) for v in (x, y, *vals)])
    return buf.getvalue()
