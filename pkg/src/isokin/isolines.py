"""Isoline polyline extraction by predictor-corrector marching.

Used only for plot exports; verification never touches this module (the
oracles locate isolines by one-dimensional root-finding instead).
"""

from __future__ import annotations

import math

import numpy as np

from .characteristics import frenet
from .errors import NoIntersectionError
from .fields import FieldSpec, as_point, eval_jet2
from .oracles import OracleSettings, project_to_level

DEFAULT_SETTINGS = OracleSettings()


def find_on_level(field: FieldSpec, t: float, seed, level: float,
                  settings: OracleSettings = DEFAULT_SETTINGS):
    """Walk from the seed point to the requested level along the gradient."""
    try:
        return project_to_level(field, t, seed, level, settings)
    except Exception as exc:
        raise NoIntersectionError(
            f"no isoline at level {level} reachable from seed {tuple(as_point(seed))}"
        ) from exc


def march_isoline(field: FieldSpec, t: float, seed, level: float,
                  step: float | None = None,
                  bbox: tuple[float, float, float, float] | None = None,
                  max_points: int = 20000,
                  settings: OracleSettings = DEFAULT_SETTINGS) -> np.ndarray:
    """Polyline along D(t, .) = level through the isoline nearest the seed.

    Tangent predictor steps of fixed arc length with gradient-projection
    correction. A closed curve is returned with its first point repeated at
    the end; an open curve is marched in both directions until it leaves
    the bounding box or the point budget runs out.
    """
    if step is None:
        step = 1e-2 * field.length_scale()
    start = find_on_level(field, t, seed, level, settings)

    def walk(sign: float) -> list[tuple[float, float]]:
        pts = []
        x, y = start
        for k in range(max_points):
            fr = frenet(eval_jet2(field, t, (x, y)))
            px, py = x + sign * step * fr.tx, y + sign * step * fr.ty
            x, y = project_to_level(field, t, (px, py), level, settings)
            if bbox is not None and not (bbox[0] <= x <= bbox[1] and bbox[2] <= y <= bbox[3]):
                break
            pts.append((x, y))
            if k >= 4 and math.hypot(x - start[0], y - start[1]) < 0.6 * step:
                return pts, True
        return pts, False

    forward, closed = walk(+1.0)
    if closed:
        ring = [tuple(start)] + forward + [tuple(start)]
        return np.array(ring)
    backward, _ = walk(-1.0)
    return np.array(list(reversed(backward)) + [tuple(start)] + forward)
