"""Scenario execution behind the service endpoints.

These functions are transport-free: the FastAPI app and the in-process CLI
backend both call them directly. All failures surface as ServiceError with
a stable machine-readable code.
"""

from __future__ import annotations

from .. import export as export_mod
from ..characteristics import CharSet, char_set, frenet, identity_residuals
from ..errors import DegeneratePointError, IsokinError
from ..fields import Point2, eval_jet2
from ..kinematics import RobotState, integrate
from ..suites import run_suites
from . import schemas


class ServiceError(Exception):
    """Machine-readable failure: code drives HTTP status and CLI exit."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def run_characteristics(req: schemas.CharacteristicsRequest) -> schemas.CharacteristicsResponse:
    field = req.scenario.field.to_core()
    try:
        jet = eval_jet2(field, req.t, (req.x, req.y))
        c = char_set(jet)
        fr = frenet(jet)
    except DegeneratePointError as exc:
        raise ServiceError("degenerate_point", str(exc)) from exc
    r1, r2 = identity_residuals(c)
    return schemas.CharacteristicsResponse(
        value=jet.value,
        grad=(jet.gx, jet.gy),
        frame=schemas.FrameOut(T=(fr.tx, fr.ty), N=(fr.nx, fr.ny)),
        characteristics={("lambda" if name == "lam" else name): getattr(c, name)
                         for name in CharSet.FIELD_ORDER},
        residual_tangent_spin=r1,
        residual_density_rate=r2,
        density_rate_flagged=abs(r2) > 1e-9,
    )


def run_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    sc = req.scenario
    report = run_suites(sc.verify.suites, sc.seed, sc.verify.to_core())
    suites = [schemas.SuiteOut(
        name=s.name,
        checks=[schemas.CheckOut(name=c.name, status=c.status, passed=c.passed,
                                 asserted=c.asserted, observed=c.observed,
                                 threshold=c.threshold, detail=c.detail)
                for c in s.checks],
        notes=list(s.notes),
        failures=list(s.failures),
    ) for s in report.suites]
    return schemas.VerifyResponse(report=report.render(), suites=suites,
                                  all_asserted_passed=report.all_asserted_passed,
                                  failures=report.failures)


def run_export(req: schemas.ExportRequest) -> schemas.ExportResponse:
    sc = req.scenario
    field = sc.field.to_core()
    robot = sc.robot
    try:
        prog = sc.steering.to_core(robot.v_max)
    except ValueError as exc:
        raise ServiceError("config", str(exc)) from exc
    try:
        traj = integrate(field, RobotState(Point2(robot.x, robot.y),
                                           robot.theta, robot.v_max),
                         prog, sc.steering.dt)
        files: dict[str, str] = {
            "trajectory.csv": export_mod.trajectory_csv(traj, robot.v_max)}

        seed_point = (robot.x, robot.y)
        ex = sc.export
        for t in ex.isoline_times:
            levels = ex.isoline_levels
            if levels is None:
                levels = [field.value(t, robot.x, robot.y)]
            files[f"isolines_{t:g}.csv"] = export_mod.isolines_csv(
                field, t, levels, seed_point, step=ex.march_step,
                bbox=_inflate(ex.grid_extent), settings=sc.oracle.to_core())
        for t in ex.grid_times:
            files[f"chargrid_{t:g}.csv"] = export_mod.chargrid_csv(
                field, t, ex.grid_extent, ex.grid_n)
    except IsokinError as exc:
        raise ServiceError("export_failed", str(exc)) from exc
    return schemas.ExportResponse(files=files)


def _inflate(extent, factor: float = 1.5):
    cx = 0.5 * (extent[0] + extent[1])
    cy = 0.5 * (extent[2] + extent[3])
    hx = 0.5 * (extent[1] - extent[0]) * factor
    hy = 0.5 * (extent[3] - extent[2]) * factor
    return (cx - hx, cx + hx, cy - hy, cy + hy)


def format_characteristics(resp: schemas.CharacteristicsResponse,
                           t: float, x: float, y: float) -> str:
    """Human-readable block for the CLI; deterministic formatting."""

    def g(v: float) -> str:
        return f"{v + 0.0:.12g}"  # +0.0 folds negative zero

    lines = [
        f"point: t={g(t)} x={g(x)} y={g(y)}",
        f"value: {g(resp.value)}",
        f"grad: ({g(resp.grad[0])}, {g(resp.grad[1])})",
        f"frame T: ({g(resp.frame.T[0])}, {g(resp.frame.T[1])})",
        f"frame N: ({g(resp.frame.N[0])}, {g(resp.frame.N[1])})",
    ]
    for name, value in resp.characteristics.items():
        lines.append(f"{name}: {g(value)}")
    lines.append(f"tangent-spin identity residual: {g(resp.residual_tangent_spin)}")
    flag = "  (!) fails here; reported, not asserted" if resp.density_rate_flagged else ""
    lines.append(f"density-rate identity residual: {g(resp.residual_density_rate)}{flag}")
    return "\n".join(lines) + "\n"
