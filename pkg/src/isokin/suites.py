"""Verification campaigns: closed forms against limit-definition oracles.

Each suite runs a seeded campaign over a fixed roster of test fields and
reduces to named checks. A check is either asserted (its failure fails the
run) or reported (documented discrepancies are reproduced and printed but
never gate). The two known discrepancies, the density-rate identity and the
fractional-turn deviation bound, are reproduced with concrete
counterexamples in every full run.
"""

from __future__ import annotations

import math
import traceback
from dataclasses import dataclass, field as dc_field

import numpy as np

from .characteristics import ShiftKind, char_set, frenet, identity_residuals, shift_predict
from .domain import SpaceTimeBox, gradient_rotation, gradient_rotation_tracking, rotation_bound, sample_pairs
from .errors import DegeneratePointError
from .fields import (AcceleratingRamp, FieldSpec, GaussianTerm, LinearDrift,
                     MovingGaussianSum, Point2, RadialParaboloid,
                     RotatingAnisotropicGaussian, RotatingLinear, eval_jet2,
                     family_name)
from .kinematics import (RobotState, SteeringProgram, deviation_bound_ceil,
                         deviation_bound_cosine, empirical_max_deviation,
                         fd_reading_rates, integrate, reading_rates)
from .oracles import ORACLES, front_displacement

TWO_PI = 2.0 * math.pi


# --------------------------------------------------------------------------
# campaign roster: one generic instance per family plus a sampling box and a
# gradient floor for drawing random regular points

@dataclass(frozen=True)
class CampaignField:
    field: FieldSpec
    t_range: tuple[float, float]
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    grad_floor: float

    @property
    def name(self) -> str:
        return family_name(self.field)

    def sample_points(self, n: int, rng: np.random.Generator):
        out = []
        attempts = 0
        while len(out) < n:
            attempts += 1
            if attempts > 500 * n:
                raise RuntimeError(f"cannot draw {n} regular points for {self.name}")
            t = rng.uniform(*self.t_range)
            x = rng.uniform(*self.x_range)
            y = rng.uniform(*self.y_range)
            if eval_jet2(self.field, t, (x, y)).grad_norm() >= self.grad_floor:
                out.append((t, x, y))
        return out


def campaign_roster() -> list[CampaignField]:
    return [
        CampaignField(LinearDrift(gradient=(0.0, 1.0), time_slope=-2.0),
                      (-1.0, 1.0), (-2.0, 2.0), (-2.0, 2.0), 0.1),
        CampaignField(AcceleratingRamp(gradient=(0.6, 0.8), front_speed=2.0,
                                       front_accel=9.81),
                      (-0.5, 0.5), (-2.0, 2.0), (-2.0, 2.0), 0.1),
        CampaignField(RotatingLinear(omega=0.7, amplitude=1.0, phase=0.2,
                                     center=(0.1, -0.1)),
                      (-1.0, 1.0), (-2.0, 2.0), (-2.0, 2.0), 0.1),
        CampaignField(RadialParaboloid(coefficient=0.8, center=(0.2, -0.3),
                                       velocity=(0.3, 0.2)),
                      (-0.5, 0.5), (-2.5, 2.5), (-2.5, 2.5), 1.0),
        CampaignField(MovingGaussianSum((
            GaussianTerm(1.0, (0.3, -0.2), (0.25, -0.15), 0.8),
            GaussianTerm(-0.6, (-0.5, 0.6), (-0.1, 0.3), 1.1))),
            (0.0, 1.0), (-1.5, 1.5), (-1.5, 1.5), 0.15),
        CampaignField(RotatingAnisotropicGaussian(amplitude=1.0, center=(0.1, -0.2),
                                                  velocity=(0.15, 0.1),
                                                  widths=(0.7, 1.2), omega=0.6,
                                                  phase=0.3),
                      (0.0, 1.0), (-1.8, 1.8), (-1.8, 1.8), 0.15),
    ]


# --------------------------------------------------------------------------
# result containers

@dataclass(slots=True)
class CheckResult:
    name: str
    passed: bool
    asserted: bool
    observed: str
    threshold: str = ""
    detail: str = ""

    @property
    def status(self) -> str:
        if not self.asserted:
            return "INFO"
        return "PASS" if self.passed else "FAIL"


@dataclass(slots=True)
class SuiteResult:
    name: str
    checks: list[CheckResult] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)
    failures: list[str] = dc_field(default_factory=list)

    def check(self, name: str, passed: bool, observed: str, threshold: str = "",
              asserted: bool = True, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, asserted, observed,
                                       threshold, detail))

    @property
    def ok(self) -> bool:
        return not self.failures and all(c.passed for c in self.checks if c.asserted)


@dataclass(slots=True)
class VerifySettings:
    points_per_family: int = 100
    shift_points: int = 5
    runs_per_family: int = 20
    deviation_runs: int = 1000
    rotation_pairs: int = 500


@dataclass(slots=True)
class VerifyReport:
    seed: int
    suites: list[SuiteResult]

    @property
    def all_asserted_passed(self) -> bool:
        return all(s.ok for s in self.suites)

    @property
    def failures(self) -> list[str]:
        out = []
        for s in self.suites:
            out.extend(f"{s.name}: {f}" for f in s.failures)
            out.extend(f"{s.name}: {c.name} failed ({c.observed} vs {c.threshold})"
                       for c in s.checks if c.asserted and not c.passed)
        return out

    def render(self) -> str:
        lines = ["isokin verification report", f"seed: {self.seed}", ""]
        n_pass = n_assert = 0
        for s in self.suites:
            lines.append(f"suite {s.name}")
            for c in s.checks:
                if c.asserted:
                    n_assert += 1
                    n_pass += c.passed
                tail = f" (target {c.threshold})" if c.threshold else ""
                det = f"  [{c.detail}]" if c.detail else ""
                lines.append(f"  [{c.status}] {c.name}: {c.observed}{tail}{det}")
            for note in s.notes:
                lines.append(f"  note: {note}")
            for fail in s.failures:
                lines.append(f"  [ERROR] {fail}")
            lines.append("")
        lines.append(f"asserted checks: {n_pass}/{n_assert} passed")
        lines.append("result: " + ("OK" if self.all_asserted_passed else "FAILED"))
        return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.6e}"


# --------------------------------------------------------------------------
# suite: characteristics (closed forms against the nine limit oracles)

def suite_characteristics(rng: np.random.Generator, cfg: VerifySettings) -> SuiteResult:
    res = SuiteResult("characteristics")
    worst = {name: (0.0, "") for name in ORACLES}
    for camp in campaign_roster():
        pts = camp.sample_points(cfg.points_per_family, rng)
        for (t, x, y) in pts:
            c = char_set(eval_jet2(camp.field, t, (x, y)))
            for char, oracle in ORACLES.items():
                value = getattr(c, char)
                est = oracle(camp.field, t, (x, y))
                err = abs(est - value) / (1.0 + abs(value))
                if err > worst[char][0]:
                    worst[char] = (err, camp.name)
    for char, (err, where) in worst.items():
        res.check(f"{char} closed form vs limit oracle", err <= 1e-6,
                  _fmt(err), "1e-06", detail=f"worst {where}")
    return res


# --------------------------------------------------------------------------
# suite: identities

def suite_identities(rng: np.random.Generator, cfg: VerifySettings) -> SuiteResult:
    res = SuiteResult("identities")
    max1 = 0.0
    max2 = 0.0
    for camp in campaign_roster():
        for (t, x, y) in camp.sample_points(max(20, cfg.points_per_family // 2), rng):
            r1, r2 = identity_residuals(char_set(eval_jet2(camp.field, t, (x, y))))
            max1 = max(max1, abs(r1))
            max2 = max(max2, abs(r2))
    res.check("tangent-spin identity omega = omega_grad - lambda tau_rho",
              max1 <= 1e-12, _fmt(max1), "1e-12")
    res.check("density-rate identity v_rho = -omega_grad + lambda n_rho",
              True, _fmt(max2), asserted=False,
              detail="reported only, known to fail on rotating fields")

    counter = RotatingLinear(omega=0.7, amplitude=1.0, phase=0.0, center=(0.0, 0.0))
    c = char_set(eval_jet2(counter, 0.0, (0.0, 0.0)))
    _, r2 = identity_residuals(c)
    res.check("density-rate counterexample reproduced",
              abs(r2 - 0.7) <= 1e-9, _fmt(r2), "0.7 +/- 1e-09")
    res.notes.append(
        "counterexample: rotating linear field (rate 0.7) at its center, t = 0: "
        f"v_rho = {c.v_rho:.3e}, omega_grad = {c.omega_grad:.6f}, lambda = {c.lam:.3e}; "
        f"residual v_rho + omega_grad - lambda n_rho = {r2:.6f} (the identity "
        "would require 0)")
    return res


# --------------------------------------------------------------------------
# suite: shifts (first-order shift laws leave quadratic remainders)

SHIFT_LAWS = {
    "lambda under tangential shift": (ShiftKind.TANGENTIAL_SPACE, "lam"),
    "lambda under normal shift": (ShiftKind.NORMAL_SPACE, "lam"),
    "lambda following the front": (ShiftKind.TIME_ALONG_FRONT, "lam"),
    "T under tangential shift": (ShiftKind.TANGENTIAL_SPACE, "T"),
    "N under tangential shift": (ShiftKind.TANGENTIAL_SPACE, "N"),
    "T under normal shift": (ShiftKind.NORMAL_SPACE, "T"),
    "N under normal shift": (ShiftKind.NORMAL_SPACE, "N"),
    "T following the front": (ShiftKind.TIME_ALONG_FRONT, "T"),
    "N following the front": (ShiftKind.TIME_ALONG_FRONT, "N"),
}

SHIFT_STEPS = (1e-2, 10 ** -2.5, 1e-3, 10 ** -3.5)


def _shift_error(field, t, x, y, kind, attr, ds):
    jet = eval_jet2(field, t, (x, y))
    c = char_set(jet)
    fr = frenet(jet)
    pred = shift_predict(jet, c, kind, ds)
    if kind is ShiftKind.TANGENTIAL_SPACE:
        ts, rs = t, (x + ds * fr.tx, y + ds * fr.ty)
    elif kind is ShiftKind.NORMAL_SPACE:
        ts, rs = t, (x + ds * fr.nx, y + ds * fr.ny)
    else:
        p = front_displacement(field, t, (x, y), ds)
        ts, rs = t + ds, (x + p * fr.nx, y + p * fr.ny)
    jet_s = eval_jet2(field, ts, rs)
    if attr == "lam":
        return abs(char_set(jet_s).lam - pred.lam)
    return float(np.linalg.norm(getattr(frenet(jet_s), attr) - getattr(pred, attr)))


def suite_shifts(rng: np.random.Generator, cfg: VerifySettings) -> SuiteResult:
    res = SuiteResult("shifts")
    roster = {c.name: c for c in campaign_roster()}
    camps = [roster["moving_gaussian_sum"], roster["rotating_anisotropic_gaussian"]]
    for law, (kind, attr) in SHIFT_LAWS.items():
        slopes = []
        for camp in camps:
            for (t, x, y) in camp.sample_points(cfg.shift_points, rng):
                errs = [_shift_error(camp.field, t, x, y, kind, attr, ds)
                        for ds in SHIFT_STEPS]
                if min(errs) < 1e-14:
                    continue
                slopes.append(float(np.polyfit(np.log10(SHIFT_STEPS),
                                               np.log10(errs), 1)[0]))
        slope = float(np.median(slopes))
        res.check(f"{law}: remainder order", 1.9 <= slope <= 2.1,
                  f"{slope:.3f}", "[1.9, 2.1]")
    return res


# --------------------------------------------------------------------------
# suite: readings (closed-form reading rates against stencil estimates)

def _draw_run(camp: CampaignField, rng: np.random.Generator, vbar: float,
              duration: float, rate_amp: float):
    """A constant-speed run setup (start time, pose, heading program) whose
    probe integration stays clear of degenerate points."""
    for _ in range(60):
        t0 = rng.uniform(*camp.t_range)
        x = rng.uniform(camp.x_range[0] * 0.6, camp.x_range[1] * 0.6)
        y = rng.uniform(camp.y_range[0] * 0.6, camp.y_range[1] * 0.6)
        if eval_jet2(camp.field, t0, (x, y)).grad_norm() < camp.grad_floor:
            continue
        theta0 = rng.uniform(-math.pi, math.pi)
        mean = rng.uniform(-0.3, 0.3) * rate_amp
        coeffs_c = rng.uniform(-rate_amp, rate_amp, size=2)
        coeffs_s = rng.uniform(-rate_amp, rate_amp, size=2)
        prog = SteeringProgram.fourier(mean, coeffs_c, coeffs_s,
                                       base_period=0.9, speed=vbar,
                                       duration=duration)
        init = RobotState(Point2(x, y), theta0, vbar)
        probe = integrate(camp.field, init, prog, 2e-3, t0=t0)
        lo = min(eval_jet2(camp.field, probe.t[i], (probe.x[i], probe.y[i])).grad_norm()
                 for i in range(0, len(probe), 5))
        if lo >= 0.5 * camp.grad_floor:
            return init, t0, prog
    raise RuntimeError(f"no regular run found for {camp.name}")


def _run_errors(camp: CampaignField, traj, prog, vbar: float, t0: float):
    """Max normalized reading-rate errors over interior nodes, plus the
    worst tangential-speed consistency defect."""
    err1 = err2 = vterr = 0.0
    for i in range(2, len(traj) - 2):
        fd1, fd2 = fd_reading_rates(traj, i)
        state = traj.state(i)
        rr = reading_rates(camp.field, traj.t[i], state,
                           prog.theta_dot(traj.t[i] - t0), vbar)
        err1 = max(err1, abs(rr.d_dot - fd1) / (1.0 + abs(rr.d_dot)))
        err2 = max(err2, abs(rr.d_ddot - fd2) / (1.0 + abs(rr.d_ddot)))
        jet = eval_jet2(camp.field, traj.t[i], state.r)
        fr = frenet(jet)
        lam = char_set(jet).lam
        sigma = math.cos(state.theta) * fr.tx + math.sin(state.theta) * fr.ty
        closed = math.copysign(1.0, sigma) * math.sqrt(
            max(0.0, vbar * vbar - (lam + rr.v_delta) ** 2))
        vterr = max(vterr, abs(rr.v_t - closed))
    return err1, err2, vterr


def suite_readings(rng: np.random.Generator, cfg: VerifySettings) -> SuiteResult:
    res = SuiteResult("readings")

    # hand-checkable anchors on the paraboloid
    uphill = reading_rates(RadialParaboloid(), 0.0,
                           RobotState(Point2(2.0, 0.0), math.pi, 1.0), 0.0, 1.0)
    res.check("uphill anchor d_dot = 4", abs(uphill.d_dot - 4.0) <= 1e-9,
              _fmt(uphill.d_dot), "4 +/- 1e-09")
    tang = reading_rates(RadialParaboloid(), 0.0,
                         RobotState(Point2(2.0, 0.0), math.pi / 2, 1.0), 0.0, 1.0)
    res.check("tangential anchor d_ddot = -2", abs(tang.d_ddot + 2.0) <= 1e-9,
              _fmt(tang.d_ddot), "-2 +/- 1e-09")

    worst1 = worst2 = worstvt = 0.0
    where1 = where2 = ""
    duration = 0.6
    for camp in campaign_roster():
        for _ in range(cfg.runs_per_family):
            vbar = rng.uniform(0.8, 1.5)
            init, t0, prog = _draw_run(camp, rng, vbar, duration, rate_amp=4.0)
            traj = integrate(camp.field, init, prog, 1e-3, t0=t0)
            e1, e2, vt = _run_errors(camp, traj, prog, vbar, t0)
            if e1 > worst1:
                worst1, where1 = e1, camp.name
            if e2 > worst2:
                worst2, where2 = e2, camp.name
            worstvt = max(worstvt, vt)
    res.check("d_dot formula vs 5-point stencil", worst1 <= 1e-5,
              _fmt(worst1), "1e-05", detail=f"worst {where1}")
    res.check("d_ddot formula vs 5-point stencil", worst2 <= 1e-4,
              _fmt(worst2), "1e-04", detail=f"worst {where2}")
    res.check("tangential speed consistency", worstvt <= 1e-9,
              _fmt(worstvt), "1e-09")

    # step-halving study on strongly steered runs; errors at the smallest
    # steps sit far above the rounding floor so the stencil order shows
    slopes1, slopes2 = [], []
    steps = (4e-3, 2e-3, 1e-3)
    for camp in campaign_roster():
        for _ in range(2):
            vbar = rng.uniform(1.0, 1.5)
            init, t0, prog = _draw_run(camp, rng, vbar, duration, rate_amp=12.0)
            errs1, errs2 = [], []
            for dt in steps:
                traj = integrate(camp.field, init, prog, dt, t0=t0)
                e1, e2, _ = _run_errors(camp, traj, prog, vbar, t0)
                errs1.append(e1)
                errs2.append(e2)
            if min(errs1) > 1e-13:
                slopes1.append(float(np.polyfit(np.log(steps), np.log(errs1), 1)[0]))
            if min(errs2) > 1e-13:
                slopes2.append(float(np.polyfit(np.log(steps), np.log(errs2), 1)[0]))
    s1, s2 = float(np.median(slopes1)), float(np.median(slopes2))
    res.check("d_dot stencil error order under halving", s1 >= 2.0, f"{s1:.2f}", ">= 2")
    res.check("d_ddot stencil error order under halving", s2 >= 2.0, f"{s2:.2f}", ">= 2")
    return res


# --------------------------------------------------------------------------
# suite: deviation (perpetually rotating robot)

def suite_deviation(rng: np.random.Generator, cfg: VerifySettings) -> SuiteResult:
    res = SuiteResult("deviation")

    worst_excess = -math.inf
    cosine_violations = 0
    worst_cosine = None
    for _ in range(cfg.deviation_runs):
        omega_theta = rng.uniform(0.8, 2.5)
        vbar = rng.uniform(0.5, 1.5)
        sign = -1.0 if rng.uniform() < 0.5 else 1.0
        a, b = rng.uniform(0.0, 2.5, size=2)
        period = rng.uniform(0.7, 2.0)
        duration = rng.uniform(0.3, 0.9)

        def theta_dot(t, a=a, b=b, period=period, sign=sign, w=omega_theta):
            s = a * math.cos(TWO_PI * t / period) + b * math.sin(TWO_PI * t / period)
            return sign * (w + s * s)

        prog = SteeringProgram(theta_dot, lambda t, v=vbar: v, duration)
        traj = integrate(LinearDrift(), RobotState(Point2(0, 0), 0.0, vbar),
                         prog, 1e-3)
        dev = np.hypot(traj.x - traj.x[0], traj.y - traj.y[0])
        phi = np.abs(traj.theta - traj.theta[0])
        ceil_bound = (2.0 * vbar / omega_theta) * np.ceil(phi / TWO_PI)
        worst_excess = max(worst_excess, float(np.max(dev - ceil_bound)))
        qb = np.array([deviation_bound_cosine(vbar, omega_theta, p) for p in phi[::25]])
        over = dev[::25] - qb
        if np.max(over) > 1e-9:
            cosine_violations += 1
            k = int(np.argmax(over))
            if worst_cosine is None or over[k] > worst_cosine[0]:
                worst_cosine = (float(over[k]), float(phi[::25][k]), vbar, omega_theta)
    res.check("ceiling bound holds on all samples of all runs",
              worst_excess <= 1e-6, _fmt(worst_excess), "1e-06",
              detail=f"{cfg.deviation_runs} monotone-rotation runs")
    res.check("cosine-form undershoot observed on random runs", True,
              f"{cosine_violations} runs exceeded it", asserted=False)
    if worst_cosine is not None:
        res.notes.append(
            "cosine form exceeded by a random admissible run: excess "
            f"{worst_cosine[0]:.4f} at turned angle {worst_cosine[1]:.4f} "
            f"(v = {worst_cosine[2]:.3f}, rate floor = {worst_cosine[3]:.3f})")

    # equality case: a constant-rate half circle meets the cosine form
    prog = SteeringProgram.constant(-1.0, 1.0, math.pi)
    traj = integrate(LinearDrift(), RobotState(Point2(0, 0), 0.0, 1.0),
                     prog, math.pi / 40000)
    attained = math.hypot(traj.x[-1], traj.y[-1])
    gap = abs(attained - deviation_bound_cosine(1.0, 1.0, math.pi))
    res.check("half-turn equality case", gap <= 1e-8, _fmt(gap), "1e-08")

    # documented fractional-turn counterexample, reported with numbers
    quarter = integrate(LinearDrift(), RobotState(Point2(0, 0), 0.0, 1.0),
                        SteeringProgram.constant(-1.0, 1.0, math.pi / 2),
                        math.pi / 80000)
    att = math.hypot(quarter.x[-1], quarter.y[-1])
    q = deviation_bound_cosine(1.0, 1.0, math.pi / 2)
    res.check("quarter-turn counterexample reproduced",
              abs(att - math.sqrt(2.0)) <= 1e-8 and att > q,
              _fmt(att), "sqrt(2) +/- 1e-08")
    res.notes.append(
        f"quarter-turn discrepancy: constant-rate circle attains {att:.9f} "
        f"while the cosine form gives {q:.1f}; the ceiling form "
        f"{deviation_bound_ceil(1.0, 1.0, math.pi / 2):.1f} still holds")

    # bang-bang search consistency
    half = empirical_max_deviation(1.0, 1.0, math.pi, 0)
    res.check("bang-bang search: half turn attains 2",
              abs(half - 2.0) <= 1e-6, _fmt(half), "2 +/- 1e-06")
    quart = empirical_max_deviation(1.0, 1.0, math.pi / 2, 0)
    res.check("bang-bang search: quarter turn attains sqrt(2)",
              abs(quart - math.sqrt(2.0)) <= 1e-6, _fmt(quart), "sqrt(2) +/- 1e-06")
    two_half = empirical_max_deviation(1.0, 1.0, 2.5 * math.pi, 2)
    ceil_25 = deviation_bound_ceil(1.0, 1.0, 2.5 * math.pi)
    res.check("bang-bang search stays under ceiling at 2.5 turns-of-pi",
              two_half <= ceil_25 + 1e-9, _fmt(two_half), f"<= {ceil_25:g}")
    res.notes.append(
        f"best bang-bang profile found at turned angle 2.5 pi deviates "
        f"{two_half:.6f} (> cosine form "
        f"{deviation_bound_cosine(1.0, 1.0, 2.5 * math.pi):.1f}, "
        f"<= ceiling {ceil_25:.1f})")

    phis = [0.5, 1.5, 3.0, 4.5, 6.0, 7.5]
    vals = [empirical_max_deviation(1.0, 1.0, p, 2) for p in phis]
    mono_phi = all(b >= a - 1e-7 for a, b in zip(vals, vals[1:]))
    by_switch = [empirical_max_deviation(1.0, 1.0, 5.0, k) for k in range(4)]
    mono_k = all(b >= a - 1e-9 for a, b in zip(by_switch, by_switch[1:]))
    res.check("bang-bang search monotone in angle and switch budget",
              mono_phi and mono_k, f"phi {mono_phi}, switches {mono_k}", "monotone")
    return res


# --------------------------------------------------------------------------
# suite: rotation (gradient-rotation envelope over space-time boxes)

def rotation_cases() -> list[tuple[str, FieldSpec, SpaceTimeBox]]:
    square = ((1.0, 1.0), (2.5, 1.0), (2.5, 2.5), (1.0, 2.5))
    gauss_sq = ((0.8, -1.3), (1.6, -1.3), (1.6, -0.5), (0.8, -0.5))
    return [
        ("rotating_linear", RotatingLinear(omega=0.7, phase=0.0, center=(0.0, 0.0)),
         SpaceTimeBox((0.0, 2.0), square)),
        ("radial_paraboloid", RadialParaboloid(coefficient=0.8, center=(0.2, -0.3),
                                               velocity=(0.3, 0.2)),
         SpaceTimeBox((0.0, 1.0), square)),
        ("moving_gaussian_sum", MovingGaussianSum((
            GaussianTerm(1.0, (0.3, -0.2), (0.25, -0.15), 0.8),
            GaussianTerm(-0.6, (-0.5, 0.6), (-0.1, 0.3), 1.1))),
         SpaceTimeBox((0.0, 1.0), gauss_sq)),
    ]


def suite_rotation(rng: np.random.Generator, cfg: VerifySettings) -> SuiteResult:
    res = SuiteResult("rotation")
    for name, field, box in rotation_cases():
        pair_rng = np.random.default_rng(rng.integers(0, 2 ** 63))
        report = rotation_bound(field, box, grid=12, pairs=0)
        pairs = sample_pairs(box, cfg.rotation_pairs, pair_rng)
        worst_over = -math.inf
        worst_gap = 0.0
        empirical = 0.0
        for p0, p1 in pairs:
            bq = gradient_rotation(field, p0, p1)
            bt = gradient_rotation_tracking(field, p0, p1)
            empirical = max(empirical, abs(bq))
            worst_over = max(worst_over, abs(bq) - report.bound)
            worst_gap = max(worst_gap, abs(bq - bt))
        res.check(f"{name}: |rotation| within envelope", worst_over <= 1e-6,
                  _fmt(worst_over), "1e-06",
                  detail=f"{len(pairs)} pairs, bound {report.bound:.6f}")
        res.check(f"{name}: quadrature vs angle tracking", worst_gap <= 1e-6,
                  _fmt(worst_gap), "1e-06")

        anti = 0.0
        for p0, p1 in pairs[:25]:
            anti = max(anti, abs(gradient_rotation(field, p0, p1)
                                 + gradient_rotation(field, p1, p0)))
        res.check(f"{name}: antisymmetry under endpoint swap", anti <= 1e-8,
                  _fmt(anti), "1e-08")

        sups = [rotation_bound(field, box, grid=g, pairs=0) for g in (8, 15, 29)]
        mono = all(a.sup_omega_grad <= b.sup_omega_grad + 1e-15
                   and a.sup_curv_mix <= b.sup_curv_mix + 1e-15
                   for a, b in zip(sups, sups[1:]))
        res.check(f"{name}: grid suprema nondecreasing under refinement",
                  mono, str(mono), "nested grids")

        if name == "rotating_linear":
            res.check("rotating_linear: exact envelope 0.7 x 2.0",
                      abs(report.bound - 1.4) <= 1e-8, _fmt(report.bound),
                      "1.4 +/- 1e-08")
            res.check("rotating_linear: corner pair attains the envelope",
                      abs(empirical - 1.4) <= 1e-8, _fmt(empirical),
                      "1.4 +/- 1e-08")
    return res


# --------------------------------------------------------------------------
# engine

SUITES = {
    "characteristics": suite_characteristics,
    "identities": suite_identities,
    "shifts": suite_shifts,
    "readings": suite_readings,
    "deviation": suite_deviation,
    "rotation": suite_rotation,
}

SUITE_ORDER = ("characteristics", "identities", "shifts", "readings",
               "deviation", "rotation")


def run_suites(names: list[str], seed: int,
               settings: VerifySettings | None = None) -> VerifyReport:
    """Run the named suites with per-suite seeded generators.

    Each suite draws from default_rng([seed, suite_index]), so results do
    not depend on which other suites were selected. Unexpected runtime
    errors are captured as suite failures rather than aborting the run.
    """
    settings = settings or VerifySettings()
    unknown = sorted(set(names) - set(SUITES))
    if unknown:
        raise ValueError(f"unknown suite names: {', '.join(unknown)}; "
                         f"known: {', '.join(SUITE_ORDER)}")
    results = []
    for name in SUITE_ORDER:
        if name not in names:
            continue
        rng = np.random.default_rng([seed, SUITE_ORDER.index(name)])
        try:
            results.append(SUITES[name](rng, settings))
        except DegeneratePointError as exc:
            bad = SuiteResult(name)
            bad.failures.append(f"degenerate point during campaign: {exc}")
            results.append(bad)
        except Exception as exc:  # noqa: BLE001 - reported, exit code 1
            bad = SuiteResult(name)
            bad.failures.append(
                f"{type(exc).__name__}: {exc}\n{traceback.format_exc(limit=3)}")
            results.append(bad)
    return VerifyReport(seed, results)
