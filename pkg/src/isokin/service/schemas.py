"""Pydantic request/response models; the wire format for service and CLI.

Scenario documents (TOML on disk, JSON on the wire) validate into these
models, which convert to the plain core objects via ``to_core`` methods.
Floats survive the JSON round trip exactly, so a remote client reproduces
local results byte for byte.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .. import fields as core_fields
from ..kinematics import SteeringProgram
from ..oracles import OracleSettings
from ..suites import SUITE_ORDER, VerifySettings


class LinearDriftModel(BaseModel):
    family: Literal["linear_drift"]
    gradient: tuple[float, float] = (0.0, 1.0)
    time_slope: float = -2.0

    def to_core(self) -> core_fields.LinearDrift:
        return core_fields.LinearDrift(self.gradient, self.time_slope)


class AcceleratingRampModel(BaseModel):
    family: Literal["accelerating_ramp"]
    gradient: tuple[float, float] = (0.0, 1.0)
    front_speed: float = 2.0
    front_accel: float = 9.81

    def to_core(self) -> core_fields.AcceleratingRamp:
        return core_fields.AcceleratingRamp(self.gradient, self.front_speed,
                                            self.front_accel)


class RotatingLinearModel(BaseModel):
    family: Literal["rotating_linear"]
    omega: float = 0.7
    amplitude: float = 1.0
    phase: float = 0.0
    center: tuple[float, float] = (0.0, 0.0)

    def to_core(self) -> core_fields.RotatingLinear:
        return core_fields.RotatingLinear(self.omega, self.amplitude,
                                          self.phase, self.center)


class RadialParaboloidModel(BaseModel):
    family: Literal["radial_paraboloid"]
    coefficient: float = Field(default=1.0, gt=0)
    center: tuple[float, float] = (0.0, 0.0)
    velocity: tuple[float, float] = (0.0, 0.0)

    def to_core(self) -> core_fields.RadialParaboloid:
        return core_fields.RadialParaboloid(self.coefficient, self.center,
                                            self.velocity)


class GaussianTermModel(BaseModel):
    amplitude: float
    center: tuple[float, float]
    velocity: tuple[float, float] = (0.0, 0.0)
    width: float = Field(gt=0)

    def to_core(self) -> core_fields.GaussianTerm:
        return core_fields.GaussianTerm(self.amplitude, self.center,
                                        self.velocity, self.width)


class MovingGaussianSumModel(BaseModel):
    family: Literal["moving_gaussian_sum"]
    terms: list[GaussianTermModel] = Field(min_length=1)

    def to_core(self) -> core_fields.MovingGaussianSum:
        return core_fields.MovingGaussianSum(tuple(t.to_core() for t in self.terms))


class RotatingAnisotropicGaussianModel(BaseModel):
    family: Literal["rotating_anisotropic_gaussian"]
    amplitude: float = 1.0
    center: tuple[float, float] = (0.0, 0.0)
    velocity: tuple[float, float] = (0.0, 0.0)
    widths: tuple[float, float] = (0.8, 1.4)
    omega: float = 0.5
    phase: float = 0.0

    @field_validator("widths")
    @classmethod
    def _positive_widths(cls, v):
        if v[0] <= 0 or v[1] <= 0:
            raise ValueError("widths must be strictly positive")
        return v

    def to_core(self) -> core_fields.RotatingAnisotropicGaussian:
        return core_fields.RotatingAnisotropicGaussian(
            self.amplitude, self.center, self.velocity, self.widths,
            self.omega, self.phase)


FieldModel = Annotated[Union[LinearDriftModel, AcceleratingRampModel,
                             RotatingLinearModel, RadialParaboloidModel,
                             MovingGaussianSumModel,
                             RotatingAnisotropicGaussianModel],
                       Field(discriminator="family")]


class RobotModel(BaseModel):
    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0
    v_max: float = Field(default=1.0, gt=0)


class SteeringModel(BaseModel):
    kind: Literal["constant", "piecewise", "sinusoid"] = "constant"
    duration: float = Field(default=2.0, gt=0)
    dt: float = Field(default=1e-3, gt=0)
    theta_dot: float = 0.0
    speed: Optional[float] = None  # None means v_max
    # piecewise
    switch_times: list[float] = []
    theta_dots: list[float] = []
    speeds: list[float] = []
    # sinusoid
    mean: float = 0.0
    amplitude: float = 0.0
    period: float = 1.0
    phase: float = 0.0

    @model_validator(mode="after")
    def _piecewise_shapes(self):
        if self.kind == "piecewise":
            if len(self.theta_dots) != len(self.switch_times) + 1:
                raise ValueError("piecewise steering needs one more theta_dot "
                                 "than switch times")
            if self.speeds and len(self.speeds) != len(self.switch_times) + 1:
                raise ValueError("piecewise speeds must match theta_dots length")
        return self

    def to_core(self, v_max: float) -> SteeringProgram:
        speed = v_max if self.speed is None else self.speed
        for s in [speed, *self.speeds]:
            if not 0.0 <= s <= v_max:
                raise ValueError(f"steering speed {s} outside [0, v_max={v_max}]")
        if self.kind == "constant":
            return SteeringProgram.constant(self.theta_dot, speed, self.duration)
        if self.kind == "piecewise":
            speeds = self.speeds or [speed] * (len(self.switch_times) + 1)
            return SteeringProgram.piecewise_constant(
                self.switch_times, self.theta_dots, speeds, self.duration)
        import math

        def theta_dot(t: float, m=self.mean, a=self.amplitude,
                      w=2.0 * 3.141592653589793 / self.period, p=self.phase) -> float:
            return m + a * math.sin(w * t + p)

        return SteeringProgram(theta_dot, lambda t: speed, self.duration)


class OracleModel(BaseModel):
    step: Optional[float] = Field(default=None, gt=0)
    richardson_levels: int = Field(default=2, ge=1)
    root_tol: float = Field(default=1e-12, gt=0)
    max_iter: int = Field(default=64, ge=8)

    def to_core(self) -> OracleSettings:
        return OracleSettings(self.step, self.richardson_levels,
                              self.root_tol, self.max_iter)


class VerifyModel(BaseModel):
    suites: list[str] = list(SUITE_ORDER)
    points_per_family: int = Field(default=100, ge=1)
    shift_points: int = Field(default=5, ge=1)
    runs_per_family: int = Field(default=20, ge=1)
    deviation_runs: int = Field(default=1000, ge=1)
    rotation_pairs: int = Field(default=500, ge=0)

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, v):
        unknown = sorted(set(v) - set(SUITE_ORDER))
        if unknown:
            raise ValueError(f"unknown suites {unknown}; known: {list(SUITE_ORDER)}")
        return v

    def to_core(self) -> VerifySettings:
        return VerifySettings(self.points_per_family, self.shift_points,
                              self.runs_per_family, self.deviation_runs,
                              self.rotation_pairs)


class ExportModel(BaseModel):
    isoline_times: list[float] = [0.0]
    isoline_levels: Optional[list[float]] = None  # None: level under the robot
    grid_times: list[float] = [0.0]
    grid_extent: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    grid_n: int = Field(default=21, ge=2)
    march_step: Optional[float] = Field(default=None, gt=0)


class ScenarioModel(BaseModel):
    field: FieldModel
    robot: RobotModel = RobotModel()
    steering: SteeringModel = SteeringModel()
    oracle: OracleModel = OracleModel()
    verify: VerifyModel = VerifyModel()
    export: ExportModel = ExportModel()
    seed: int = 0
    output_dir: str = "out"
    eps: Optional[float] = Field(default=None, gt=0)


# ---------------------------------------------------------------------------
# requests and responses

class CharacteristicsRequest(BaseModel):
    scenario: ScenarioModel
    t: float = 0.0
    x: float
    y: float


class FrameOut(BaseModel):
    T: tuple[float, float]
    N: tuple[float, float]


class CharacteristicsResponse(BaseModel):
    value: float
    grad: tuple[float, float]
    frame: FrameOut
    characteristics: dict[str, float]
    residual_tangent_spin: float
    residual_density_rate: float
    density_rate_flagged: bool


class VerifyRequest(BaseModel):
    scenario: ScenarioModel


class CheckOut(BaseModel):
    name: str
    status: str
    passed: bool
    asserted: bool
    observed: str
    threshold: str
    detail: str


class SuiteOut(BaseModel):
    name: str
    checks: list[CheckOut]
    notes: list[str]
    failures: list[str]


class VerifyResponse(BaseModel):
    report: str
    suites: list[SuiteOut]
    all_asserted_passed: bool
    failures: list[str]


class ExportRequest(BaseModel):
    scenario: ScenarioModel


class ExportResponse(BaseModel):
    files: dict[str, str]


class ErrorEnvelope(BaseModel):
    code: str
    message: str
