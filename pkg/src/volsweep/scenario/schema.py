"""Declarative scenario files: one problem, its solver settings and the checks to run.

Every component is a discriminated union on ``kind``; ``build`` turns a validated
scenario into a ProblemSpec and a SolverConfig.
"""
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Annotated

from ..dynamics import (
    AffineForcing,
    ConstantWeight,
    ExponentialWeight,
    ProblemSpec,
    SeparableKernel,
    ZeroKernel,
)
from ..paths import CallablePath, ConstantPath, LinearPath, Path, SinusoidalPath
from ..sets import Ball, Box, HalfSpace, MovingSet, Sphere, TranslatedConvex, WholeSpace
from ..solver import SolverConfig

Vector = List[float]
Matrix = List[List[float]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -- paths -----------------------------------------------------------------


class ConstantPathSpec(_Strict):
    kind: Literal["constant"] = "constant"
    value: Union[float, Vector]

    def build(self) -> Path:
        return ConstantPath(self.value)


class LinearPathSpec(_Strict):
    kind: Literal["linear"]
    start: Union[float, Vector]
    velocity: Union[float, Vector]
    t0: float = 0.0

    @model_validator(mode="after")
    def _same_shape(self) -> "LinearPathSpec":
        if np.shape(self.start) != np.shape(self.velocity):
            raise ValueError("start and velocity must have the same shape")
        return self

    def build(self) -> Path:
        return LinearPath(self.start, self.velocity, self.t0)


class SinusoidalPathSpec(_Strict):
    kind: Literal["sinusoidal"]
    offset: Union[float, Vector]
    amplitude: Union[float, Vector]
    omega: float
    phase: float = 0.0

    @model_validator(mode="after")
    def _same_shape(self) -> "SinusoidalPathSpec":
        if np.shape(self.offset) != np.shape(self.amplitude):
            raise ValueError("offset and amplitude must have the same shape")
        return self

    def build(self) -> Path:
        return SinusoidalPath(self.offset, self.amplitude, self.omega, self.phase)


PathSpec = Annotated[
    Union[ConstantPathSpec, LinearPathSpec, SinusoidalPathSpec], Field(discriminator="kind")
]
PathField = Union[float, Vector, PathSpec]


def build_path(value: PathField) -> Path:
    if isinstance(value, BaseModel):
        return value.build()
    return ConstantPath(value)


def _lipschitz_motion(path: Path) -> Optional[Path]:
    """v(t) = L t for a path with speed bound L; None for constant paths."""
    if path.is_constant:
        return None
    return LinearPath(0.0, path.speed_bound)


# -- sets ------------------------------------------------------------------


class _SetSpec(_Strict):
    motion: Optional[PathSpec] = Field(
        default=None, description="Declared motion modulus v(t); derived when omitted"
    )

    def _motion(self, derived: Optional[Path]) -> Optional[Path]:
        if self.motion is not None:
            return self.motion.build()
        return derived


class WholeSpaceSpec(_SetSpec):
    kind: Literal["whole-space"]

    def build(self, dim: int) -> MovingSet:
        return WholeSpace(dim, motion=self._motion(None))


class HalfSpaceSpec(_SetSpec):
    kind: Literal["half-space"]
    normal: Vector
    offset: PathField = 0.0

    def build(self, dim: int) -> MovingSet:
        offset = build_path(self.offset)
        scale = float(np.linalg.norm(self.normal)) or 1.0
        derived = None
        if not offset.is_constant:
            # Hausdorff distance of two slices is |b(t) - b(s)| / ||a||
            derived = CallablePath(
                lambda t: offset.scalar(t) / scale,
                derivative=lambda t: float(offset.derivative(t)) / scale,
            )
        return HalfSpace(self.normal, offset, motion=self._motion(derived))


class BoxSpec(_SetSpec):
    kind: Literal["box"]
    lower: Vector
    upper: Vector

    def build(self, dim: int) -> MovingSet:
        return Box(self.lower, self.upper, motion=self._motion(None))


class BallSpec(_SetSpec):
    kind: Literal["ball"]
    center: PathField
    radius: float = Field(ge=0.0)

    def build(self, dim: int) -> MovingSet:
        center = build_path(self.center)
        return Ball(center, self.radius, motion=self._motion(_lipschitz_motion(center)))


class SphereSpec(_SetSpec):
    kind: Literal["sphere"]
    center: PathField
    radius: float = Field(gt=0.0)

    def build(self, dim: int) -> MovingSet:
        center = build_path(self.center)
        return Sphere(center, self.radius, motion=self._motion(_lipschitz_motion(center)))


StaticConvexSpec = Annotated[
    Union[WholeSpaceSpec, HalfSpaceSpec, BoxSpec, BallSpec], Field(discriminator="kind")
]


class TranslatedSpec(_SetSpec):
    kind: Literal["translated-convex"]
    base: StaticConvexSpec
    translation: PathField

    def build(self, dim: int) -> MovingSet:
        translation = build_path(self.translation)
        return TranslatedConvex(
            self.base.build(dim), translation, motion=self._motion(_lipschitz_motion(translation))
        )


SetSpec = Annotated[
    Union[WholeSpaceSpec, HalfSpaceSpec, BoxSpec, BallSpec, SphereSpec, TranslatedSpec],
    Field(discriminator="kind"),
]


# -- forcing and kernel ----------------------------------------------------


class AffineForcingSpec(_Strict):
    kind: Literal["affine"] = "affine"
    A: Matrix
    b: PathField = 0.0
    beta: Optional[float] = Field(default=None, ge=0.0, description="Override of beta(t)")
    kappa: Optional[float] = Field(default=None, ge=0.0, description="Override of kappa_r(t)")

    def build(self) -> AffineForcing:
        return AffineForcing(self.A, build_path(self.b), growth=self.beta, lipschitz=self.kappa)


class ConstantWeightSpec(_Strict):
    kind: Literal["constant"] = "constant"
    value: float


class ExponentialWeightSpec(_Strict):
    kind: Literal["exponential"]
    scale: float
    rate: float = Field(ge=0.0)


WeightSpec = Annotated[
    Union[ConstantWeightSpec, ExponentialWeightSpec], Field(discriminator="kind")
]


class ZeroKernelSpec(_Strict):
    kind: Literal["zero"]

    def build(self, dim: int, t0: float):
        return ZeroKernel(dim)


class SeparableKernelSpec(_Strict):
    kind: Literal["separable"]
    weight: Union[float, WeightSpec] = 1.0
    B: Matrix
    c: Union[float, Vector] = 0.0
    sigma: Optional[float] = Field(default=None, ge=0.0, description="Override of sigma(t, s)")
    mu: Optional[float] = Field(default=None, ge=0.0, description="Override of mu_r(t)")

    def build(self, dim: int, t0: float):
        if isinstance(self.weight, ExponentialWeightSpec):
            weight = ExponentialWeight(self.weight.scale, self.weight.rate)
        elif isinstance(self.weight, ConstantWeightSpec):
            weight = ConstantWeight(self.weight.value)
        else:
            weight = ConstantWeight(self.weight)
        growth = None
        if self.sigma is not None:
            sigma = self.sigma
            growth = lambda t, s: np.full(np.shape(s), sigma)  # noqa: E731
        return SeparableKernel(weight, self.B, self.c, t0=t0, growth=growth, lipschitz=self.mu)


KernelSpec = Annotated[Union[ZeroKernelSpec, SeparableKernelSpec], Field(discriminator="kind")]


class PerturbationSpec(_Strict):
    path: PathField = 0.0
    R: Optional[float] = Field(default=None, ge=0.0, description="Declared bound on ||z'(t)||")


# -- solver and checks -----------------------------------------------------


class SolverSpec(_Strict):
    scheme: Literal["catching-up", "fixed-point"] = "catching-up"
    n: int = Field(default=400, ge=2)
    tol_fp: float = Field(default=1e-8, gt=0.0)
    max_iterations: int = Field(default=50, ge=1)
    tol_feas: float = Field(default=1e-9, gt=0.0)
    reparametrize: bool = False

    def build(self) -> SolverConfig:
        return SolverConfig(**self.model_dump())


class DependenceCheck(_Strict):
    scenario: str = Field(description="Sibling scenario file, relative to this one")
    variant: Literal["general-z", "shared-z", "both"] = "both"


class VerifySpec(_Strict):
    envelopes: bool = True
    dependence: Optional[DependenceCheck] = None
    slow: bool = False
    gronwall: bool = Field(default=False, description="Run the built-in Gronwall dominance cases")
    schemes: bool = Field(default=False, description="Compare catching-up with the fixed point")


class Scenario(_Strict):
    name: str
    dimension: int = Field(ge=1)
    interval: Tuple[float, float]
    set: SetSpec
    forcing: AffineForcingSpec
    kernel: KernelSpec = Field(default_factory=lambda: ZeroKernelSpec(kind="zero"))
    z: PerturbationSpec = Field(default_factory=PerturbationSpec)
    x0: Vector
    solver: SolverSpec = Field(default_factory=SolverSpec)
    verify: VerifySpec = Field(default_factory=VerifySpec)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "Scenario":
        t0, t_end = self.interval
        if not t_end > t0:
            raise ValueError(f"interval [{t0}, {t_end}] is empty")
        if len(self.x0) != self.dimension:
            raise ValueError(f"x0 has {len(self.x0)} entries, dimension is {self.dimension}")
        if len(self.forcing.A) != self.dimension:
            raise ValueError(f"forcing.A has {len(self.forcing.A)} rows, dimension is {self.dimension}")
        return self

    def build(self) -> Tuple[ProblemSpec, SolverConfig]:
        t0, t_end = self.interval
        spec = ProblemSpec(
            name=self.name,
            t0=t0,
            t_end=t_end,
            moving_set=self.set.build(self.dimension),
            z=build_path(self.z.path),
            rate_bound=self.z.R,
            forcing=self.forcing.build(),
            kernel=self.kernel.build(self.dimension, t0),
            x0=np.asarray(self.x0, dtype=float),
            feasibility_tol=self.solver.tol_feas,
        )
        return spec, self.solver.build()
