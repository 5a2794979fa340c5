from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.Helix import Vec3
from models.Weave import ChiralityClass


class DistanceWitness(BaseModel):
    """
    Closest pair of points between curve 1 at parameter `s` and the image of
    curve 2 at parameter `t` shifted by the lattice vector `translation`.
    """

    model_config = ConfigDict(frozen=True)

    distance: float = Field(ge=0)
    s: float
    t: float
    translation: Vec3
    non_isolated: bool = False


class Contact(BaseModel):
    model_config = ConfigDict(frozen=True)

    helix_i: int
    helix_j: int
    witness: DistanceWitness
    gap: float
    midpoint: Vec3


class ClearanceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_gap: float
    min_distance: float
    witness: DistanceWitness
    pair: tuple[int, int]
    pair_count_evaluated: int
    contacts: tuple[Contact, ...] = ()

    @property
    def interwoven(self) -> bool:
        """Positive clearance: the tubes weave without intersecting."""
        return self.min_gap > 0


class CrossingSignature(BaseModel):
    model_config = ConfigDict(frozen=True)

    participants: int = Field(ge=2)
    pair_contacts: tuple[int, ...]
    cluster_diameter: float
    coplanarity: float

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        """Signature class: participant count plus the contacts-per-pair multiset."""
        return (self.participants, self.pair_contacts)

    def label(self) -> str:
        return f"p{self.participants}:{'-'.join(str(c) for c in self.pair_contacts)}"


class ClassificationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    histogram: dict[str, int]
    signatures: tuple[CrossingSignature, ...]
    classes: tuple[tuple[int, tuple[int, ...]], ...]
    passed: bool
    crossing_names: tuple[str, ...] = ()


class SweepSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    winding_radius: float
    histogram: dict[str, int]
    min_gap: float


class SweepReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    samples: tuple[SweepSample, ...]
    transitions: tuple[float, ...] = ()

    @model_validator(mode="after")
    def _radii_increasing(self) -> "SweepReport":
        radii = [s.winding_radius for s in self.samples]
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("sweep radii must be strictly increasing")
        return self

    def to_dataframe(self) -> pd.DataFrame:
        """
        Returns:
            pd.DataFrame: One row per sampled radius with the histogram flattened to a label.
        """
        rows = [
            {
                "winding_radius": s.winding_radius,
                "classes": ", ".join(f"{k} x{v}" for k, v in sorted(s.histogram.items())),
                "dominant_class": max(s.histogram, key=s.histogram.get) if s.histogram else "",
                "min_gap": s.min_gap,
            }
            for s in self.samples
        ]
        return pd.DataFrame(rows, columns=["winding_radius", "classes", "dominant_class", "min_gap"])


class OptimizeConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_iterations: int = Field(default=50, ge=1)
    step_init: float = 0.5
    step_min: float = 1e-3
    seed: int = 0
    tolerance: float = 1e-12
    restarts: int = Field(default=0, ge=0)
    grid_n: int = Field(default=32, ge=16)

    @model_validator(mode="after")
    def _steps_ordered(self) -> "OptimizeConfig":
        if not self.step_min < self.step_init:
            raise ValueError("step_min must be smaller than step_init")
        return self


class FreezeConfig(BaseModel):
    """Settings of a class-window search; lengths in units of the cell edge."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    step: float = Field(default=0.01, gt=0)
    width: float = Field(default=1e-4, gt=0)
    r_min: float = Field(default=0.02, ge=0)
    r_max: float = Field(default=0.5, gt=0)
    grid_n: int = Field(default=96, ge=16)
    gap_tol_factor: float = Field(default=0.02, gt=0)
    cluster_radius_factor: float = Field(default=0.25, gt=0)
    tube_fit_margin_factor: float = Field(default=0.01, ge=0)

    @model_validator(mode="after")
    def _ordered(self) -> "FreezeConfig":
        if not self.width < self.step:
            raise ValueError("width must be smaller than step")
        if not self.r_min < self.r_max:
            raise ValueError("r_min must be smaller than r_max")
        return self


class FreezeRecord(BaseModel):
    """
    Result of freezing one catalog row: the radius interval on which the crossing
    histogram and chirality stay those of the seed radius, and its midpoint.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    seed_radius: float
    window: tuple[float, float]
    radius: float
    histogram: dict[str, int]
    min_centerline_distance: float
    chirality: ChiralityClass
    recipe: dict[str, Any]
    config: FreezeConfig


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    applicable: bool = True
    details: dict[str, Any] = Field(default_factory=dict)


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    checks: dict[str, CheckResult]
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values() if c.applicable)


class ChiralityCensus(BaseModel):
    model_config = ConfigDict(frozen=True)

    chirality: ChiralityClass
    right: int
    left: int
    components: tuple[tuple[int, ...], ...] = ()
