import math

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from models.Errors import InvariantViolation

TWO_PI = 2.0 * math.pi

Vec3 = tuple[float, float, float]


def normalize_phase(phase: float) -> float:
    """Reduce an angle into [0, 2π)."""
    phase = math.fmod(phase, TWO_PI)
    if phase < 0.0:
        phase += TWO_PI
    if phase >= TWO_PI:
        phase = 0.0
    return phase


class HelixSpec(BaseModel):
    """
    One infinite circular helix.

    The curve is anchor + (pitch·t/2π)·d + radius·cos(t+phase)·u
    + handedness·radius·sin(t+phase)·v, with (u, v, d) the deterministic frame
    of the axis direction. All lengths are in lattice units.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    anchor: Vec3
    direction: Vec3
    radius: float
    pitch: float
    phase: float = 0.0
    handedness: int = 1
    tube_radius: float = 0.0

    @field_validator("phase")
    @classmethod
    def _normalize_phase(cls, value: float) -> float:
        return normalize_phase(value)

    # --------------------------
    # Array views
    # --------------------------

    def anchor_array(self) -> np.ndarray:
        return np.array(self.anchor, dtype=float)

    def direction_array(self) -> np.ndarray:
        return np.array(self.direction, dtype=float)

    # --------------------------
    # Invariants
    # --------------------------

    def check(self) -> "HelixSpec":
        """
        Check the helix invariants.

        Returns:
            HelixSpec: self, for chaining.

        Raises:
            InvariantViolation: naming the first failed invariant.
        """
        values = list(self.anchor) + list(self.direction) + [self.radius, self.pitch, self.phase, self.tube_radius]
        if not all(math.isfinite(v) for v in values):
            raise InvariantViolation("finite", "helix fields must be finite numbers")
        if self.handedness not in (1, -1):
            raise InvariantViolation("handedness", f"expected 1 or -1, got {self.handedness}")
        if self.radius < 0:
            raise InvariantViolation("radius", f"winding radius must be >= 0, got {self.radius}")
        if self.pitch <= 0:
            raise InvariantViolation("pitch", f"pitch must be > 0, got {self.pitch}")
        if self.tube_radius < 0:
            raise InvariantViolation("tube_radius", f"tube radius must be >= 0, got {self.tube_radius}")
        if abs(float(np.linalg.norm(self.direction_array())) - 1.0) > 1e-9:
            raise InvariantViolation("direction", "axis direction must be a unit vector")
        return self

    def with_updates(self, **changes) -> "HelixSpec":
        """Copy with changed fields, re-running field validation."""
        data = self.model_dump()
        data.update(changes)
        return HelixSpec(**data)


class CanonicalHelix(BaseModel):
    """
    Lattice-orbit representative of a helix.

    The direction is the family representative, the anchor is the axis point in
    the reduced transverse cell and the phase is expressed for that anchor.
    """

    model_config = ConfigDict(frozen=True)

    anchor: Vec3
    direction: Vec3
    radius: float
    pitch: float
    phase: float
    handedness: int
    tube_radius: float

    def matches(self, other: "CanonicalHelix", tol: float = 1e-9) -> bool:
        """
        Field-wise equality within tolerance (phase compared on the circle,
        ignored for straight rods).
        """
        if self.handedness != other.handedness:
            return False
        for a, b in zip(self.anchor + self.direction, other.anchor + other.direction):
            if abs(a - b) > tol:
                return False
        for a, b in ((self.radius, other.radius), (self.pitch, other.pitch), (self.tube_radius, other.tube_radius)):
            if abs(a - b) > tol:
                return False
        if self.radius > 0:
            delta = abs(self.phase - other.phase) % TWO_PI
            if min(delta, TWO_PI - delta) > tol:
                return False
        return True
