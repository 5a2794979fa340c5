from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict

from models.Helix import HelixSpec
from models.Lattice import Lattice
from models.Weave import (
    ChiralityClass,
    ConstructionStatus,
    ExpectedProperties,
    PackingLabel,
    Tier,
    WeaveSpec,
)

# On-disk layout of a .weave.json file. Field names follow the file format,
# which differs from the in-memory models in a few places.


class WeaveFileHelix(BaseModel):
    model_config = ConfigDict(extra="forbid")

    anchor: tuple[float, float, float]
    direction: tuple[float, float, float]
    radius: float
    pitch: float
    phase: float
    handedness: int
    tube_radius: float


class WeaveFileExpected(BaseModel):
    model_config = ConfigDict(extra="forbid")

    packing: PackingLabel
    helices_per_crossing: list[int]
    helices_per_unit: int
    chirality: Literal["one", "double", "both"]
    crossing_types: list[str]
    tier: Tier
    physical_model: bool = False


class WeaveFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    lattice_period: float
    lattice_centering: Literal["P", "I"] = "P"
    construction_status: Literal["constructed", "unconstructed"]
    helices: list[WeaveFileHelix]
    expected: WeaveFileExpected
    provenance: Optional[dict[str, Any]] = None

    def to_spec(self) -> WeaveSpec:
        """Domain object; helix invariants are checked separately by the catalog."""
        expected = ExpectedProperties(
            packing_label=self.expected.packing,
            helices_per_crossing=tuple(self.expected.helices_per_crossing),
            helices_per_unit=self.expected.helices_per_unit,
            chirality_class=ChiralityClass(self.expected.chirality.upper()),
            crossing_type_names=tuple(self.expected.crossing_types),
            tier=self.expected.tier,
            physical_model=self.expected.physical_model,
        )
        return WeaveSpec(
            name=self.name,
            lattice=Lattice(period=self.lattice_period, centering=self.lattice_centering),
            helices=tuple(HelixSpec(**h.model_dump()) for h in self.helices),
            expected=expected,
            construction_status=ConstructionStatus(self.construction_status.upper()),
            provenance=self.provenance,
        )

    @staticmethod
    def document(w: WeaveSpec) -> dict:
        """Plain dict in file field order, ready for 17-digit serialization."""
        doc = {
            "name": w.name,
            "lattice_period": w.lattice.period,
            "lattice_centering": w.lattice.centering,
            "construction_status": w.construction_status.value.lower(),
            "helices": [
                {
                    "anchor": list(h.anchor),
                    "direction": list(h.direction),
                    "radius": h.radius,
                    "pitch": h.pitch,
                    "phase": h.phase,
                    "handedness": h.handedness,
                    "tube_radius": h.tube_radius,
                }
                for h in w.helices
            ],
            "expected": {
                "packing": w.expected.packing_label.value,
                "helices_per_crossing": list(w.expected.helices_per_crossing),
                "helices_per_unit": w.expected.helices_per_unit,
                "chirality": w.expected.chirality_class.value.lower(),
                "crossing_types": list(w.expected.crossing_type_names),
                "tier": w.expected.tier.value,
                "physical_model": w.expected.physical_model,
            },
        }
        if w.provenance is not None:
            doc["provenance"] = w.provenance
        return doc
