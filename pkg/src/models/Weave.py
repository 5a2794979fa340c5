from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from models.Helix import HelixSpec
from models.Lattice import Lattice


class PackingLabel(str, Enum):
    PI_PLUS_MINUS = "PI_PLUS_MINUS"
    PI_STAR = "PI_STAR"
    GAMMA = "GAMMA"
    OMEGA_PLUS_MINUS = "OMEGA_PLUS_MINUS"
    SIGMA_PLUS_MINUS = "SIGMA_PLUS_MINUS"
    SIGMA_STAR = "SIGMA_STAR"
    NONE = "NONE"


class ChiralityClass(str, Enum):
    ONE = "ONE"
    DOUBLE = "DOUBLE"
    BOTH = "BOTH"


class Tier(str, Enum):
    A = "A"
    B = "B"
    C = "C"


class ConstructionStatus(str, Enum):
    CONSTRUCTED = "CONSTRUCTED"
    UNCONSTRUCTED = "UNCONSTRUCTED"


class ExpectedProperties(BaseModel):
    """One row of the weave table: the combinatorics a built weave must reproduce."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    packing_label: PackingLabel
    helices_per_crossing: tuple[int, ...] = Field(min_length=1, max_length=2)
    helices_per_unit: int = Field(ge=1)
    chirality_class: ChiralityClass
    crossing_type_names: tuple[str, ...]
    tier: Tier
    physical_model: bool = False


class WeaveSpec(BaseModel):
    """
    A cubic lattice plus the helices of one periodic unit.

    The whole weave is the orbit of `helices` under the lattice translations.
    `provenance` records how the geometry was produced (recipe parameters,
    optimizer config and seed); it never affects geometry.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    lattice: Lattice
    helices: tuple[HelixSpec, ...]
    expected: ExpectedProperties
    construction_status: ConstructionStatus = ConstructionStatus.CONSTRUCTED
    provenance: Optional[dict[str, Any]] = None

    @property
    def is_constructed(self) -> bool:
        return self.construction_status == ConstructionStatus.CONSTRUCTED

    def with_helices(self, helices, **changes) -> "WeaveSpec":
        """Copy of the weave with another helix list (and optional field changes)."""
        data = dict(
            name=self.name,
            lattice=self.lattice,
            helices=tuple(helices),
            expected=self.expected,
            construction_status=self.construction_status,
            provenance=self.provenance,
        )
        data.update(changes)
        return WeaveSpec(**data)


class CatalogEntry(BaseModel):
    """One row of the catalog data file: table metadata plus the generating recipe."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    aliases: tuple[str, ...] = ()
    packing: PackingLabel
    helices_per_crossing: tuple[int, ...]
    helices_per_unit: int
    chirality: ChiralityClass
    physical_model: bool
    crossing_types: tuple[str, ...]
    tier: Tier
    cell: str
    recipe: Optional[dict[str, Any]] = None

    @field_validator("chirality", mode="before")
    @classmethod
    def _upper_chirality(cls, value):
        return value.upper() if isinstance(value, str) else value

    def expected(self) -> ExpectedProperties:
        return ExpectedProperties(
            packing_label=self.packing,
            helices_per_crossing=self.helices_per_crossing,
            helices_per_unit=self.helices_per_unit,
            chirality_class=self.chirality,
            crossing_type_names=self.crossing_types,
            tier=self.tier,
            physical_model=self.physical_model,
        )
