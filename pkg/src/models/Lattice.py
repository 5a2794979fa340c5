from enum import Enum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class DirectionFamily(str, Enum):
    """Axis-direction families of the cubic weaves: cube edges or body diagonals."""

    FAM100 = "FAM100"
    FAM111 = "FAM111"


class Lattice(BaseModel):
    """
    Cubic translation lattice with cell edge `period`.

    Centering "P" is the primitive cubic lattice generated by (L,0,0), (0,L,0),
    (0,0,L). Centering "I" adds the body-centring translation (L/2, L/2, L/2).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    period: float = Field(gt=0)
    centering: Literal["P", "I"] = "P"


class Frame(BaseModel):
    """Right-handed orthonormal frame (u_hat, v_hat, d_hat) attached to a helix axis."""

    model_config = ConfigDict(frozen=True)

    u_hat: tuple[float, float, float]
    v_hat: tuple[float, float, float]
    d_hat: tuple[float, float, float]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.array(self.u_hat), np.array(self.v_hat), np.array(self.d_hat)
