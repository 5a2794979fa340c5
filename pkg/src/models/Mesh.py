from collections import Counter
from dataclasses import dataclass

import numpy as np

from models.Errors import InvariantViolation


@dataclass
class Mesh:
    """
    Indexed triangle surface.

    Attributes:
        vertices (np.ndarray): (N, 3) float64 positions.
        triangles (np.ndarray): (M, 3) 0-based vertex indices, counterclockwise seen from outside.
        name (str): Group name used by the exporters.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    name: str = "mesh"

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)

    @property
    def vertex_count(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def triangle_count(self) -> int:
        return int(self.triangles.shape[0])

    def directed_edges(self) -> list[tuple[int, int]]:
        t = self.triangles
        edges = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        return [tuple(e) for e in edges.tolist()]

    def undirected_edge_count(self) -> int:
        return len({tuple(sorted(e)) for e in self.directed_edges()})

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.undirected_edge_count() + self.triangle_count

    def triangle_areas(self) -> np.ndarray:
        v = self.vertices[self.triangles]
        return 0.5 * np.linalg.norm(np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]), axis=1)

    def check(self, area_tol: float = 1e-14) -> "Mesh":
        """
        Check index range, non-degenerate triangles, manifold edges and consistent winding.

        Raises:
            InvariantViolation: naming the first failed check.
        """
        if self.triangle_count and (self.triangles.min() < 0 or self.triangles.max() >= self.vertex_count):
            raise InvariantViolation("index_range", f"mesh {self.name} references a missing vertex")
        if self.triangle_count and float(self.triangle_areas().min()) <= area_tol:
            raise InvariantViolation("degenerate_triangle", f"mesh {self.name} has a zero-area triangle")

        directed = Counter(self.directed_edges())
        if any(n > 1 for n in directed.values()):
            raise InvariantViolation("winding", f"mesh {self.name} traverses an edge twice in one direction")
        undirected = Counter(tuple(sorted(e)) for e in directed.elements())
        if any(n > 2 for n in undirected.values()):
            raise InvariantViolation("manifold_edge", f"mesh {self.name} has an edge shared by more than 2 triangles")
        return self
