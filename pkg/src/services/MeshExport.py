import io
from typing import Optional, Sequence

import numpy as np

from lib.Geometry import Geometry
from lib.SimpleBatchRunner import SimpleBatchRunner
from models.Errors import EmptyMesh, ExportError, UnconstructedWeave
from models.Helix import TWO_PI, HelixSpec
from models.Lattice import Lattice
from models.Mesh import Mesh
from models.Weave import WeaveSpec
from services.AppData import AppData
from services.HelixModel import HelixModel
from services.logger.Logger import _log

STL_HEADER = b"tphw mesh export"
STL_TRIANGLE = np.dtype([("normal", "<f4", (3,)), ("vertices", "<f4", (3, 3)), ("attribute", "<u2")])


class MeshExport:
    """
    Swept tube meshes around helix centerlines, and the OBJ / STL / polyline writers.
    """

    def __init__(self, around_m: Optional[int] = None, per_turn_n: Optional[int] = None, max_workers: Optional[int] = None):
        self.app_data = AppData()
        self.around_m = int(around_m if around_m is not None else self.app_data.get_config("mesh_around", 24))
        self.per_turn_n = int(per_turn_n if per_turn_n is not None else self.app_data.get_config("mesh_per_turn", 64))
        self.max_workers = int(max_workers if max_workers is not None else self.app_data.get_config("max_workers", 4))

    # --------------------------
    # Sweeping
    # --------------------------

    @staticmethod
    def rotation_minimizing_frames(centers: np.ndarray, tangents: np.ndarray, seed: np.ndarray) -> np.ndarray:
        """
        Reference vectors along a sampled curve by double reflection.

        Args:
            centers (np.ndarray): (N, 3) curve samples.
            tangents (np.ndarray): (N, 3) unit tangents.
            seed (np.ndarray): Any vector not parallel to the first tangent.

        Returns:
            np.ndarray: (N, 3) unit normals, each orthogonal to its tangent.
        """
        r = seed - (seed @ tangents[0]) * tangents[0]
        r = r / np.linalg.norm(r)
        frames = np.empty_like(centers)
        frames[0] = r
        for i in range(len(centers) - 1):
            v1 = centers[i + 1] - centers[i]
            c1 = v1 @ v1
            if c1 < 1e-30:
                frames[i + 1] = frames[i]
                continue
            r_l = frames[i] - (2.0 / c1) * (v1 @ frames[i]) * v1
            t_l = tangents[i] - (2.0 / c1) * (v1 @ tangents[i]) * v1
            v2 = tangents[i + 1] - t_l
            c2 = v2 @ v2
            r_next = r_l if c2 < 1e-30 else r_l - (2.0 / c2) * (v2 @ r_l) * v2
            # strip accumulated drift off the tangent
            r_next = r_next - (r_next @ tangents[i + 1]) * tangents[i + 1]
            frames[i + 1] = r_next / np.linalg.norm(r_next)
        return frames

    @staticmethod
    def sweep_tube(centers, tangents, rho: float, around_m: int, caps: bool = False, seed=None, name: str = "tube") -> Mesh:
        """
        Sweep a circle of radius `rho` along sampled centerline points.

        Rings are `around_m` vertices each; neighbouring rings are joined by two
        triangles per quad, wound counterclockwise seen from outside. With `caps`
        both ends are closed by triangle fans around one extra center vertex.
        """
        centers = np.asarray(centers, dtype=float)
        tangents = np.asarray(tangents, dtype=float)
        tangents = tangents / np.linalg.norm(tangents, axis=1, keepdims=True)
        if around_m < 3:
            raise ValueError(f"around_m must be >= 3, got {around_m}")
        if len(centers) < 2:
            raise ValueError("a tube needs at least 2 rings")
        if rho <= 0:
            raise EmptyMesh(f"tube radius {rho} leaves nothing to mesh", tube_radius=rho)

        if seed is None:
            seed = np.eye(3)[int(np.argmin(np.abs(tangents[0])))]
        r = MeshExport.rotation_minimizing_frames(centers, tangents, np.asarray(seed, dtype=float))
        s = np.cross(tangents, r)

        theta = TWO_PI * np.arange(around_m) / around_m
        ring = np.cos(theta)[None, :, None] * r[:, None, :] + np.sin(theta)[None, :, None] * s[:, None, :]
        vertices = (centers[:, None, :] + rho * ring).reshape(-1, 3)

        n = len(centers)
        i, j = np.meshgrid(np.arange(n - 1), np.arange(around_m), indexing="ij")
        a = i * around_m + j
        b = i * around_m + (j + 1) % around_m
        c = a + around_m
        d = b + around_m
        triangles = np.concatenate(
            [np.stack([a, b, d], axis=-1).reshape(-1, 3), np.stack([a, d, c], axis=-1).reshape(-1, 3)]
        )

        if caps:
            start, end = len(vertices), len(vertices) + 1
            vertices = np.vstack([vertices, centers[0], centers[-1]])
            j = np.arange(around_m)
            jn = (j + 1) % around_m
            last = (n - 1) * around_m
            start_fan = np.stack([np.full(around_m, start), jn, j], axis=-1)
            end_fan = np.stack([np.full(around_m, end), last + j, last + jn], axis=-1)
            triangles = np.concatenate([triangles, start_fan, end_fan])

        return Mesh(vertices=vertices, triangles=triangles, name=name)

    def _sweep_helix(self, h: HelixSpec, t_start: float, turns: int, around_m: int, per_turn_n: int, caps: bool, name: str) -> Mesh:
        HelixModel.helix_tangent(h, t_start)
        curve = HelixModel.curve(h)
        t = t_start + TWO_PI * np.arange(turns * per_turn_n + 1) / per_turn_n
        centers = curve.point(t)
        tangents = curve.first_derivative(t)
        # the frame of the axis gives every tube of a weave the same seam placement
        seed = np.asarray(Geometry.frame_for_direction(h.direction).u_hat)
        if abs(seed @ tangents[0]) > 0.99 * np.linalg.norm(tangents[0]):
            seed = np.asarray(Geometry.frame_for_direction(h.direction).v_hat)
        return self.sweep_tube(centers, tangents, h.tube_radius, around_m, caps, seed=seed, name=name)

    def tube_mesh(self, h: HelixSpec, lattice: Lattice, cells: int = 1, around_m: Optional[int] = None,
                  per_turn_n: Optional[int] = None, caps: bool = False) -> Mesh:
        """
        Tube around `cells` axis repeats of one helix, starting at t = 0.

        Returns:
            Mesh: around_m * n_total vertices for n_total = cells * turns * per_turn_n + 1 rings
            (+2 with caps) and 2 * around_m * (n_total - 1) triangles (+2 * around_m with caps).

        Raises:
            EmptyMesh: If the tube radius is 0.
            DegenerateHelix: If the helix has neither radius nor pitch.
        """
        around_m = around_m or self.around_m
        per_turn_n = per_turn_n or self.per_turn_n
        if around_m < 3 or per_turn_n < 4 or cells < 1:
            raise ValueError(f"need around_m >= 3, per_turn_n >= 4, cells >= 1; got {around_m}, {per_turn_n}, {cells}")
        if h.tube_radius <= 0:
            raise EmptyMesh(f"helix has tube radius {h.tube_radius}", tube_radius=h.tube_radius)
        HelixModel.helix_tangent(h, 0.0)
        turns = cells * HelixModel.turns_per_repeat(h, lattice)
        return self._sweep_helix(h, 0.0, turns, around_m, per_turn_n, caps, name="tube")

    # --------------------------
    # Weave framing
    # --------------------------

    @staticmethod
    def _axis_window(h: HelixSpec, translation: np.ndarray, box: float, slack: float) -> Optional[tuple[float, float]]:
        """Parameter interval where the shifted helix axis runs within `slack` of the box [0, box]^3."""
        curve = HelixModel.curve(h)
        origin = curve.anchor + translation
        rate = curve.axial_rate * curve.d
        low, high = -np.inf, np.inf
        for k in range(3):
            lo, hi = -slack - origin[k], box + slack - origin[k]
            if abs(rate[k]) < 1e-15:
                if lo > 0 or hi < 0:
                    return None
                continue
            t0, t1 = sorted((lo / rate[k], hi / rate[k]))
            low, high = max(low, t0), min(high, t1)
        return (low, high) if low < high else None

    def helix_windows(self, w: WeaveSpec, cells: int) -> list[tuple[int, int, HelixSpec, float, int]]:
        """
        Every helix image meeting the cells^3 block, clipped to whole turns.

        Returns:
            list: (helix index, image index, shifted helix, start parameter, turn count).
        """
        if not w.is_constructed:
            raise UnconstructedWeave(f"weave '{w.name}' has no helices to mesh", name=w.name)
        box = cells * w.lattice.period
        windows = []
        for index, h in enumerate(w.helices):
            seen = set()
            image = 0
            for T in Geometry.image_translations(w.lattice, cells + 1):
                key = HelixModel.line_key(h, w.lattice, T)
                if key in seen:
                    continue
                seen.add(key)
                span = self._axis_window(h, T, box, h.radius + h.tube_radius)
                if span is None:
                    continue
                t_start = np.floor(span[0] / TWO_PI) * TWO_PI
                turns = max(1, int(np.ceil((span[1] - t_start) / TWO_PI - 1e-9)))
                windows.append((index, image, HelixModel.translate(h, T), float(t_start), turns))
                image += 1
        return windows

    def weave_meshes(self, w: WeaveSpec, cells: Optional[int] = None, caps: bool = False) -> list[Mesh]:
        """
        One tube per helix image meeting the cells^3 block, named "<weave>_<helix>_<image>".
        """
        cells = int(cells or self.app_data.get_config("mesh_cells", 2))
        windows = self.helix_windows(w, cells)

        def job(index, image, h, t_start, turns):
            name = f"{w.name}_{index}_{image}"
            return lambda: self._sweep_helix(h, t_start, turns, self.around_m, self.per_turn_n, caps, name)

        meshes = SimpleBatchRunner(max_workers=self.max_workers, label="mesh").run([job(*win) for win in windows])
        _log(f"Meshed '{w.name}'", {"cells": cells, "meshes": len(meshes)}, level="INFO")
        return meshes

    # --------------------------
    # Writers
    # --------------------------

    def _write(self, path: str, data) -> None:
        if not self.app_data._save_file(path, data):
            raise ExportError(f"could not write {path}", path=path)
        _log(f"Wrote {path}", level="INFO")

    @staticmethod
    def obj_text(meshes: Sequence[Mesh]) -> str:
        out = io.StringIO()
        offset = 1
        for mesh in meshes:
            out.write(f"o {mesh.name}\n")
            for x, y, z in mesh.vertices:
                out.write("v %.6f %.6f %.6f\n" % (x, y, z))
            for a, b, c in mesh.triangles + offset:
                out.write(f"f {a} {b} {c}\n")
            offset += mesh.vertex_count
        return out.getvalue()

    @staticmethod
    def stl_bytes(meshes: Sequence[Mesh]) -> bytes:
        corners = [m.vertices[m.triangles] for m in meshes if m.triangle_count]
        corners = np.concatenate(corners) if corners else np.zeros((0, 3, 3))
        normals = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
        lengths = np.linalg.norm(normals, axis=1, keepdims=True)
        normals = np.divide(normals, lengths, out=np.zeros_like(normals), where=lengths > 0)

        records = np.zeros(len(corners), dtype=STL_TRIANGLE)
        records["normal"] = normals
        records["vertices"] = corners
        header = STL_HEADER.ljust(80, b"\0")
        return header + np.uint32(len(records)).astype("<u4").tobytes() + records.tobytes()

    def write_obj(self, meshes: Sequence[Mesh], path: str) -> None:
        self._write(path, self.obj_text(meshes))

    def write_stl(self, meshes: Sequence[Mesh], path: str) -> None:
        """Binary little-endian STL; coordinates narrow to float32 here and nowhere else."""
        self._write(path, self.stl_bytes(meshes))

    def write_centerlines(self, w: WeaveSpec, cells: Optional[int], path: str) -> None:
        """
        OBJ polylines ("l" elements) through every helix image the tube export would mesh.
        """
        cells = int(cells or self.app_data.get_config("mesh_cells", 2))
        out = io.StringIO()
        offset = 1
        for index, image, h, t_start, turns in self.helix_windows(w, cells):
            t = t_start + TWO_PI * np.arange(turns * self.per_turn_n + 1) / self.per_turn_n
            points = HelixModel.curve(h).point(t)
            out.write(f"o {w.name}_{index}_{image}\n")
            for x, y, z in points:
                out.write("v %.6f %.6f %.6f\n" % (x, y, z))
            out.write("l " + " ".join(str(offset + k) for k in range(len(points))) + "\n")
            offset += len(points)
        self._write(path, out.getvalue())
