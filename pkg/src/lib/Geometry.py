import itertools
import math

import numpy as np

from models.Errors import InvalidDirection, UnsupportedAxis
from models.Lattice import DirectionFamily, Frame, Lattice

# --- Constants ---
UNIT_TOL = 1e-9
POLE_TOL = 1e-9
FRACTION_SNAP = 1e-9

_SQRT3 = math.sqrt(3.0)
_FAMILY_VECTORS = {
    DirectionFamily.FAM100: np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
    DirectionFamily.FAM111: np.array(
        [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
    ) / _SQRT3,
}


class Geometry:
    """
    Cubic-lattice geometry shared by every service: axis families, helix frames,
    lattice images and the transverse reductions used for canonical forms.
    """

    # --------------------------
    # Direction families
    # --------------------------

    @staticmethod
    def family_directions(family: DirectionFamily) -> list[np.ndarray]:
        """
        Unit axis directions of a family, in catalog index order.

        Args:
            family (DirectionFamily): FAM100 (cube edges) or FAM111 (body diagonals).

        Returns:
            list[np.ndarray]: 3 directions for FAM100, 4 for FAM111.
        """
        return [v.copy() for v in _FAMILY_VECTORS[DirectionFamily(family)]]

    @staticmethod
    def classify_direction(d_hat) -> tuple[DirectionFamily, int, int]:
        """
        Locate a unit vector among the family directions.

        Args:
            d_hat: Unit vector.

        Returns:
            tuple: (family, index into family_directions, sign) with d_hat = sign * representative.

        Raises:
            UnsupportedAxis: If d_hat is parallel to no FAM100 or FAM111 direction.
        """
        d = np.asarray(d_hat, dtype=float)
        for family, vectors in _FAMILY_VECTORS.items():
            for index, rep in enumerate(vectors):
                for sign in (1, -1):
                    if np.max(np.abs(d - sign * rep)) <= UNIT_TOL:
                        return family, index, sign
        raise UnsupportedAxis(f"direction {d.tolist()} is neither <100> nor <111>", direction=d.tolist())

    @staticmethod
    def frame_for_direction(d_hat) -> Frame:
        """
        Deterministic right-handed frame attached to an axis direction.

        u_hat = normalize(z x d_hat) unless d_hat is within 1e-9 of the poles,
        where u_hat = (1, 0, 0). v_hat = d_hat x u_hat.

        Raises:
            InvalidDirection: If d_hat is not unit-length within 1e-9.
        """
        d = np.asarray(d_hat, dtype=float)
        if d.shape != (3,) or not np.all(np.isfinite(d)) or abs(float(np.linalg.norm(d)) - 1.0) > UNIT_TOL:
            raise InvalidDirection("axis direction must be a finite unit vector", direction=np.asarray(d_hat).tolist())

        if abs(d[2]) < 1.0 - POLE_TOL:
            u = np.cross(np.array([0.0, 0.0, 1.0]), d)
            u = u / np.linalg.norm(u)
        else:
            u = np.array([1.0, 0.0, 0.0])
        v = np.cross(d, u)
        return Frame(u_hat=tuple(u.tolist()), v_hat=tuple(v.tolist()), d_hat=tuple(d.tolist()))

    # --------------------------
    # Lattice translations
    # --------------------------

    @staticmethod
    def repeat_vector(d_hat, lattice: Lattice) -> np.ndarray:
        """
        Shortest lattice vector parallel to d_hat, pointing along d_hat.

        Raises:
            UnsupportedAxis: If d_hat belongs to no direction family.
        """
        family, _, _ = Geometry.classify_direction(d_hat)
        d = np.asarray(d_hat, dtype=float)
        L = lattice.period
        if family == DirectionFamily.FAM100:
            return np.round(d) * L
        step = np.sign(d) * L
        if lattice.centering == "I":
            step = step * 0.5
        return step

    @staticmethod
    def axis_repeat_length(d_hat, lattice: Lattice) -> float:
        """
        Returns:
            float: L for <100> axes, L*sqrt(3) for <111> axes (L*sqrt(3)/2 on a body-centred lattice).
        """
        return float(np.linalg.norm(Geometry.repeat_vector(d_hat, lattice)))

    @staticmethod
    def image_translations(lattice: Lattice, shells: int) -> np.ndarray:
        """
        Lattice translations within `shells` cells, lexicographically ordered.

        For the primitive lattice these are (i, j, k)*L with max(|i|, |j|, |k|) <= shells.
        A body-centred lattice adds the centred images with the same max-norm bound.

        Returns:
            np.ndarray: (N, 3) array of translations; always contains the zero vector.
        """
        if shells < 0:
            raise ValueError(f"shells must be >= 0, got {shells}")
        L = lattice.period
        rng = range(-shells, shells + 1)
        coords = [np.array(c, dtype=float) for c in itertools.product(rng, rng, rng)]
        if lattice.centering == "I":
            half = [i + 0.5 for i in range(-shells, shells)]
            coords += [np.array(c, dtype=float) for c in itertools.product(half, half, half)]
        coords.sort(key=lambda c: (c[0], c[1], c[2]))
        return np.array(coords) * L

    @staticmethod
    def shells_for_reach(lattice: Lattice, reach: float) -> int:
        """Smallest shell count whose images cover every axis passing within `reach` of a cell."""
        return max(1, int(math.ceil(reach / lattice.period)))

    @staticmethod
    def minimum_image(delta, lattice: Lattice) -> np.ndarray:
        """
        Shortest representative of a displacement modulo the lattice.

        Returns:
            np.ndarray: delta - T for the lattice vector T minimising the norm.
        """
        delta = np.asarray(delta, dtype=float)
        L = lattice.period
        base = delta - np.round(delta / L) * L
        candidates = base[None, :] - Geometry.image_translations(lattice, 1)
        norms = np.einsum("ij,ij->i", candidates, candidates)
        return candidates[int(np.argmin(norms))]

    @staticmethod
    def reduce_point(point, lattice: Lattice) -> tuple[np.ndarray, np.ndarray]:
        """
        Reduce a point into the conventional cell [0, L)^3.

        Returns:
            tuple: (reduced point, translation applied).
        """
        p = np.asarray(point, dtype=float)
        L = lattice.period
        shift = -np.floor(p / L) * L
        reduced = p + shift
        snap = reduced >= L * (1.0 - FRACTION_SNAP)
        reduced[snap] -= L
        shift[snap] -= L
        return reduced, shift

    # --------------------------
    # Transverse reduction
    # --------------------------

    @staticmethod
    def transverse_basis(d_hat, lattice: Lattice) -> tuple[np.ndarray, np.ndarray]:
        """
        Two lattice vectors whose projections onto the plane normal to d_hat
        generate the projected lattice.

        Returns:
            tuple[np.ndarray, np.ndarray]: The generating lattice vectors (unprojected).
        """
        family, index, _ = Geometry.classify_direction(d_hat)
        L = lattice.period
        e = np.eye(3) * L
        if family == DirectionFamily.FAM111:
            return e[0], e[1]
        others = [e[k] for k in range(3) if k != index]
        if lattice.centering == "I":
            return others[0], np.full(3, 0.5 * L)
        return others[0], others[1]

    @staticmethod
    def reduce_transverse(point, d_hat, lattice: Lattice) -> tuple[np.ndarray, np.ndarray]:
        """
        Reduce an axis point to the canonical representative of its line's lattice orbit.

        The point is projected on the plane through the origin normal to d_hat, then
        moved into the fundamental parallelogram spanned by the projected
        transverse basis.

        Returns:
            tuple: (representative point on the normal plane, lattice translation T such that
            representative = projection(point + T)).
        """
        d = np.asarray(d_hat, dtype=float)
        p = np.asarray(point, dtype=float)
        b1, b2 = Geometry.transverse_basis(d, lattice)
        def proj(x):
            return x - np.dot(x, d) * d

        basis = np.column_stack([proj(b1), proj(b2)])
        coeffs, *_ = np.linalg.lstsq(basis, proj(p), rcond=None)
        steps = np.floor(coeffs + FRACTION_SNAP)
        translation = -steps[0] * b1 - steps[1] * b2
        representative = proj(p + translation)
        representative[np.abs(representative) < 1e-15] = 0.0
        return representative, translation

    # --------------------------
    # Symmetry helpers
    # --------------------------

    @staticmethod
    def cube_rotations() -> list[np.ndarray]:
        """
        The 24 orientation-preserving symmetries of the cube as integer matrices,
        identity first.
        """
        rotations = []
        for perm in itertools.permutations(range(3)):
            for signs in itertools.product((1, -1), repeat=3):
                m = np.zeros((3, 3))
                for row, col in enumerate(perm):
                    m[row, col] = signs[row]
                if round(np.linalg.det(m)) == 1:
                    rotations.append(m)
        return rotations

    @staticmethod
    def cyclic_rotation() -> np.ndarray:
        """Three-fold rotation about (1,1,1) sending x -> y -> z -> x."""
        return np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])

    # --------------------------
    # Level set
    # --------------------------

    @staticmethod
    def gyroid_value(points, period: float = 1.0) -> np.ndarray:
        """
        Evaluate sin X cos Y + sin Y cos Z + sin Z cos X with X = 2*pi*x/L (etc.).

        Args:
            points: (N, 3) array-like of positions.
            period (float): Cubic cell edge.

        Returns:
            np.ndarray: (N,) level-set values.
        """
        p = np.atleast_2d(np.asarray(points, dtype=float)) * (2.0 * math.pi / period)
        x, y, z = p[:, 0], p[:, 1], p[:, 2]
        return np.sin(x) * np.cos(y) + np.sin(y) * np.cos(z) + np.sin(z) * np.cos(x)
