import math
from dataclasses import dataclass

import numpy as np

from lib.Geometry import Geometry
from models.Errors import DegenerateHelix, IncommensurateHelix
from models.Helix import TWO_PI, CanonicalHelix, HelixSpec, normalize_phase
from models.Lattice import Lattice

COMMENSURABILITY_TOL = 1e-9
PHASE_WRAP_TOL = 1e-12


@dataclass(frozen=True)
class HelixCurve:
    """
    Array view of a helix for vectorized evaluation.

    point(t) = anchor + c*t*d + a*cos(t+phase)*u + chirality*a*sin(t+phase)*v, with c = pitch/2pi.
    """

    anchor: np.ndarray
    d: np.ndarray
    u: np.ndarray
    v: np.ndarray
    radius: float
    pitch: float
    phase: float
    handedness: int
    tube_radius: float

    @property
    def axial_rate(self) -> float:
        return self.pitch / TWO_PI

    def point(self, t) -> np.ndarray:
        """
        Args:
            t (float | np.ndarray): Curve parameter(s).

        Returns:
            np.ndarray: (3,) for scalar t, (N, 3) otherwise.
        """
        t = np.asarray(t, dtype=float)
        theta = t + self.phase
        cos_t, sin_t = np.cos(theta)[..., None], np.sin(theta)[..., None]
        return (
            self.anchor
            + (self.axial_rate * t)[..., None] * self.d
            + self.radius * cos_t * self.u
            + (self.handedness * self.radius) * sin_t * self.v
        )

    def first_derivative(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        theta = t + self.phase
        cos_t, sin_t = np.cos(theta)[..., None], np.sin(theta)[..., None]
        return (
            self.axial_rate * self.d
            - self.radius * sin_t * self.u
            + (self.handedness * self.radius) * cos_t * self.v
        )

    def second_derivative(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        theta = t + self.phase
        cos_t, sin_t = np.cos(theta)[..., None], np.sin(theta)[..., None]
        return -self.radius * cos_t * self.u - (self.handedness * self.radius) * sin_t * self.v


class HelixModel:
    """
    Operations on single helices: evaluation, commensurability with the lattice,
    rigid motions and canonical lattice-orbit representatives.
    """

    # --------------------------
    # Evaluation
    # --------------------------

    @staticmethod
    def curve(h: HelixSpec) -> HelixCurve:
        frame = Geometry.frame_for_direction(h.direction)
        u, v, d = frame.as_arrays()
        return HelixCurve(
            anchor=h.anchor_array(),
            d=d,
            u=u,
            v=v,
            radius=float(h.radius),
            pitch=float(h.pitch),
            phase=float(h.phase),
            handedness=int(h.handedness),
            tube_radius=float(h.tube_radius),
        )

    @staticmethod
    def helix_point(h: HelixSpec, t) -> np.ndarray:
        return HelixModel.curve(h).point(t)

    @staticmethod
    def helix_tangent(h: HelixSpec, t) -> np.ndarray:
        """
        Unit tangent at parameter t.

        Raises:
            DegenerateHelix: If both the winding radius and the pitch vanish.
        """
        if h.radius == 0 and h.pitch == 0:
            raise DegenerateHelix("a helix with zero radius and zero pitch has no tangent")
        d1 = HelixModel.curve(h).first_derivative(t)
        return d1 / np.linalg.norm(d1, axis=-1, keepdims=True)

    # --------------------------
    # Lattice commensurability
    # --------------------------

    @staticmethod
    def turns_per_repeat(h: HelixSpec, lattice: Lattice) -> int:
        """
        Number of turns in one axis repeat.

        Raises:
            UnsupportedAxis: If the axis is not a <100> or <111> direction.
            IncommensurateHelix: If repeat/pitch is not a positive integer within 1e-9.
        """
        repeat = Geometry.axis_repeat_length(h.direction, lattice)
        if h.pitch <= 0:
            raise IncommensurateHelix(f"pitch {h.pitch} must be positive", pitch=h.pitch)
        ratio = repeat / h.pitch
        k = int(round(ratio))
        if k < 1 or abs(ratio - k) > COMMENSURABILITY_TOL:
            raise IncommensurateHelix(
                f"axis repeat {repeat:.12g} is not an integer multiple of pitch {h.pitch:.12g}",
                repeat=repeat,
                pitch=h.pitch,
            )
        return k

    @staticmethod
    def pitch_for_turns(direction, lattice: Lattice, turns: int) -> float:
        return Geometry.axis_repeat_length(direction, lattice) / turns

    # --------------------------
    # Rigid motions
    # --------------------------

    @staticmethod
    def _phase_from_offset(w: np.ndarray, direction: np.ndarray, handedness: int, radius: float) -> float:
        """Phase of a helix whose parameter-0 point sits at `w` from the axis."""
        if radius == 0:
            return 0.0
        u, v, _ = Geometry.frame_for_direction(direction).as_arrays()
        return normalize_phase(math.atan2(handedness * float(np.dot(w, v)), float(np.dot(w, u))))

    @staticmethod
    def transform(h: HelixSpec, R, T=(0.0, 0.0, 0.0)) -> HelixSpec:
        """
        Image of the helix under x -> R x + T for an orthogonal R.

        Handedness is multiplied by det R; the phase is recovered from the image of the
        parameter-0 point in the frame of the image direction.
        """
        R = np.asarray(R, dtype=float)
        curve = HelixModel.curve(h)
        det = int(round(np.linalg.det(R)))
        w = curve.point(0.0) - curve.anchor

        direction = R @ curve.d
        direction = direction / np.linalg.norm(direction)
        handedness = det * h.handedness
        phase = HelixModel._phase_from_offset(R @ w, direction, handedness, h.radius)
        return h.with_updates(
            anchor=tuple((R @ curve.anchor + np.asarray(T, dtype=float)).tolist()),
            direction=tuple(direction.tolist()),
            handedness=handedness,
            phase=phase,
        )

    @staticmethod
    def mirror(h: HelixSpec) -> HelixSpec:
        """Reflection through the plane x = 0."""
        return HelixModel.transform(h, np.diag([-1.0, 1.0, 1.0]))

    @staticmethod
    def invert(h: HelixSpec, center=(0.0, 0.0, 0.0)) -> HelixSpec:
        """Point inversion through `center`."""
        c = np.asarray(center, dtype=float)
        return HelixModel.transform(h, -np.eye(3), 2.0 * c)

    @staticmethod
    def rotate(h: HelixSpec, R) -> HelixSpec:
        return HelixModel.transform(h, R)

    @staticmethod
    def rotate_cube(h: HelixSpec, index: int) -> HelixSpec:
        """Image under the `index`-th of the 24 cube rotations (Geometry.cube_rotations order)."""
        return HelixModel.transform(h, Geometry.cube_rotations()[index])

    @staticmethod
    def translate(h: HelixSpec, T) -> HelixSpec:
        anchor = h.anchor_array() + np.asarray(T, dtype=float)
        return h.with_updates(anchor=tuple(anchor.tolist()))

    @staticmethod
    def spin(h: HelixSpec, angle: float) -> HelixSpec:
        """Rotate the helix about its own axis by `angle` (a pure phase change)."""
        return h.with_updates(phase=h.phase + angle)

    @staticmethod
    def flip_direction(h: HelixSpec) -> HelixSpec:
        """Same curve, parametrized along the opposite axis direction."""
        curve = HelixModel.curve(h)
        w = curve.point(0.0) - curve.anchor
        direction = -curve.d
        return h.with_updates(
            direction=tuple(direction.tolist()),
            phase=HelixModel._phase_from_offset(w, direction, h.handedness, h.radius),
        )

    @staticmethod
    def slide_anchor(h: HelixSpec, delta: float) -> HelixSpec:
        """Move the anchor by `delta` along the axis keeping the curve unchanged."""
        d = h.direction_array()
        anchor = h.anchor_array() + delta * d
        return h.with_updates(anchor=tuple(anchor.tolist()), phase=h.phase + TWO_PI * delta / h.pitch)

    # --------------------------
    # Canonical form
    # --------------------------

    @staticmethod
    def canonicalize(h: HelixSpec, lattice: Lattice) -> CanonicalHelix:
        """
        Lattice-orbit representative of the helix.

        The direction becomes the family representative, the anchor the axis point
        on the normal plane through the origin reduced into the fundamental
        parallelogram of the projected lattice, and the phase is re-expressed there.

        Raises:
            IncommensurateHelix: If the helix does not repeat with the lattice.
        """
        HelixModel.turns_per_repeat(h, lattice)
        _, _, sign = Geometry.classify_direction(h.direction)
        if sign < 0:
            h = HelixModel.flip_direction(h)
        d = h.direction_array()

        h = HelixModel.slide_anchor(h, -float(np.dot(h.anchor_array(), d)))
        _, translation = Geometry.reduce_transverse(h.anchor_array(), d, lattice)
        h = HelixModel.translate(h, translation)
        h = HelixModel.slide_anchor(h, -float(np.dot(h.anchor_array(), d)))

        phase = 0.0 if h.radius == 0 else normalize_phase(h.phase)
        if TWO_PI - phase < PHASE_WRAP_TOL:
            phase = 0.0
        anchor = np.where(np.abs(h.anchor_array()) < 1e-15, 0.0, h.anchor_array())
        return CanonicalHelix(
            anchor=tuple(anchor.tolist()),
            direction=tuple(d.tolist()),
            radius=h.radius,
            pitch=h.pitch,
            phase=phase,
            handedness=h.handedness,
            tube_radius=h.tube_radius,
        )

    @staticmethod
    def from_canonical(c: CanonicalHelix) -> HelixSpec:
        return HelixSpec(**c.model_dump())

    @staticmethod
    def same_curve(h1: HelixSpec, h2: HelixSpec, lattice: Lattice, tol: float = 1e-9) -> bool:
        """True when the two helices are lattice translates of one curve."""
        return HelixModel.canonicalize(h1, lattice).matches(HelixModel.canonicalize(h2, lattice), tol)

    @staticmethod
    def line_key(h: HelixSpec, lattice: Lattice, translation=(0.0, 0.0, 0.0), digits: int = 6) -> tuple:
        """
        Hashable identity of the axis line of `h` translated by `translation`.

        Two translates of a helix share a key iff they are the same curve.
        """
        d = h.direction_array()
        p = h.anchor_array() + np.asarray(translation, dtype=float)
        p = p - np.dot(p, d) * d
        # + 0.0 folds -0.0 into 0.0
        return tuple((np.round(p / lattice.period, digits) + 0.0).tolist())
