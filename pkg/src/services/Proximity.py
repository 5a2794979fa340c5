import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from lib.Geometry import Geometry
from lib.LocalCache import cache_handler
from lib.SimpleBatchRunner import SimpleBatchRunner
from models.Errors import InvariantViolation, UnconstructedWeave
from models.Helix import TWO_PI, HelixSpec
from models.Lattice import Lattice
from models.Reports import ClearanceReport, Contact, DistanceWitness
from models.Weave import WeaveSpec
from services.AppData import AppData
from services.HelixModel import HelixCurve, HelixModel
from services.logger.Logger import _log

# --- Refinement constants ---
MIN_GRID_N = 16
NEWTON_MAX_ITER = 60
NEWTON_GRAD_TOL = 1e-12
NEWTON_ACCEPT_TOL = 1e-9
GOLDEN_SWEEPS = 40
NON_ISOLATED_RATIO = 1e-8
PARAM_DEDUPE_TOL = 1e-6
MAX_REFINED_PER_PAIR = 256


@dataclass(frozen=True)
class _PairSetup:
    """Two helix curves plus the translated images of the second curve worth sampling."""

    c1: HelixCurve
    c2: HelixCurve
    k1: int
    k2: int
    repeat1: np.ndarray
    repeat2: np.ndarray
    translations: np.ndarray
    same_helix: bool
    reach: float

    @property
    def period1(self) -> float:
        return TWO_PI * self.k1

    @property
    def period2(self) -> float:
        return TWO_PI * self.k2


def _squared_distance(c1: HelixCurve, c2: HelixCurve, translation: np.ndarray, s: float, t: float) -> float:
    diff = c1.point(s) - c2.point(t) - translation
    return float(diff @ diff)


def _gradient_and_hessian(c1: HelixCurve, c2: HelixCurve, translation: np.ndarray, s: float, t: float):
    diff = c1.point(s) - c2.point(t) - translation
    p1, q1 = c1.first_derivative(s), c2.first_derivative(t)
    p2, q2 = c1.second_derivative(s), c2.second_derivative(t)
    grad = 2.0 * np.array([diff @ p1, -(diff @ q1)])
    cross = -(p1 @ q1)
    hess = 2.0 * np.array([[p1 @ p1 + diff @ p2, cross], [cross, q1 @ q1 - diff @ q2]])
    return grad, hess


def _newton(c1: HelixCurve, c2: HelixCurve, translation: np.ndarray, s: float, t: float):
    """
    Levenberg-Marquardt damped Newton on the squared distance.

    Returns:
        tuple: (s, t, converged)
    """
    value = _squared_distance(c1, c2, translation, s, t)
    damping = 1e-9
    for _ in range(NEWTON_MAX_ITER):
        grad, hess = _gradient_and_hessian(c1, c2, translation, s, t)
        if np.linalg.norm(grad) < NEWTON_GRAD_TOL:
            return s, t, True

        moved = False
        for _ in range(16):
            try:
                step = np.linalg.solve(hess + damping * np.eye(2), -grad)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            candidate = _squared_distance(c1, c2, translation, s + step[0], t + step[1])
            if candidate <= value:
                s, t, value = s + float(step[0]), t + float(step[1]), candidate
                damping = max(damping * 0.1, 1e-15)
                moved = True
                break
            damping *= 10.0
        if not moved:
            break

    grad, _ = _gradient_and_hessian(c1, c2, translation, s, t)
    return s, t, bool(np.linalg.norm(grad) < NEWTON_ACCEPT_TOL)


def _golden(c1: HelixCurve, c2: HelixCurve, translation: np.ndarray, s: float, t: float, width: float):
    """Alternating golden-section search on each parameter."""
    for _ in range(GOLDEN_SWEEPS):
        s_prev, t_prev = s, t
        s = float(minimize_scalar(
            lambda x: _squared_distance(c1, c2, translation, x, t),
            bracket=(s - width, s + width), method="golden", tol=1e-12,
        ).x)
        t = float(minimize_scalar(
            lambda y: _squared_distance(c1, c2, translation, s, y),
            bracket=(t - width, t + width), method="golden", tol=1e-12,
        ).x)
        if abs(s - s_prev) < 1e-13 and abs(t - t_prev) < 1e-13:
            break
    return s, t


def _local_minima(grid: np.ndarray) -> np.ndarray:
    """Indices of interior samples that are <= all 8 neighbours."""
    n_s, n_t = grid.shape
    center = grid[1:-1, 1:-1]
    mask = np.ones_like(center, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            mask &= center <= grid[1 + di:n_s - 1 + di, 1 + dj:n_t - 1 + dj]
    return np.argwhere(mask) + 1


def _segment_line_distance(start: np.ndarray, direction: np.ndarray, length: float, points: np.ndarray, line_dir: np.ndarray) -> np.ndarray:
    """Distances from the segment start + z*direction, z in [0, length], to the lines points[i] + R*line_dir."""
    def perp(x):
        return x - np.outer(x @ line_dir, line_dir) if x.ndim == 2 else x - (x @ line_dir) * line_dir

    a = perp(direction)
    b = perp(start[None, :] - points)
    aa = float(a @ a)
    if aa < 1e-24:
        z = np.zeros(len(points))
    else:
        z = np.clip(-(b @ a) / aa, 0.0, length)
    closest = b + z[:, None] * a[None, :]
    return np.linalg.norm(closest, axis=1)


class Proximity:
    """
    Periodic minimum distance between helices, weave clearance and contacts.

    Every query reduces to the same scheme: for each lattice image of the second
    curve whose axis passes near one repeat of the first, sample the squared
    distance on a (s, t) grid, collect its local minima and polish each one with
    damped Newton steps.
    """

    def __init__(self, grid_n: Optional[int] = None, max_workers: Optional[int] = None, use_cache: Optional[bool] = None):
        self.app_data = AppData()
        self.grid_n = int(grid_n if grid_n is not None else self.app_data.get_config("grid_n", 96))
        self.max_workers = int(max_workers if max_workers is not None else self.app_data.get_config("max_workers", 4))
        self.gap_tol_factor = float(self.app_data.get_config("gap_tol_factor", 0.02))
        if use_cache is None:
            use_cache = bool(self.app_data.get_config("cache_pair_distances", False))
        self.use_cache = use_cache

    # --------------------------
    # Pair setup
    # --------------------------

    def _setup(self, h1: HelixSpec, h2: HelixSpec, lattice: Lattice, shells: Optional[int], same_helix: bool) -> _PairSetup:
        k1 = HelixModel.turns_per_repeat(h1, lattice)
        k2 = HelixModel.turns_per_repeat(h2, lattice)
        c1, c2 = HelixModel.curve(h1), HelixModel.curve(h2)
        repeat1 = Geometry.repeat_vector(h1.direction, lattice)
        repeat2 = Geometry.repeat_vector(h2.direction, lattice)
        length1 = float(np.linalg.norm(repeat1))
        reach = c1.radius + c2.radius + c1.tube_radius + c2.tube_radius + lattice.period

        if shells is None:
            offset = Geometry.minimum_image(c2.anchor - c1.anchor, lattice)
            base = (c1.anchor + offset) - c2.anchor
            bound = float(np.linalg.norm(offset)) + length1 + reach + 0.5 * float(np.linalg.norm(repeat2))
            images = base + Geometry.image_translations(lattice, Geometry.shells_for_reach(lattice, bound))
        else:
            images = Geometry.image_translations(lattice, shells)

        distances = _segment_line_distance(c1.anchor, c1.d, length1, c2.anchor[None, :] + images, c2.d)
        near = images[distances <= reach + 1e-12]

        seen = set()
        lines = []
        for translation in near:
            key = HelixModel.line_key(h2, lattice, translation)
            if key in seen:
                continue
            seen.add(key)
            if same_helix and HelixModel.same_curve(h1, HelixModel.translate(h2, translation), lattice):
                continue
            lines.append(translation)

        translations = np.array(lines) if lines else np.zeros((0, 3))
        return _PairSetup(c1, c2, k1, k2, repeat1, repeat2, translations, same_helix, reach)

    def _t_window(self, setup: _PairSetup, translation: np.ndarray, reach: float) -> tuple[float, float]:
        """Parameter interval of curve 2 + translation whose points can come within `reach` of curve 1's repeat."""
        c1, c2 = setup.c1, setup.c2
        ends = np.array([c1.anchor, c1.anchor + setup.repeat1]) @ c2.d
        lo = float(ends.min()) - reach - c1.radius
        hi = float(ends.max()) + reach + c1.radius
        origin = float((c2.anchor + translation) @ c2.d)
        rate = c2.axial_rate
        return (lo - origin) / rate, (hi - origin) / rate

    # --------------------------
    # Grid search and refinement
    # --------------------------

    def _grid_candidates(self, setup: _PairSetup, grid_n: int) -> list[tuple[float, float, float, int]]:
        """
        Local minima of the sampled distance for every sampled image.

        Returns:
            list: (grid distance, s, t, translation index) tuples.
        """
        c1, c2 = setup.c1, setup.c2
        step = TWO_PI / grid_n
        n_s = grid_n * setup.k1
        s_grid = np.arange(-1, n_s + 1) * step
        p1 = c1.point(s_grid)

        candidates = []
        for index, translation in enumerate(setup.translations):
            t_lo, t_hi = self._t_window(setup, translation, setup.reach)
            n_t = max(3, int(math.ceil((t_hi - t_lo) / step)))
            t_grid = t_lo + np.arange(-1, n_t + 1) * step
            p2 = c2.point(t_grid) + translation
            diff = p1[:, None, :] - p2[None, :, :]
            grid = np.einsum("ijk,ijk->ij", diff, diff)
            for i, j in _local_minima(grid):
                candidates.append((math.sqrt(grid[i, j]), float(s_grid[i]), float(t_grid[j]), index))
        return candidates

    def _refine(self, setup: _PairSetup, s: float, t: float, translation: np.ndarray, grid_n: int) -> DistanceWitness:
        c1, c2 = setup.c1, setup.c2
        s, t, converged = _newton(c1, c2, translation, s, t)
        if not converged:
            s, t = _golden(c1, c2, translation, s, t, TWO_PI / grid_n)
        _, hess = _gradient_and_hessian(c1, c2, translation, s, t)
        eig = np.linalg.eigvalsh(hess)
        scale = float(np.max(np.abs(eig)))
        non_isolated = scale == 0.0 or float(eig.min()) <= NON_ISOLATED_RATIO * scale
        return self._normalized_witness(setup, s, t, translation, non_isolated)

    def _normalized_witness(self, setup: _PairSetup, s: float, t: float, translation: np.ndarray, non_isolated: bool) -> DistanceWitness:
        """Shift s and t into one repeat each, moving the lattice translation accordingly."""
        m1 = math.floor(s / setup.period1)
        s -= m1 * setup.period1
        translation = translation - m1 * setup.repeat1
        if s >= setup.period1 - 1e-12:
            s -= setup.period1
            translation = translation - setup.repeat1
        m2 = math.floor(t / setup.period2)
        t -= m2 * setup.period2
        translation = translation + m2 * setup.repeat2
        if t >= setup.period2 - 1e-12:
            t -= setup.period2
            translation = translation + setup.repeat2
        translation = np.where(np.abs(translation) < 1e-12, 0.0, translation)
        distance = math.sqrt(_squared_distance(setup.c1, setup.c2, translation, s, t))
        return DistanceWitness(
            distance=distance, s=s, t=t, translation=tuple(translation.tolist()), non_isolated=bool(non_isolated)
        )

    def _dedupe_key(self, setup: _PairSetup, w: DistanceWitness) -> tuple:
        translation = tuple(np.round(np.asarray(w.translation), 6).tolist())
        if w.non_isolated:
            perp = np.asarray(w.translation) - (np.asarray(w.translation) @ setup.c2.d) * setup.c2.d
            return ("valley", tuple(np.round(perp, 6).tolist()), round(w.distance, 6))
        key = (round(w.s / PARAM_DEDUPE_TOL), round(w.t / PARAM_DEDUPE_TOL), translation)
        if setup.same_helix:
            swapped = self._normalized_witness(setup, w.t, w.s, -np.asarray(w.translation), False)
            other = (
                round(swapped.s / PARAM_DEDUPE_TOL),
                round(swapped.t / PARAM_DEDUPE_TOL),
                tuple(np.round(np.asarray(swapped.translation), 6).tolist()),
            )
            key = min(key, other)
        return key

    def _witnesses(self, setup: _PairSetup, grid_n: int, keep_below: Optional[float]) -> list[DistanceWitness]:
        if len(setup.translations) == 0:
            return []
        candidates = self._grid_candidates(setup, grid_n)
        if not candidates:
            return []

        step = TWO_PI / grid_n
        speed = math.hypot(setup.c1.axial_rate, setup.c1.radius) + math.hypot(setup.c2.axial_rate, setup.c2.radius)
        slack = step * speed
        threshold = min(c[0] for c in candidates) + slack if keep_below is None else keep_below + slack
        selected = sorted((c for c in candidates if c[0] <= threshold), key=lambda c: (c[0], c[1], c[2], c[3]))
        selected = selected[:MAX_REFINED_PER_PAIR]

        found = {}
        for _, s, t, index in selected:
            witness = self._refine(setup, s, t, setup.translations[index], grid_n)
            key = self._dedupe_key(setup, witness)
            kept = found.get(key)
            if kept is None or (witness.distance, witness.s) < (kept.distance, kept.s):
                found[key] = witness
        return sorted(found.values(), key=lambda w: (w.distance, w.translation, w.s, w.t))

    # --------------------------
    # Pair queries
    # --------------------------

    def pair_witnesses(
        self,
        h1: HelixSpec,
        h2: HelixSpec,
        lattice: Lattice,
        keep_below: Optional[float] = None,
        grid_n: Optional[int] = None,
        shells: Optional[int] = None,
        same_helix: bool = False,
    ) -> list[DistanceWitness]:
        """
        Distinct local minima of the centerline distance between h1 and the lattice images of h2.

        Args:
            keep_below (float | None): Report minima up to this distance; None keeps only the global minimum's basin.
            same_helix (bool): h2 is h1; translations mapping the curve onto itself are excluded.

        Returns:
            list[DistanceWitness]: Sorted by distance.
        """
        grid_n = int(grid_n or self.grid_n)
        if grid_n < MIN_GRID_N:
            raise ValueError(f"grid_n must be >= {MIN_GRID_N}, got {grid_n}")

        if self.use_cache:
            payload = _cached_pair_witnesses(
                h1.model_dump(), h2.model_dump(), lattice.model_dump(), keep_below, grid_n, shells, same_helix
            )
            return [DistanceWitness(**w) for w in payload]
        setup = self._setup(h1, h2, lattice, shells, same_helix)
        return self._witnesses(setup, grid_n, keep_below)

    def pair_min_distance(
        self, h1: HelixSpec, h2: HelixSpec, lattice: Lattice, grid_n: Optional[int] = None, shells: Optional[int] = None
    ) -> DistanceWitness:
        """
        Global minimum of |P1(s) - (P2(t) + T)| over both curves and the lattice images T.

        Raises:
            IncommensurateHelix: If either helix does not repeat with the lattice.
        """
        witnesses = self.pair_witnesses(h1, h2, lattice, grid_n=grid_n, shells=shells)
        if not witnesses:
            raise InvariantViolation("images", "no lattice image of the second helix within reach")
        return witnesses[0]

    def self_min_distance(self, h: HelixSpec, lattice: Lattice, grid_n: Optional[int] = None) -> DistanceWitness:
        """Minimum distance between the helix and its lattice translates that are different curves."""
        witnesses = self.pair_witnesses(h, h, lattice, grid_n=grid_n, same_helix=True)
        if not witnesses:
            raise InvariantViolation("images", "no distinct lattice image of the helix within reach")
        return witnesses[0]

    # --------------------------
    # Weave queries
    # --------------------------

    @staticmethod
    def _pairs(w: WeaveSpec) -> list[tuple[int, int]]:
        n = len(w.helices)
        return [(i, j) for i in range(n) for j in range(i, n)]

    def _require_constructed(self, w: WeaveSpec):
        if not w.is_constructed or not w.helices:
            raise UnconstructedWeave(f"weave '{w.name}' has no constructed geometry", name=w.name)

    def min_distances(self, w: WeaveSpec, grid_n: Optional[int] = None) -> dict[tuple[int, int], DistanceWitness]:
        """Closest-approach witness of every unordered helix pair, self-image pairs included."""
        self._require_constructed(w)
        pairs = self._pairs(w)

        def job(i, j):
            return lambda: self.pair_witnesses(w.helices[i], w.helices[j], w.lattice, grid_n=grid_n, same_helix=(i == j))

        runner = SimpleBatchRunner(max_workers=self.max_workers, label="min-distance")
        results = runner.run([job(i, j) for i, j in pairs])
        return {pair: witnesses[0] for pair, witnesses in zip(pairs, results) if witnesses}

    def clearance(self, w: WeaveSpec, grid_n: Optional[int] = None, gap_tol: Optional[float] = None) -> ClearanceReport:
        """
        Minimum over all helix pairs of centerline distance minus both tube radii.

        Ties are broken by the lexicographic (pair indices, translation) order.

        Raises:
            InvariantViolation: If no helix pair has a lattice image within reach.
        """
        witnesses = self.min_distances(w, grid_n)
        if not witnesses:
            raise InvariantViolation("images", f"no helix pair of '{w.name}' has a lattice image within reach")
        best = None
        for (i, j), witness in witnesses.items():
            gap = witness.distance - w.helices[i].tube_radius - w.helices[j].tube_radius
            key = (gap, (i, j), witness.translation)
            if best is None or key < best[0]:
                best = (key, witness)

        (min_gap, pair, _), witness = best
        contacts = self.find_contacts(w, gap_tol=gap_tol, grid_n=grid_n)
        report = ClearanceReport(
            min_gap=min_gap,
            min_distance=witness.distance,
            witness=witness,
            pair=pair,
            pair_count_evaluated=len(witnesses),
            contacts=tuple(contacts),
        )
        _log(f"Clearance of '{w.name}': min gap {min_gap:.6g} between helices {pair}", {"contacts": len(contacts)}, level="INFO")
        return report

    def min_centerline_distance(self, w: WeaveSpec, grid_n: Optional[int] = None) -> float:
        witnesses = self.min_distances(w, grid_n)
        if not witnesses:
            raise InvariantViolation("images", f"no helix pair of '{w.name}' has a lattice image within reach")
        return min(wt.distance for wt in witnesses.values())

    def find_contacts(self, w: WeaveSpec, gap_tol: Optional[float] = None, grid_n: Optional[int] = None) -> list[Contact]:
        """
        Every local minimum of pairwise gap not exceeding gap_tol, once per unordered pair per cell.

        Args:
            gap_tol (float | None): Contact tolerance; defaults to gap_tol_factor * L.

        Returns:
            list[Contact]: Sorted by (helix_i, helix_j, gap).
        """
        self._require_constructed(w)
        if gap_tol is None:
            gap_tol = self.gap_tol_factor * w.lattice.period
        if gap_tol <= 0:
            raise ValueError(f"gap_tol must be > 0, got {gap_tol}")
        pairs = self._pairs(w)

        def job(i, j):
            limit = w.helices[i].tube_radius + w.helices[j].tube_radius + gap_tol
            return lambda: self.pair_witnesses(
                w.helices[i], w.helices[j], w.lattice, keep_below=limit, grid_n=grid_n, same_helix=(i == j)
            )

        runner = SimpleBatchRunner(max_workers=self.max_workers, label="contacts")
        results = runner.run([job(i, j) for i, j in pairs])

        contacts = []
        for (i, j), witnesses in zip(pairs, results):
            hi, hj = w.helices[i], w.helices[j]
            c1, c2 = HelixModel.curve(hi), HelixModel.curve(hj)
            for witness in witnesses:
                gap = witness.distance - hi.tube_radius - hj.tube_radius
                if gap > gap_tol:
                    continue
                midpoint = 0.5 * (c1.point(witness.s) + c2.point(witness.t) + np.asarray(witness.translation))
                contacts.append(Contact(helix_i=i, helix_j=j, witness=witness, gap=gap, midpoint=tuple(midpoint.tolist())))
        contacts.sort(key=lambda c: (c.helix_i, c.helix_j, c.gap, c.witness.s))
        return contacts

    # --------------------------
    # Reference sampler
    # --------------------------

    @staticmethod
    def brute_force_min_distance(
        h1: HelixSpec, h2: HelixSpec, lattice: Lattice, shells: int = 1, samples: int = 2048, exclude_self: bool = False
    ) -> DistanceWitness:
        """
        Exhaustive grid over s, t in one repeat each and every image within `shells`, then a local polish.

        Independent of the grid-and-Newton path; used as a test oracle.
        """
        k1 = HelixModel.turns_per_repeat(h1, lattice)
        k2 = HelixModel.turns_per_repeat(h2, lattice)
        c1, c2 = HelixModel.curve(h1), HelixModel.curve(h2)
        s_grid = np.linspace(0.0, TWO_PI * k1, samples, endpoint=False)
        t_grid = np.linspace(0.0, TWO_PI * k2, samples, endpoint=False)
        p1 = c1.point(s_grid)
        p2 = c2.point(t_grid)

        best = None
        for translation in Geometry.image_translations(lattice, shells):
            if exclude_self and HelixModel.same_curve(h1, HelixModel.translate(h2, translation), lattice):
                continue
            q = p2 + translation
            sq = (p1 ** 2).sum(1)[:, None] + (q ** 2).sum(1)[None, :] - 2.0 * p1 @ q.T
            i, j = np.unravel_index(int(np.argmin(sq)), sq.shape)
            value = float(sq[i, j])
            if best is None or value < best[0]:
                best = (value, s_grid[i], t_grid[j], translation)

        _, s0, t0, translation = best

        def objective(x):
            diff = c1.point(x[0]) - c2.point(x[1]) - translation
            return float(diff @ diff)

        result = minimize(objective, np.array([s0, t0]), method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 4000})
        s, t = float(result.x[0]), float(result.x[1])
        return DistanceWitness(distance=math.sqrt(max(objective(result.x), 0.0)), s=s, t=t, translation=tuple(translation.tolist()))


@cache_handler.cache()
def _cached_pair_witnesses(h1: dict, h2: dict, lattice: dict, keep_below, grid_n: int, shells, same_helix: bool) -> list[dict]:
    proximity = Proximity(grid_n=grid_n, use_cache=False)
    witnesses = proximity.pair_witnesses(
        HelixSpec(**h1), HelixSpec(**h2), Lattice(**lattice), keep_below=keep_below, grid_n=grid_n, shells=shells, same_helix=same_helix
    )
    return [w.model_dump() for w in witnesses]
