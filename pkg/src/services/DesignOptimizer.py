from typing import Any, Callable, Optional, Sequence

import numpy as np

from lib.Geometry import Geometry
from models.Errors import SamePredicate
from models.Helix import TWO_PI, HelixSpec
from models.Reports import OptimizeConfig
from models.Weave import WeaveSpec
from services.AppData import AppData
from services.HelixModel import HelixModel
from services.Proximity import Proximity
from services.WeaveCatalog import WeaveCatalog
from services.logger.Logger import _log

TRANSITION_WIDTH_FACTOR = 1e-4


class SymmetryConstraint:
    """
    Maps free parameters to the full helix list of a weave.

    The free parameters are a transverse offset (two coordinates in the frame of
    the base helix axis); every helix is regenerated as an image of the moved base
    helix under a fixed list of rigid motions, so the symmetry holds exactly at
    every iterate.
    """

    def __init__(self, base: HelixSpec, operations: Sequence[tuple[np.ndarray, np.ndarray]], free_count: int = 2):
        if free_count not in (0, 2):
            raise ValueError(f"free_count must be 0 or 2, got {free_count}")
        self.base = base
        self.operations = [(np.asarray(R, dtype=float), np.asarray(T, dtype=float)) for R, T in operations]
        self.free_count = free_count
        curve = HelixModel.curve(base)
        self._u, self._v = curve.u, curve.v
        self._frozen: tuple[HelixSpec, ...] = ()

    @classmethod
    def cyclic(cls, w: WeaveSpec, index: int = 0) -> "SymmetryConstraint":
        """Images of one helix under the 3-fold rotation about the (1,1,1) diagonal."""
        c = Geometry.cyclic_rotation()
        zero = np.zeros(3)
        return cls(w.helices[index], [(np.eye(3), zero), (c, zero), (c @ c, zero)])

    @classmethod
    def frozen(cls, w: WeaveSpec) -> "SymmetryConstraint":
        """No free coordinates: the identity on the weave's helices."""
        constraint = cls(w.helices[0], [], free_count=0)
        constraint._frozen = tuple(w.helices)
        return constraint

    def initial(self) -> np.ndarray:
        return np.zeros(self.free_count)

    def expand(self, x: np.ndarray) -> list[HelixSpec]:
        if self.free_count == 0:
            return list(self._frozen)
        moved = HelixModel.translate(self.base, x[0] * self._u + x[1] * self._v)
        return [HelixModel.transform(moved, R, T) for R, T in self.operations]


class DesignOptimizer:
    """
    Derivative-free design searches over weave parameters.

    The objective everywhere is the minimum centerline distance over all helix
    pairs; larger is better.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.app_data = AppData()
        self.max_workers = max_workers
        self.catalog = WeaveCatalog()

    def default_config(self, **changes) -> OptimizeConfig:
        values = {
            "max_iterations": int(self.app_data.get_config("optimize_max_iterations", 50)),
            "step_init": float(self.app_data.get_config("optimize_step_init", 0.5)),
            "step_min": float(self.app_data.get_config("optimize_step_min", 1e-3)),
            "tolerance": float(self.app_data.get_config("optimize_tolerance", 1e-12)),
            "restarts": int(self.app_data.get_config("optimize_restarts", 0)),
            "grid_n": int(self.app_data.get_config("optimize_grid_n", 32)),
            "seed": 0,
        }
        values.update(changes)
        return OptimizeConfig(**values)

    # --------------------------
    # Objectives
    # --------------------------

    def objective(self, w: WeaveSpec, grid_n: Optional[int] = None) -> float:
        return Proximity(grid_n=grid_n, max_workers=self.max_workers).min_centerline_distance(w)

    def max_tube_radius(self, w: WeaveSpec, grid_n: Optional[int] = None) -> float:
        """
        Largest uniform tube radius keeping the tubes apart: half the minimum centerline distance.
        """
        return 0.5 * self.objective(w, grid_n)

    # --------------------------
    # Coordinate search
    # --------------------------

    @staticmethod
    def _coordinate_search(x: np.ndarray, value: float, evaluate: Callable[[np.ndarray], float], cfg: OptimizeConfig):
        """
        Cyclic coordinate descent: try +step then -step on each coordinate in index order,
        take the first improvement, halve the step after a sweep without one.

        Returns:
            tuple: (x, value, history of the objective after each iteration)
        """
        history = [value]
        step = cfg.step_init
        iteration = 0
        while iteration < cfg.max_iterations and step >= cfg.step_min:
            improved = False
            for i in range(len(x)):
                for sign in (1.0, -1.0):
                    candidate = x.copy()
                    candidate[i] += sign * step
                    candidate_value = evaluate(candidate)
                    if candidate_value > value + cfg.tolerance:
                        x, value, improved = candidate, candidate_value, True
                        break
            assert value >= history[-1], "coordinate search objective decreased"
            history.append(value)
            iteration += 1
            if not improved:
                step *= 0.5
        return x, value, history

    def _search(self, x0: np.ndarray, evaluate: Callable[[np.ndarray], float], cfg: OptimizeConfig, restart_sampler=None):
        value0 = evaluate(x0)
        best_x, best_value, best_history = self._coordinate_search(x0.copy(), value0, evaluate, cfg)

        rng = np.random.default_rng(cfg.seed)
        for restart in range(cfg.restarts):
            start = restart_sampler(rng) if restart_sampler else x0 + rng.uniform(-cfg.step_init, cfg.step_init, len(x0))
            x, value, history = self._coordinate_search(start, evaluate(start), evaluate, cfg)
            _log(f"Restart {restart + 1}/{cfg.restarts} reached {value:.9g}", level="DEBUG")
            if value > best_value + cfg.tolerance:
                best_x, best_value, best_history = x, value, history
        return best_x, value0, best_value, best_history

    @staticmethod
    def _with_provenance(w: WeaveSpec, helices, kind: str, cfg: OptimizeConfig, start: float, value: float, history) -> WeaveSpec:
        provenance = dict(w.provenance or {})
        provenance["optimizer"] = {
            "kind": kind,
            "config": cfg.model_dump(),
            "objective_start": float(start),
            "objective": float(value),
            "objective_history": [float(v) for v in history],
        }
        return w.with_helices(helices, provenance=provenance)

    def optimize_phases(self, w: WeaveSpec, cfg: Optional[OptimizeConfig] = None) -> WeaveSpec:
        """
        Maximize the minimum centerline distance over the helix phases.

        Args:
            w (WeaveSpec): A constructed weave.
            cfg (OptimizeConfig | None): Search settings; config defaults when None.

        Returns:
            WeaveSpec: Same weave with new phases; the search record is kept in provenance["optimizer"].
        """
        cfg = cfg or self.default_config()
        helices = list(w.helices)

        def build(x):
            return [h.with_updates(phase=float(p)) for h, p in zip(helices, x)]

        def evaluate(x):
            return self.objective(w.with_helices(build(x)), cfg.grid_n)

        x0 = np.array([h.phase for h in helices])
        x, start, value, history = self._search(
            x0, evaluate, cfg, restart_sampler=lambda rng: rng.uniform(0.0, TWO_PI, len(x0))
        )
        if value <= start + cfg.tolerance:
            x = x0
        _log(f"Phase search on '{w.name}': {start:.9g} -> {value:.9g}", {"iterations": len(history) - 1}, level="INFO")
        return self._with_provenance(w, build(x), "phases", cfg, start, max(value, start), history)

    def optimize_anchors(self, w: WeaveSpec, cfg: Optional[OptimizeConfig] = None, constraint: Optional[SymmetryConstraint] = None) -> WeaveSpec:
        """
        Maximize the minimum centerline distance over the free anchor coordinates of a symmetry constraint.

        A constraint without free coordinates returns the input unchanged.
        """
        cfg = cfg or self.default_config()
        constraint = constraint or SymmetryConstraint.cyclic(w)
        if constraint.free_count == 0:
            return w

        def evaluate(x):
            return self.objective(w.with_helices(constraint.expand(x)), cfg.grid_n)

        x0 = constraint.initial()
        x, start, value, history = self._search(x0, evaluate, cfg)
        _log(f"Anchor search on '{w.name}': {start:.9g} -> {value:.9g}", {"offset": x.tolist()}, level="INFO")
        return self._with_provenance(w, constraint.expand(x), "anchors", cfg, start, max(value, start), history)

    # --------------------------
    # Transitions
    # --------------------------

    @staticmethod
    def bisect(predicate: Callable[[float], Any], r_low: float, r_high: float, width: float) -> float:
        """
        Bisect until the bracket is narrower than `width`; returns the bracket midpoint.

        Raises:
            SamePredicate: If the predicate agrees at both ends.
        """
        low_value, high_value = predicate(r_low), predicate(r_high)
        if low_value == high_value:
            raise SamePredicate(f"predicate is {low_value!r} at both {r_low} and {r_high}", r_low=r_low, r_high=r_high)
        while r_high - r_low > width:
            mid = 0.5 * (r_low + r_high)
            if predicate(mid) == low_value:
                r_low = mid
            else:
                r_high = mid
        return 0.5 * (r_low + r_high)

    def find_transition(self, name: str, r_low: float, r_high: float, predicate: Callable[[WeaveSpec], Any]) -> float:
        """
        Winding radius where `predicate` of the catalog weave changes value.

        Returns:
            float: Midpoint of a bracket of width 1e-4 * (r_high - r_low).
        """
        def at_radius(r):
            return predicate(self.catalog.build_weave(name, {"radius": r}))

        radius = self.bisect(at_radius, r_low, r_high, TRANSITION_WIDTH_FACTOR * (r_high - r_low))
        _log(f"Transition of '{name}' at winding radius {radius:.6g}", level="INFO")
        return radius
