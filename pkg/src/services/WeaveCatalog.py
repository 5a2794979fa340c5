import json
from typing import Any, Optional

import numpy as np
import yaml
from pydantic import ValidationError

from lib.Geometry import Geometry
from lib.Utils import Utils
from models.Errors import ExportError, InvariantViolation, ParseError, UnconstructedWeave, UnknownWeave
from models.Helix import TWO_PI, HelixSpec
from models.Lattice import DirectionFamily, Lattice
from models.Weave import CatalogEntry, ConstructionStatus, WeaveSpec
from models.WeaveFile import WeaveFile
from services.AppData import AppData
from services.HelixModel import HelixModel
from services.Proximity import Proximity
from services.logger.Logger import _log

OVERRIDE_KEYS = {"radius", "tube_radius", "phases", "turns", "pitch", "period"}

# Axis points of the body-diagonal weaves, one per direction of family_directions(FAM111).
GAMMA_ANCHORS = ((0.0, 0.0, 0.0), (0.0, 0.5, 0.0), (0.0, 0.0, 0.5), (0.5, 0.0, 0.0))

# Straight channels of the gyroid along z: (x, y) in cell units.
GYROID_CHANNELS = ((0.25, 0.0), (0.75, 0.5), (0.25, 0.5), (0.75, 0.0))


class WeaveCatalog:
    """
    The built-in weave catalog and the .weave.json file format.

    Catalog rows come from `config/catalog.yml`; each constructed row names a
    recipe that generates one periodic unit of helices from a few parameters.
    """

    def __init__(self, catalog_file: Optional[str] = None):
        self.app_data = AppData()
        self.catalog_file = catalog_file or self.app_data.get_catalog_file()
        self.tube_fit_margin_factor = float(self.app_data.get_config("tube_fit_margin_factor", 0.01))
        self._entries: Optional[list[CatalogEntry]] = None
        self._defaults: dict = {}

    # --------------------------
    # Catalog rows
    # --------------------------

    def _load(self) -> list[CatalogEntry]:
        if self._entries is not None:
            return self._entries
        try:
            with open(self.catalog_file, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise ParseError(f"cannot read catalog {self.catalog_file}: {e}", path=self.catalog_file) from e

        try:
            self._entries = [CatalogEntry(**row) for row in data.get("entries", [])]
        except ValidationError as e:
            raise ParseError(f"invalid catalog row: {e.errors()[0]['loc']}: {e.errors()[0]['msg']}") from e
        self._defaults = data.get("defaults", {})
        _log(f"Loaded {len(self._entries)} catalog entries", {"file": self.catalog_file}, level="DEBUG")
        return self._entries

    def entries(self) -> list[CatalogEntry]:
        return list(self._load())

    def find_entry(self, name: str) -> CatalogEntry:
        """
        Look a row up by display name, ASCII alias or slug ("100-trefoil-laves").

        Raises:
            UnknownWeave: If nothing matches.
        """
        wanted = Utils.slugify(name)
        for entry in self._load():
            if name == entry.name or wanted == Utils.slugify(entry.name):
                return entry
            if wanted in (Utils.slugify(alias) for alias in entry.aliases):
                return entry
        raise UnknownWeave(f"no weave named '{name}' in the catalog", name=name)

    def catalog_entries(self) -> list[WeaveSpec]:
        """
        One WeaveSpec per catalog row, in table order.

        Constructed rows carry their recipe centerlines with zero tube radius;
        `build_weave` adds the fitted tubes.
        """
        specs = []
        for entry in self._load():
            if entry.recipe is None:
                specs.append(self._unconstructed_spec(entry))
            else:
                specs.append(self._recipe_spec(entry, {}))
        return specs

    def _unconstructed_spec(self, entry: CatalogEntry) -> WeaveSpec:
        return WeaveSpec(
            name=entry.name,
            lattice=Lattice(period=float(self._defaults.get("period", 1.0))),
            helices=(),
            expected=entry.expected(),
            construction_status=ConstructionStatus.UNCONSTRUCTED,
            provenance={"cell": entry.cell},
        )

    # --------------------------
    # Building
    # --------------------------

    def build_weave(self, name: str, overrides: Optional[dict[str, Any]] = None, fit_tube: bool = True) -> WeaveSpec:
        """
        Generate one periodic unit of a catalog weave.

        Args:
            name (str): Display name, alias or slug.
            overrides (dict | None): Any of radius, tube_radius, phases (one per helix, radians),
                turns (per axis repeat), pitch, period.
            fit_tube (bool): Fit the tube radius to the centerline clearance unless tube_radius is overridden.

        Returns:
            WeaveSpec: A validated constructed weave.

        Raises:
            UnknownWeave: The name matches no row.
            UnconstructedWeave: The row has no recipe.
            IncommensurateHelix: An overridden pitch does not divide the axis repeat.
        """
        entry = self.find_entry(name)
        if entry.recipe is None:
            raise UnconstructedWeave(
                f"'{entry.name}' has no construction recipe; supply a .weave.json file instead", name=entry.name
            )
        overrides = dict(overrides or {})
        unknown = set(overrides) - OVERRIDE_KEYS
        if unknown:
            raise ParseError(f"unknown override(s): {', '.join(sorted(unknown))}", keys=sorted(unknown))

        weave = self._recipe_spec(entry, overrides)
        if "tube_radius" in overrides:
            weave = weave.with_helices(h.with_updates(tube_radius=float(overrides["tube_radius"])) for h in weave.helices)
        elif fit_tube:
            weave = self.fit_tube_radius(weave)
        self.validate_weave(weave)
        _log(f"Built weave '{weave.name}'", {"helices": len(weave.helices), "overrides": overrides}, level="INFO")
        return weave

    def fit_tube_radius(self, weave: WeaveSpec, margin: Optional[float] = None) -> WeaveSpec:
        """
        Set every tube radius to (d_min - margin) / 2, d_min being the minimum centerline distance.

        Raises:
            InvariantViolation: If the centerlines come within the margin, leaving no room for a tube.
        """
        if margin is None:
            margin = self.tube_fit_margin_factor * weave.lattice.period
        d_min = Proximity().min_centerline_distance(weave)
        rho = (d_min - margin) / 2.0
        if rho <= 0:
            raise InvariantViolation(
                "tube_radius", f"centerlines of '{weave.name}' come within {d_min:.6g}, inside the fit margin {margin:.6g}"
            )
        provenance = dict(weave.provenance or {})
        provenance["tube_fit"] = {"min_centerline_distance": d_min, "margin": margin}
        return weave.with_helices((h.with_updates(tube_radius=rho) for h in weave.helices), provenance=provenance)

    def _recipe_spec(self, entry: CatalogEntry, overrides: dict) -> WeaveSpec:
        recipe = dict(entry.recipe)
        kind = recipe.pop("kind")
        builder = getattr(self, f"_recipe_{kind}", None)
        if builder is None:
            raise ParseError(f"unknown recipe kind '{kind}' for '{entry.name}'", kind=kind)

        period = float(overrides.get("period", self._defaults.get("period", 1.0)))
        lattice = Lattice(period=period, centering=entry.cell if entry.cell in ("P", "I") else "P")
        turns = int(overrides.get("turns", self._defaults.get("turns", 1)))
        radius = float(overrides.get("radius", recipe["radius"] * period))
        phase = TWO_PI * float(recipe.get("phase_turns", 0.0))

        helices = builder(lattice, radius, phase, turns, recipe)
        if "pitch" in overrides:
            helices = [h.with_updates(pitch=float(overrides["pitch"])) for h in helices]
        if "phases" in overrides:
            phases = list(overrides["phases"])
            if len(phases) != len(helices):
                raise ParseError(f"'phases' needs {len(helices)} values, got {len(phases)}")
            helices = [h.with_updates(phase=float(p)) for h, p in zip(helices, phases)]

        provenance = json.loads(json.dumps({"recipe": entry.recipe, "overrides": overrides, "cell": entry.cell, "turns": turns}))
        return WeaveSpec(
            name=entry.name,
            lattice=lattice,
            helices=tuple(helices),
            expected=entry.expected(),
            construction_status=ConstructionStatus.CONSTRUCTED,
            provenance=provenance,
        )

    # --------------------------
    # Recipes
    # --------------------------

    @staticmethod
    def _helix(lattice: Lattice, anchor, direction, radius: float, phase: float, turns: int, handedness: int = 1) -> HelixSpec:
        return HelixSpec(
            anchor=tuple((np.asarray(anchor, dtype=float) * lattice.period).tolist()),
            direction=tuple(np.asarray(direction, dtype=float).tolist()),
            radius=radius,
            pitch=HelixModel.pitch_for_turns(direction, lattice, turns),
            phase=phase,
            handedness=handedness,
        )

    @staticmethod
    def _cyclic_images(helices: list[HelixSpec]) -> list[HelixSpec]:
        """The helices followed by their images under the x->y->z rotation and its square."""
        c = Geometry.cyclic_rotation()
        return helices + [HelixModel.rotate(h, c) for h in helices] + [HelixModel.rotate(h, c @ c) for h in helices]

    def _recipe_simple100(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """
        Three right-handed helices on mutually skew cube-edge axes, related by the 3-fold body diagonal.

        `anchor` is the (x, y) axis point of the z helix in cell units.
        """
        x, y = recipe.get("anchor", (0.0, 0.5))
        base = self._helix(lattice, (x, y, 0.0), (0.0, 0.0, 1.0), radius, phase, turns)
        return self._cyclic_images([base])

    def _recipe_gyroid100(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """
        Twelve helices around the straight gyroid channels: the Laves network, its body-centre
        translate, and the inversion images of both.

        The handedness of each helix must equal the sign of the gyroid function on its channel.
        """
        base = self._helix(lattice, (0.25, 0.0, 0.0), (0.0, 0.0, 1.0), radius, phase, turns)
        shifted = HelixModel.translate(base, 0.5 * lattice.period * np.ones(3))
        z_helices = [base, shifted, HelixModel.invert(base), HelixModel.invert(shifted)]

        for h in z_helices:
            x, y = (h.anchor_array()[:2] / lattice.period) % 1.0
            if not any(np.allclose((x, y), channel) for channel in GYROID_CHANNELS):
                raise InvariantViolation("gyroid_channel", f"({x:.6g}, {y:.6g}, z) is not a gyroid channel")
            samples = np.array([[x, y, z] for z in np.linspace(0.0, 1.0, 8, endpoint=False)]) * lattice.period
            values = Geometry.gyroid_value(samples, lattice.period)
            if np.max(np.abs(values - values[0])) > 1e-9 or abs(abs(values[0]) - 1.0) > 1e-9:
                raise InvariantViolation("gyroid_channel", f"gyroid function is not constant +-1 on ({x}, {y}, z)")
            if int(np.sign(values[0])) != h.handedness:
                raise InvariantViolation("gyroid_channel", f"handedness {h.handedness} against gyroid sign on ({x}, {y}, z)")
        return self._cyclic_images(z_helices)

    def _laves_network(self, lattice, radius, phase, turns) -> list[HelixSpec]:
        """One srs network of 4_1 screw axes: a right-handed helix per cube-edge direction."""
        base = self._helix(lattice, (0.25, 0.0, 0.0), (0.0, 0.0, 1.0), radius, phase, turns)
        return self._cyclic_images([base])

    def _recipe_laves100(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """Two enantiomorphic networks; the second is the point inversion of the first."""
        network_a = self._laves_network(lattice, radius, phase, turns)
        return network_a + [HelixModel.invert(h) for h in network_a]

    def _recipe_tetrahedral100(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """The Laves axes with every helix right-handed."""
        network_a = self._laves_network(lattice, radius, phase, turns)
        return network_a + [HelixModel.invert(h).with_updates(handedness=1) for h in network_a]

    def _coaxial(self, lattice, anchor, direction, radius, phase, turns, count, handedness=1) -> list[HelixSpec]:
        return [
            self._helix(lattice, anchor, direction, radius, phase + TWO_PI * c / count, turns, handedness)
            for c in range(count)
        ]

    def _recipe_gamma111(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """One axis per body diagonal carrying equally phased coaxial helices."""
        count = int(recipe.get("coaxial", 3))
        directions = Geometry.family_directions(DirectionFamily.FAM111)
        helices = []
        for anchor, direction in zip(GAMMA_ANCHORS, directions):
            helices += self._coaxial(lattice, anchor, direction, radius, phase, turns, count)
        return helices

    def _recipe_omega111(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """Three axes per body diagonal: the gamma axis plus the two holes of its projected triangular lattice."""
        count = int(recipe.get("coaxial", 1))
        directions = Geometry.family_directions(DirectionFamily.FAM111)
        helices = []
        for anchor, direction in zip(GAMMA_ANCHORS, directions):
            e1, e2 = (v / lattice.period for v in Geometry.transverse_basis(direction, lattice))
            p1, p2 = e1 - np.dot(e1, direction) * direction, e2 - np.dot(e2, direction) * direction
            if np.dot(p1, p2) < 0:
                holes = ((2 * e1 + e2) / 3.0, (e1 + 2 * e2) / 3.0)
            else:
                holes = ((e1 + e2) / 3.0, 2.0 * (e1 + e2) / 3.0)
            for offset in (np.zeros(3),) + holes:
                helices += self._coaxial(lattice, np.asarray(anchor) + offset, direction, radius, phase, turns, count)
        return helices

    def _recipe_sigma111(self, lattice, radius, phase, turns, recipe) -> list[HelixSpec]:
        """
        Two networks on body-diagonal axes: right-handed helices on the gamma axes and
        their inversion images shifted by (L/4, 0, 0), which are left-handed.
        """
        count = int(recipe.get("coaxial", 1))
        directions = Geometry.family_directions(DirectionFamily.FAM111)
        network_a = []
        for anchor, direction in zip(GAMMA_ANCHORS, directions):
            network_a += self._coaxial(lattice, anchor, direction, radius, phase, turns, count)
        shift = np.array([0.25 * lattice.period, 0.0, 0.0])
        network_b = [HelixModel.invert(h, 0.5 * shift) for h in network_a]
        return network_a + network_b

    # --------------------------
    # Invariants
    # --------------------------

    @staticmethod
    def validate_weave(w: WeaveSpec) -> WeaveSpec:
        """
        Check the WeaveSpec invariants.

        Raises:
            InvariantViolation: naming the first failed invariant.
            IncommensurateHelix: If a helix does not repeat with the lattice.
        """
        for h in w.helices:
            h.check()
        for h in w.helices:
            HelixModel.turns_per_repeat(h, w.lattice)
        if any(n < 2 for n in w.expected.helices_per_crossing):
            raise InvariantViolation("helices_per_crossing", "every crossing joins at least 2 helices")

        canonical = [HelixModel.canonicalize(h, w.lattice) for h in w.helices]
        for i in range(len(canonical)):
            for j in range(i + 1, len(canonical)):
                if canonical[i].matches(canonical[j]):
                    raise InvariantViolation("distinct_helices", f"helices {i} and {j} are the same curve")

        if w.is_constructed and len(w.helices) != w.expected.helices_per_unit:
            raise InvariantViolation(
                "helix_count", f"{len(w.helices)} helices, expected {w.expected.helices_per_unit}"
            )
        return w

    # --------------------------
    # Weave files
    # --------------------------

    def save_weave(self, w: WeaveSpec, path: str) -> None:
        """
        Write a .weave.json file with every number at 17 significant digits.

        Raises:
            ExportError: If the destination cannot be written.
        """
        text = Utils.dumps17(WeaveFile.document(w)) + "\n"
        if not self.app_data._save_file(path, text):
            raise ExportError(f"cannot write weave file {path}", path=path)

    def load_weave(self, path: str) -> WeaveSpec:
        """
        Read and validate a .weave.json file.

        Raises:
            ParseError: Malformed JSON (with line number) or schema errors (with field path).
            InvariantViolation: A domain invariant fails, e.g. handedness 0.
            IncommensurateHelix: A pitch does not divide its axis repeat.
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e}", path=path) from e

        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}:{e.lineno}: {e.msg}", path=path, line=e.lineno) from e

        try:
            document = WeaveFile.model_validate(data)
        except ValidationError as e:
            error = e.errors()[0]
            field = ".".join(str(part) for part in error["loc"])
            raise ParseError(f"{path}: field '{field}': {error['msg']}", path=path, field=field) from e

        return self.validate_weave(document.to_spec())

    @staticmethod
    def describe(entry: CatalogEntry) -> dict:
        """Flat metadata row, as listed by the command line."""
        return {
            "name": entry.name,
            "slug": Utils.slugify(entry.name),
            "packing": entry.packing.value,
            "helices_per_crossing": ",".join(str(n) for n in entry.helices_per_crossing),
            "helices_per_unit": entry.helices_per_unit,
            "chirality": entry.chirality.value.lower(),
            "physical_model": "yes" if entry.physical_model else "no",
            "crossing_types": ", ".join(entry.crossing_types),
            "tier": entry.tier.value,
            "cell": entry.cell,
            "constructed": entry.recipe is not None,
        }
