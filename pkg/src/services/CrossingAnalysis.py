from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional

import matplotlib
import numpy as np
import yaml

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from lib.Geometry import Geometry
from lib.SimpleBatchRunner import SimpleBatchRunner
from models.Errors import AmbiguousChirality, ExportError, InvariantViolation
from models.Graphs import PeriodicContactGraph
from models.Lattice import Lattice
from models.Reports import (
    ChiralityCensus,
    ClassificationResult,
    Contact,
    CrossingSignature,
    FreezeConfig,
    FreezeRecord,
    SweepReport,
    SweepSample,
)
from models.Weave import ChiralityClass, WeaveSpec
from services.AppData import AppData
from services.DesignOptimizer import DesignOptimizer
from services.HelixModel import HelixModel
from services.Proximity import Proximity
from services.WeaveCatalog import WeaveCatalog
from services.logger.Logger import _log

LAVES_DEGREE = 3
LAVES_GIRTH = 10
LAVES_UNFOLD_SHELLS = 3
SWEEP_TRANSITION_DIVISOR = 100


@dataclass(frozen=True)
class CrossingCluster:
    """
    Contacts forming one crossing.

    `midpoints` are unwrapped so the cluster is spatially contiguous; `shifts[k]`
    is the lattice vector that moved contact k from its reference position, so
    the two curves of contact k are helix_i + shifts[k] and helix_j + translation + shifts[k].
    """

    contacts: tuple[Contact, ...]
    midpoints: np.ndarray
    shifts: np.ndarray

    @property
    def centroid(self) -> np.ndarray:
        return self.midpoints.mean(axis=0)

    def curve_instances(self, k: int) -> tuple[tuple[int, np.ndarray], tuple[int, np.ndarray]]:
        """(helix index, lattice shift) of both curves touching in contact k."""
        c = self.contacts[k]
        shift = self.shifts[k]
        return (c.helix_i, shift), (c.helix_j, shift + np.asarray(c.witness.translation))


class CrossingAnalysis:
    """
    Groups contacts into crossings and checks weave combinatorics: crossing
    signatures, contact and crossing graphs, Laves topology and chirality.
    """

    def __init__(self, grid_n: Optional[int] = None, max_workers: Optional[int] = None):
        self.app_data = AppData()
        self.proximity = Proximity(grid_n=grid_n, max_workers=max_workers)
        self.cluster_radius_factor = float(self.app_data.get_config("cluster_radius_factor", 0.25))
        self.max_workers = int(max_workers if max_workers is not None else self.app_data.get_config("max_workers", 4))

    # --------------------------
    # Clustering
    # --------------------------

    @staticmethod
    def cluster_crossings(contacts: list[Contact], lattice: Lattice, cluster_radius: float) -> list[CrossingCluster]:
        """
        Single-linkage clustering of contact midpoints under the periodic metric.

        Args:
            contacts (list[Contact]): Contacts of one periodic unit.
            lattice (Lattice): The weave lattice.
            cluster_radius (float): Linkage distance.

        Returns:
            list[CrossingCluster]: Ordered by the lexicographically smallest reduced midpoint.
        """
        if cluster_radius <= 0:
            raise ValueError(f"cluster_radius must be > 0, got {cluster_radius}")
        if not contacts:
            return []

        reduced = np.array([Geometry.reduce_point(c.midpoint, lattice)[0] for c in contacts])
        n = len(contacts)

        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        links = {k: [] for k in range(n)}
        for a in range(n):
            for b in range(a + 1, n):
                delta = Geometry.minimum_image(reduced[b] - reduced[a], lattice)
                if np.linalg.norm(delta) <= cluster_radius:
                    links[a].append((b, delta))
                    links[b].append((a, -delta))
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)

        groups: dict[int, list[int]] = {}
        for k in range(n):
            groups.setdefault(find(k), []).append(k)

        clusters = []
        for members in groups.values():
            root = min(members, key=lambda k: tuple(reduced[k]))
            position = {root: reduced[root]}
            queue = deque([root])
            while queue:
                a = queue.popleft()
                for b, delta in links[a]:
                    if b not in position:
                        position[b] = position[a] + delta
                        queue.append(b)
            order = sorted(members)
            midpoints = np.array([position[k] for k in order])
            # lattice vector taking contact k from its computed place to its unwrapped place
            shifts = np.array([np.round((position[k] - np.asarray(contacts[k].midpoint)) / (0.5 * lattice.period)) * 0.5 * lattice.period for k in order])
            clusters.append(CrossingCluster(tuple(contacts[k] for k in order), midpoints, shifts))

        clusters.sort(key=lambda c: min(tuple(np.round(m, 9)) for m in c.midpoints))
        return clusters

    # --------------------------
    # Signatures
    # --------------------------

    @staticmethod
    def _curve_key(helices, lattice: Lattice, index: int, shift: np.ndarray) -> tuple:
        return (index,) + HelixModel.line_key(helices[index], lattice, shift)

    @staticmethod
    def signature_of(cluster: CrossingCluster, helices, lattice: Lattice) -> CrossingSignature:
        """
        Participants, contacts per touching pair, diameter and coplanarity of a crossing.
        """
        pair_counts: Counter = Counter()
        curves = set()
        for k in range(len(cluster.contacts)):
            (i, si), (j, sj) = cluster.curve_instances(k)
            key_a = CrossingAnalysis._curve_key(helices, lattice, i, si)
            key_b = CrossingAnalysis._curve_key(helices, lattice, j, sj)
            curves.update((key_a, key_b))
            pair_counts[tuple(sorted((key_a, key_b)))] += 1

        points = cluster.midpoints
        diffs = points[:, None, :] - points[None, :, :]
        diameter = float(np.sqrt((diffs ** 2).sum(-1)).max())
        if len(points) < 3:
            coplanarity = 0.0
        else:
            coplanarity = float(np.linalg.svd(points - points.mean(axis=0), compute_uv=False)[-1])

        return CrossingSignature(
            participants=max(2, len(curves)),
            pair_contacts=tuple(sorted(pair_counts.values())),
            cluster_diameter=diameter,
            coplanarity=coplanarity,
        )

    def _clusters(self, w: WeaveSpec, gap_tol: Optional[float], cluster_radius: Optional[float]) -> list[CrossingCluster]:
        contacts = self.proximity.find_contacts(w, gap_tol=gap_tol)
        radius = cluster_radius if cluster_radius is not None else self.cluster_radius_factor * w.lattice.period
        return self.cluster_crossings(contacts, w.lattice, radius)

    def classify_weave(self, w: WeaveSpec, gap_tol: Optional[float] = None, cluster_radius: Optional[float] = None) -> ClassificationResult:
        """
        Signature histogram of one periodic unit compared with the expected crossings.

        PASS iff there are as many signature classes as expected crossing kinds and the
        classes' participant counts equal the expected helices per crossing.
        """
        return self.classify_clusters(w, self._clusters(w, gap_tol, cluster_radius))

    def classify_clusters(self, w: WeaveSpec, clusters: list[CrossingCluster]) -> ClassificationResult:
        signatures = [self.signature_of(c, w.helices, w.lattice) for c in clusters]
        histogram = Counter(s.label() for s in signatures)
        classes = sorted({s.key for s in signatures}, key=lambda k: (-k[0], k[1]))

        expected = list(w.expected.helices_per_crossing)
        passed = len(classes) == len(expected) and sorted(k[0] for k in classes) == sorted(expected)

        names = []
        for participants, _ in classes:
            if participants in expected:
                names.append(w.expected.crossing_type_names[expected.index(participants)])
            else:
                names.append("unexpected")

        result = ClassificationResult(
            histogram=dict(sorted(histogram.items())),
            signatures=tuple(signatures),
            classes=tuple(classes),
            passed=passed,
            crossing_names=tuple(names),
        )
        _log(f"Crossings of '{w.name}': {result.histogram}", {"pass": passed}, level="INFO")
        return result

    # --------------------------
    # Graphs
    # --------------------------

    @staticmethod
    def _reduce_edge_translation(T: np.ndarray, r_i: np.ndarray, r_j: np.ndarray) -> np.ndarray:
        """Canonical representative of T modulo the axial repeats of both endpoint curves."""
        n = np.cross(r_i, r_j)
        if np.linalg.norm(n) < 1e-12:
            d = r_i / np.linalg.norm(r_i)
            along = float(T @ d) / float(np.linalg.norm(r_i))
            return T - np.floor(along + 1e-9) * r_i
        basis = np.column_stack([r_i, r_j, n])
        alpha, beta, _ = np.linalg.solve(basis, T)
        reduced = T - np.floor(alpha + 1e-9) * r_i - np.floor(beta + 1e-9) * r_j
        return np.where(np.abs(reduced) < 1e-9, 0.0, reduced)

    def contact_graph(self, w: WeaveSpec, gap_tol: Optional[float] = None, cluster_radius: Optional[float] = None) -> PeriodicContactGraph:
        """
        Helices as nodes; one edge per touching curve pair of each crossing, with the
        lattice translation of the far curve.
        """
        clusters = self._clusters(w, gap_tol, cluster_radius)
        return self.contact_graph_from_clusters(w, clusters)

    def contact_graph_from_clusters(self, w: WeaveSpec, clusters: list[CrossingCluster]) -> PeriodicContactGraph:
        graph = PeriodicContactGraph(nodes=list(range(len(w.helices))), lattice=w.lattice)
        repeats = [Geometry.repeat_vector(h.direction, w.lattice) for h in w.helices]
        for cluster in clusters:
            for k in range(len(cluster.contacts)):
                (i, si), (j, sj) = cluster.curve_instances(k)
                T = self._reduce_edge_translation(sj - si, repeats[i], repeats[j])
                if i == j and np.allclose(T, 0.0):
                    continue
                graph.add_edge(i, j, T)
        return graph

    @staticmethod
    def network_clusters(clusters: list[CrossingCluster], contact_graph: PeriodicContactGraph) -> list[list[CrossingCluster]]:
        """
        Crossings of each contact-graph component, in component order.

        A crossing belongs to a component when every helix touching in it does; crossings
        joining two components belong to none.
        """
        networks = []
        for component in contact_graph.components():
            members = set(component)
            networks.append([
                cluster for cluster in clusters
                if all(c.helix_i in members and c.helix_j in members for c in cluster.contacts)
            ])
        return networks

    def crossing_graph(self, w: WeaveSpec, gap_tol: Optional[float] = None, cluster_radius: Optional[float] = None) -> PeriodicContactGraph:
        """
        Crossings as nodes; crossings consecutive along some helix are joined.
        """
        clusters = self._clusters(w, gap_tol, cluster_radius)
        return self.crossing_graph_from_clusters(w, clusters)

    def crossing_graph_from_clusters(self, w: WeaveSpec, clusters: list[CrossingCluster]) -> PeriodicContactGraph:
        graph = PeriodicContactGraph(nodes=list(range(len(clusters))), lattice=w.lattice)
        occurrences: dict[int, list[tuple[float, int, np.ndarray]]] = {i: [] for i in range(len(w.helices))}

        for c_index, cluster in enumerate(clusters):
            centroid = cluster.centroid
            seen = set()
            for k in range(len(cluster.contacts)):
                for index, shift in cluster.curve_instances(k):
                    key = self._curve_key(w.helices, w.lattice, index, shift)
                    if key in seen:
                        continue
                    seen.add(key)
                    h = w.helices[index]
                    repeat = Geometry.repeat_vector(h.direction, w.lattice)
                    length = float(np.linalg.norm(repeat))
                    alpha = float((centroid - shift - h.anchor_array()) @ h.direction_array())
                    m = np.floor(alpha / length)
                    # the crossing image sitting on the reference copy of helix `index`
                    occurrences[index].append((alpha - m * length, c_index, -shift - m * repeat))

        for index, found in occurrences.items():
            if not found:
                continue
            repeat = Geometry.repeat_vector(w.helices[index].direction, w.lattice)
            found.sort(key=lambda o: (o[0], o[1]))
            for (a0, c0, v0), (a1, c1, v1) in zip(found, found[1:] + [(found[0][0], found[0][1], found[0][2] + repeat)]):
                T = v1 - v0
                if c0 == c1 and np.allclose(T, 0.0):
                    continue
                graph.add_edge(c0, c1, T)
        return graph

    @staticmethod
    def periodic_graph_from_points(points, lattice: Lattice, bond: float, tol: float = 1e-6) -> PeriodicContactGraph:
        """
        Periodic graph joining every pair of net points at distance `bond`.

        Args:
            points: (N, 3) node positions of one cell.
        """
        points = np.asarray(points, dtype=float)
        graph = PeriodicContactGraph(nodes=list(range(len(points))), lattice=lattice)
        images = Geometry.image_translations(lattice, 1)
        for u in range(len(points)):
            for v in range(len(points)):
                for T in images:
                    if u == v and not np.any(T):
                        continue
                    if abs(float(np.linalg.norm(points[v] + T - points[u])) - bond) <= tol:
                        graph.add_edge(u, v, T)
        return graph

    # --------------------------
    # Topology checks
    # --------------------------

    @staticmethod
    def girth(g, roots) -> float:
        """
        Shortest cycle through any of `roots`' BFS trees: min over non-tree edges (u, w) of d(u) + d(w) + 1.
        """
        best = float("inf")
        for root in roots:
            dist = {root: 0}
            parent = {root: None}
            queue = deque([root])
            while queue:
                u = queue.popleft()
                if 2 * dist[u] + 1 >= best:
                    break
                for v in g.neighbors(u):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        queue.append(v)
                    elif parent[u] != v:
                        best = min(best, dist[u] + dist[v] + 1)
        return best

    def laves_check(self, g: PeriodicContactGraph, component: Optional[list[int]] = None) -> bool:
        """
        True iff the unfolded component is 3-regular with girth 10.
        """
        sub = g.subgraph(component) if component is not None else g
        unfolded = sub.unfold(LAVES_UNFOLD_SHELLS)
        interior = [node for node in unfolded.nodes if max(abs(x) for x in node[1]) <= 2 * (LAVES_UNFOLD_SHELLS - 2)]
        if any(unfolded.degree(node) != LAVES_DEGREE for node in interior):
            return False
        roots = [node for node in unfolded.nodes if not any(node[1])]
        value = self.girth(unfolded, roots)
        _log(f"Unfolded graph girth {value}", {"nodes": unfolded.number_of_nodes()}, level="DEBUG")
        return value == LAVES_GIRTH

    def chirality_census(self, w: WeaveSpec, graph: Optional[PeriodicContactGraph] = None) -> ChiralityCensus:
        """
        ONE if every helix has the same handedness; DOUBLE for two single-handed contact
        components of opposite hand; BOTH when one component mixes hands.

        Raises:
            AmbiguousChirality: Any other pattern.
        """
        right = sum(1 for h in w.helices if h.handedness == 1)
        left = len(w.helices) - right
        if right == 0 or left == 0:
            return ChiralityCensus(chirality=ChiralityClass.ONE, right=right, left=left)

        graph = graph or self.contact_graph(w)
        components = graph.components()
        hands = [{w.helices[i].handedness for i in comp} for comp in components]
        census = dict(right=right, left=left, components=tuple(tuple(c) for c in components))
        if len(components) == 1:
            return ChiralityCensus(chirality=ChiralityClass.BOTH, **census)
        if len(components) == 2 and all(len(h) == 1 for h in hands) and hands[0] != hands[1]:
            return ChiralityCensus(chirality=ChiralityClass.DOUBLE, **census)
        raise AmbiguousChirality(
            f"{len(components)} contact components with handedness sets {[sorted(h) for h in hands]}",
            components=[list(c) for c in components],
        )

    # --------------------------
    # Radius sweep
    # --------------------------

    def _sample(self, name: str, radius: float, reference_tube: float, reoptimize: bool,
                gap_tol: Optional[float], cluster_radius: Optional[float]) -> tuple[SweepSample, tuple]:
        """
        One sweep point, built with its own catalog and optimizer so parallel jobs share nothing.

        Radii where the centerlines leave no room for a tube give an empty histogram and no classes.
        """
        catalog = WeaveCatalog()
        w = catalog.build_weave(name, {"radius": radius}, fit_tube=False)
        if reoptimize:
            optimizer = DesignOptimizer(max_workers=1)
            cfg = optimizer.default_config(max_iterations=int(self.app_data.get_config("sweep_optimize_max_iterations", 4)))
            w = optimizer.optimize_phases(w, cfg)
        try:
            w = catalog.fit_tube_radius(w)
        except InvariantViolation:
            d_min = self.proximity.min_centerline_distance(w)
            _log(f"No tube fits '{name}' at winding radius {radius:.6g}", {"d_min": d_min}, level="DEBUG")
            return SweepSample(winding_radius=radius, histogram={}, min_gap=d_min - 2.0 * reference_tube), ()
        result = self.classify_weave(w, gap_tol, cluster_radius)
        d_min = w.provenance["tube_fit"]["min_centerline_distance"]
        sample = SweepSample(winding_radius=radius, histogram=result.histogram, min_gap=d_min - 2.0 * reference_tube)
        return sample, result.classes

    def radius_sweep(self, name: str, r_from: float, r_to: float, steps: int, reoptimize: Optional[bool] = None,
                     gap_tol: Optional[float] = None, cluster_radius: Optional[float] = None) -> SweepReport:
        """
        Rebuild a catalog weave over a range of winding radii and record where the crossing classes change.

        The other recipe parameters (phase, anchor) stay at their catalog values unless
        `reoptimize` re-runs a short phase search at every radius. min_gap is measured
        against the tube radius fitted at the catalog radius, so it shows where a fixed
        wire would start to collide.
        """
        if not r_from < r_to:
            raise ValueError(f"r_from must be < r_to, got {r_from} >= {r_to}")
        if steps < 2:
            raise ValueError(f"steps must be >= 2, got {steps}")
        if reoptimize is None:
            reoptimize = bool(self.app_data.get_config("sweep_reoptimize_phases", False))

        reference_tube = WeaveCatalog().build_weave(name).helices[0].tube_radius
        radii = [float(r) for r in np.linspace(r_from, r_to, steps)]

        def job(r):
            return lambda: self._sample(name, r, reference_tube, reoptimize, gap_tol, cluster_radius)

        results = SimpleBatchRunner(max_workers=self.max_workers, label="radius-sweep").run([job(r) for r in radii])
        samples = [sample for sample, _ in results]
        classes = [cls for _, cls in results]

        def class_at(r):
            return self._sample(name, r, reference_tube, reoptimize, gap_tol, cluster_radius)[1]

        width = (r_to - r_from) / (SWEEP_TRANSITION_DIVISOR * steps)
        transitions = []
        for (r0, c0), (r1, c1) in zip(zip(radii, classes), zip(radii[1:], classes[1:])):
            if c0 != c1:
                transitions.append(DesignOptimizer.bisect(class_at, r0, r1, width))

        report = SweepReport(name=name, samples=tuple(samples), transitions=tuple(transitions))
        _log(f"Radius sweep of '{name}': {len(samples)} samples, {len(transitions)} transitions", level="INFO")
        return report

    # --------------------------
    # Freezing
    # --------------------------

    def default_freeze_config(self, **changes) -> FreezeConfig:
        values = {
            "step": float(self.app_data.get_config("freeze_step", 0.01)),
            "width": float(self.app_data.get_config("freeze_width", 1e-4)),
            "r_min": float(self.app_data.get_config("freeze_r_min", 0.02)),
            "r_max": float(self.app_data.get_config("freeze_r_max", 0.5)),
            "grid_n": int(self.app_data.get_config("freeze_grid_n", 96)),
            "gap_tol_factor": float(self.app_data.get_config("gap_tol_factor", 0.02)),
            "cluster_radius_factor": self.cluster_radius_factor,
            "tube_fit_margin_factor": float(self.app_data.get_config("tube_fit_margin_factor", 0.01)),
        }
        values.update(changes)
        return FreezeConfig(**values)

    def _class_at(self, catalog: WeaveCatalog, name: str, radius: float, cfg: FreezeConfig) -> Optional[tuple]:
        """
        (histogram items, chirality, classification passed) at one winding radius; None when no tube fits.
        """
        w = catalog.build_weave(name, {"radius": radius}, fit_tube=False)
        L = w.lattice.period
        try:
            w = catalog.fit_tube_radius(w, margin=cfg.tube_fit_margin_factor * L)
        except InvariantViolation:
            return None
        analysis = CrossingAnalysis(grid_n=cfg.grid_n, max_workers=self.max_workers)
        clusters = analysis._clusters(w, cfg.gap_tol_factor * L, cfg.cluster_radius_factor * L)
        result = analysis.classify_clusters(w, clusters)
        try:
            chirality = analysis.chirality_census(w, analysis.contact_graph_from_clusters(w, clusters)).chirality
        except AmbiguousChirality:
            chirality = None
        return tuple(sorted(result.histogram.items())), chirality, result.passed

    def freeze(self, name: str, cfg: Optional[FreezeConfig] = None) -> FreezeRecord:
        """
        Find the winding-radius interval around the catalog radius on which the crossing
        histogram and chirality do not change, and move the radius to its midpoint.

        Radii are stepped outward from the catalog radius by `cfg.step` until the class
        changes or a bound (r_min, r_max) is reached; each edge is then bisected to
        `cfg.width`. Phase, anchor and the other recipe values are kept. Lengths in the
        config are in units of the cell edge; the record is rounded to 1e-4 of it.

        Raises:
            InvariantViolation: The catalog radius itself does not give the row's crossings and chirality.
        """
        cfg = cfg or self.default_freeze_config()
        catalog = WeaveCatalog()
        entry = catalog.find_entry(name)
        seed_weave = catalog.build_weave(name, fit_tube=False)
        L = seed_weave.lattice.period
        seed = float(entry.recipe["radius"]) * L

        wanted = self._class_at(catalog, name, seed, cfg)
        if wanted is None or not wanted[2] or wanted[1] != entry.chirality:
            raise InvariantViolation("freeze_seed", f"'{entry.name}' does not show its crossings at radius {seed:.6g}")

        def same(r):
            return self._class_at(catalog, name, r, cfg) == wanted

        def edge(inside, direction, bound):
            r = inside
            while (r + direction * cfg.step * L - bound) * direction <= 0 and same(r + direction * cfg.step * L):
                r += direction * cfg.step * L
            outside = r + direction * cfg.step * L
            if (outside - bound) * direction > 0:
                if same(bound):
                    return bound
                outside = bound
            return DesignOptimizer.bisect(same, min(r, outside), max(r, outside), cfg.width * L)

        low = edge(seed, -1.0, cfg.r_min * L)
        high = edge(seed, 1.0, cfg.r_max * L)
        radius = round(0.5 * (low + high) / L, 4) * L

        recipe = dict(entry.recipe)
        recipe["radius"] = round(radius / L, 4)
        recipe["window"] = [round(low / L, 4), round(high / L, 4)]
        frozen = catalog.build_weave(name, {"radius": radius}, fit_tube=False)
        d_min = self.proximity.min_centerline_distance(frozen, cfg.grid_n)
        record = FreezeRecord(
            name=entry.name,
            seed_radius=seed,
            window=(low, high),
            radius=radius,
            histogram=dict(wanted[0]),
            min_centerline_distance=d_min,
            chirality=wanted[1],
            recipe=recipe,
            config=cfg,
        )
        _log(f"Froze '{entry.name}' at winding radius {radius:.6g}", {"window": [low, high], "histogram": record.histogram}, level="INFO")
        return record

    @staticmethod
    def freeze_document(record: FreezeRecord) -> str:
        """YAML text of a freeze record, ready to paste into the catalog row."""
        return yaml.safe_dump(record.model_dump(mode="json"), sort_keys=False, allow_unicode=True)

    @staticmethod
    def save_sweep_plot(report: SweepReport, path: str) -> None:
        """PNG of min_gap against winding radius with the class transitions marked."""
        frame = report.to_dataframe()
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot(frame["winding_radius"], frame["min_gap"], marker="o")
        for radius in report.transitions:
            ax.axvline(radius, color="grey", linestyle="--", linewidth=0.8)
        ax.axhline(0.0, color="black", linewidth=0.5)
        ax.set_xlabel("winding radius")
        ax.set_ylabel("min gap")
        ax.set_title(report.name)
        try:
            fig.savefig(path, dpi=120, bbox_inches="tight")
        except OSError as e:
            raise ExportError(f"could not write {path}: {e}", path=path)
        finally:
            plt.close(fig)
        _log(f"Wrote sweep plot {path}", level="INFO")
