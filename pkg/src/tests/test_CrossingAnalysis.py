import math
import os

import networkx as nx
import numpy as np
import pytest
import yaml
from pydantic import ValidationError

from models.Errors import AmbiguousChirality, InvariantViolation
from models.Graphs import PeriodicContactGraph
from models.Helix import HelixSpec
from models.Lattice import Lattice
from models.Reports import Contact, DistanceWitness, FreezeConfig, SweepReport, SweepSample
from models.Weave import ChiralityClass, ExpectedProperties, PackingLabel, Tier, WeaveSpec
from services.CrossingAnalysis import CrossingAnalysis
from services.WeaveCatalog import WeaveCatalog

P1 = Lattice(period=1.0)
X, Z = (1.0, 0.0, 0.0), (0.0, 0.0, 1.0)

SRS = np.array([
    [1, 1, 1], [3, 7, 5], [7, 5, 3], [5, 3, 7],
    [5, 5, 5], [7, 3, 1], [3, 1, 7], [1, 7, 3],
]) / 8.0
DIAMOND = np.array([
    [0, 0, 0], [0, 2, 2], [2, 0, 2], [2, 2, 0],
    [1, 1, 1], [1, 3, 3], [3, 1, 3], [3, 3, 1],
]) / 4.0


@pytest.fixture(scope="module")
def analysis():
    return CrossingAnalysis(grid_n=64, max_workers=1)


def toy_weave(helices, per_crossing=(2,), names=("pair",)) -> WeaveSpec:
    expected = ExpectedProperties(
        packing_label=PackingLabel.NONE,
        helices_per_crossing=per_crossing,
        helices_per_unit=len(helices),
        chirality_class=ChiralityClass.ONE,
        crossing_type_names=names,
        tier=Tier.A,
    )
    return WeaveSpec(name="toy", lattice=P1, helices=tuple(helices), expected=expected)


def tangent_rods(**expected) -> WeaveSpec:
    helices = [
        HelixSpec(anchor=(0.0, 0.0, 0.0), direction=Z, radius=0.0, pitch=1.0, tube_radius=0.15),
        HelixSpec(anchor=(0.0, 0.3, 0.0), direction=X, radius=0.0, pitch=1.0, tube_radius=0.15),
    ]
    return toy_weave(helices, **expected)


def shortest_cycle_through(g: nx.Graph, roots) -> int:
    """Girth oracle: drop each root edge and close it with a shortest path."""
    best = math.inf
    for root in roots:
        for other in list(g.neighbors(root)):
            h = g.copy()
            h.remove_edge(root, other)
            try:
                best = min(best, nx.shortest_path_length(h, root, other) + 1)
            except nx.NetworkXNoPath:
                pass
    return best


# --------------------------
# Nets
# --------------------------

def test_srs_net_is_laves(analysis):
    g = CrossingAnalysis.periodic_graph_from_points(SRS, P1, math.sqrt(2.0) / 4.0)
    assert g.is_symmetric()
    assert all(g.degree(u) == 3 for u in g.nodes)
    assert analysis.laves_check(g)

    unfolded = g.unfold(2)
    roots = [node for node in unfolded.nodes if not any(node[1])]
    assert CrossingAnalysis.girth(unfolded, roots) == 10
    assert shortest_cycle_through(unfolded, roots) == 10


def test_diamond_and_cubic_are_not_laves(analysis):
    diamond = CrossingAnalysis.periodic_graph_from_points(DIAMOND, P1, math.sqrt(3.0) / 4.0)
    assert all(diamond.degree(u) == 4 for u in diamond.nodes)
    assert not analysis.laves_check(diamond)
    unfolded = diamond.unfold(2)
    roots = [node for node in unfolded.nodes if not any(node[1])]
    assert CrossingAnalysis.girth(unfolded, roots) == 6 == shortest_cycle_through(unfolded, roots)

    cubic = CrossingAnalysis.periodic_graph_from_points([[0.0, 0.0, 0.0]], P1, 1.0)
    assert cubic.degree(0) == 6
    assert len(cubic.quotient().edges) == 3
    assert not analysis.laves_check(cubic)
    unfolded = cubic.unfold(2)
    assert CrossingAnalysis.girth(unfolded, [(0, (0, 0, 0))]) == 4


def test_graph_edges_stay_symmetric():
    g = PeriodicContactGraph(nodes=[0, 1], lattice=P1)
    assert g.add_edge(0, 1, (1.0, 0.0, 0.0))
    assert not g.add_edge(1, 0, (-1.0, 0.0, 0.0))
    assert g.is_symmetric()
    assert g.components() == [[0, 1]]


# --------------------------
# Clustering and signatures
# --------------------------

def _contact(midpoint, i=0, j=1) -> Contact:
    witness = DistanceWitness(distance=0.1, s=0.0, t=0.0, translation=(0.0, 0.0, 0.0))
    return Contact(helix_i=i, helix_j=j, witness=witness, gap=0.0, midpoint=midpoint)


def test_cluster_crossings_wraps_the_cell():
    contacts = [_contact((0.5, 0.1, 0.1)), _contact((0.05, 0.5, 0.5)), _contact((0.98, 0.5, 0.5))]
    clusters = CrossingAnalysis.cluster_crossings(contacts, P1, 0.1)
    assert len(clusters) == 2
    wrapped, single = clusters
    assert len(wrapped.contacts) == 2 and len(single.contacts) == 1
    assert np.allclose(wrapped.midpoints, [[0.05, 0.5, 0.5], [-0.02, 0.5, 0.5]])
    assert np.allclose(wrapped.shifts, [[0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    assert np.allclose(wrapped.centroid, [0.015, 0.5, 0.5])


def test_cluster_crossings_edges():
    assert CrossingAnalysis.cluster_crossings([], P1, 0.1) == []
    with pytest.raises(ValueError):
        CrossingAnalysis.cluster_crossings([_contact((0.0, 0.0, 0.0))], P1, 0.0)


def test_single_tangent_crossing(analysis):
    result = analysis.classify_weave(tangent_rods())
    assert result.histogram == {"p2:1": 1}
    assert result.classes == ((2, (1,)),)
    assert result.passed
    assert result.crossing_names == ("pair",)

    graph = analysis.contact_graph(tangent_rods())
    assert graph.components() == [[0, 1]]


def test_unexpected_crossing_fails(analysis):
    result = analysis.classify_weave(tangent_rods(per_crossing=(3,), names=("triple",)))
    assert not result.passed
    assert result.crossing_names == ("unexpected",)


# --------------------------
# Chirality
# --------------------------

def _hands(*chis) -> WeaveSpec:
    helices = [
        HelixSpec(anchor=(0.25 * k, 0.5, 0.0), direction=Z, radius=0.1, pitch=1.0, handedness=chi)
        for k, chi in enumerate(chis)
    ]
    return toy_weave(helices)


def _graph(n, *pairs) -> PeriodicContactGraph:
    g = PeriodicContactGraph(nodes=list(range(n)), lattice=P1)
    for u, v in pairs:
        g.add_edge(u, v, (0.0, 0.0, 0.0))
    return g


def test_chirality_census(analysis):
    assert analysis.chirality_census(_hands(1, 1, 1)).chirality == ChiralityClass.ONE
    assert analysis.chirality_census(_hands(-1, -1)).left == 2

    double = analysis.chirality_census(_hands(1, 1, -1, -1), _graph(4, (0, 1), (2, 3)))
    assert double.chirality == ChiralityClass.DOUBLE
    assert double.components == ((0, 1), (2, 3))

    both = analysis.chirality_census(_hands(1, -1, 1), _graph(3, (0, 1), (1, 2)))
    assert both.chirality == ChiralityClass.BOTH

    with pytest.raises(AmbiguousChirality):
        analysis.chirality_census(_hands(1, -1, 1), _graph(3, (0, 1)))
    with pytest.raises(AmbiguousChirality):
        analysis.chirality_census(_hands(1, 1, -1), _graph(3))


# --------------------------
# Sweeps
# --------------------------

def test_sweep_rejects_bad_ranges(analysis):
    with pytest.raises(ValueError):
        analysis.radius_sweep("⟨100⟩ Simple Annular", 0.2, 0.1, 5)
    with pytest.raises(ValueError):
        analysis.radius_sweep("⟨100⟩ Simple Annular", 0.1, 0.2, 1)


def test_sweep_report_frame_and_plot(tmp_path):
    report = SweepReport(
        name="toy",
        samples=(
            SweepSample(winding_radius=0.1, histogram={"p2:1": 3}, min_gap=0.02),
            SweepSample(winding_radius=0.2, histogram={"p2:1": 1, "p3:1-1-1": 2}, min_gap=-0.01),
        ),
        transitions=(0.15,),
    )
    frame = report.to_dataframe()
    assert list(frame.columns) == ["winding_radius", "classes", "dominant_class", "min_gap"]
    assert frame["dominant_class"].tolist() == ["p2:1", "p3:1-1-1"]

    path = str(tmp_path / "sweep.png")
    CrossingAnalysis.save_sweep_plot(report, path)
    assert os.path.getsize(path) > 0

    with pytest.raises(ValueError):
        SweepReport(name="bad", samples=tuple(reversed(report.samples)))


@pytest.mark.slow
def test_radius_sweep_samples(analysis):
    report = analysis.radius_sweep("⟨100⟩ Simple Annular", 0.1, 0.2, 3, reoptimize=False)
    assert [s.winding_radius for s in report.samples] == pytest.approx([0.1, 0.15, 0.2])
    assert all(0.1 <= r <= 0.2 for r in report.transitions)
    assert len(report.to_dataframe()) == 3


def test_sweep_is_the_same_on_one_or_many_workers():
    radii = (0.30, 0.38, 3)
    serial = CrossingAnalysis(grid_n=64, max_workers=1).radius_sweep("⟨100⟩ Simple Annular", *radii)
    threaded = CrossingAnalysis(grid_n=64, max_workers=4).radius_sweep("⟨100⟩ Simple Annular", *radii)
    assert threaded == serial
    assert all(s.histogram == {"p3:1-1-1": 1} for s in serial.samples)


def test_sweep_records_collisions_as_empty_samples(analysis):
    report = analysis.radius_sweep("⟨100⟩ Trigonal Laves", 0.17, 0.18, 2)
    assert [s.histogram for s in report.samples] == [{}, {}]
    assert all(s.min_gap < 0 for s in report.samples)


@pytest.mark.slow
def test_braid_sweep_changes_class_once():
    report = CrossingAnalysis(max_workers=1).radius_sweep("⟨100⟩ Braid Laves", 0.205, 0.235, 7)
    assert report.samples[0].histogram == {"p6:1-1-1-1-1-1": 1}
    assert report.samples[-1].histogram == {"p2:1": 6}
    assert len(report.transitions) == 1
    assert report.transitions[0] == pytest.approx(0.2236, abs=1e-3)


# --------------------------
# Networks
# --------------------------

def test_network_clusters_split_by_component():
    contacts = [
        _contact((0.1, 0.1, 0.1), 0, 1),
        _contact((0.5, 0.5, 0.5), 2, 3),
        _contact((0.1, 0.6, 0.6), 1, 2),
    ]
    clusters = CrossingAnalysis.cluster_crossings(contacts, P1, 0.1)
    assert len(clusters) == 3
    networks = CrossingAnalysis.network_clusters(clusters, _graph(4, (0, 1), (2, 3)))
    assert [[(c.helix_i, c.helix_j) for cl in net for c in cl.contacts] for net in networks] == [[(0, 1)], [(2, 3)]]

    joined = CrossingAnalysis.network_clusters(clusters, _graph(4, (0, 1), (1, 2), (2, 3)))
    assert len(joined) == 1 and len(joined[0]) == 3


# --------------------------
# Freezing
# --------------------------

FROZEN = [
    "⟨100⟩ Simple Annular",
    "⟨100⟩ Simple Trefoil",
    "⟨100⟩ Simple Trio",
    "⟨100⟩ Trigonal Laves",
    "⟨100⟩ Trefoil Laves",
    "⟨100⟩ Braid Laves",
    "⟨100⟩ Triple Laves",
    "⟨100⟩ Gyroid",
]


def test_freeze_config_rejects_bad_values(analysis):
    cfg = analysis.default_freeze_config(step=0.02)
    assert cfg.step == 0.02
    assert cfg.grid_n == 96
    with pytest.raises(ValidationError):
        FreezeConfig(step=0.001, width=0.01)
    with pytest.raises(ValidationError):
        FreezeConfig(r_min=0.4, r_max=0.3)
    with pytest.raises(ValidationError):
        FreezeConfig(colour=1)


def test_freeze_needs_a_working_seed(analysis, monkeypatch):
    monkeypatch.setattr(CrossingAnalysis, "_class_at", lambda self, catalog, name, radius, cfg: None)
    with pytest.raises(InvariantViolation) as err:
        analysis.freeze("⟨100⟩ Simple Annular")
    assert err.value.invariant == "freeze_seed"


@pytest.mark.slow
@pytest.mark.parametrize("name", FROZEN)
def test_frozen_windows_match_the_catalog(name):
    entry = WeaveCatalog().find_entry(name)
    record = CrossingAnalysis(max_workers=1).freeze(name)
    assert record.window == pytest.approx(tuple(entry.recipe["window"]), abs=3e-4)
    assert record.radius == pytest.approx(entry.recipe["radius"], abs=1.5e-4)
    assert record.chirality == entry.chirality
    assert sum(record.histogram.values()) >= 1
    assert record.min_centerline_distance > record.config.tube_fit_margin_factor

    doc = yaml.safe_load(CrossingAnalysis.freeze_document(record))
    assert doc["name"] == name
    assert doc["recipe"]["phase_turns"] == entry.recipe["phase_turns"]


def test_class_series_by_window(analysis):
    # rows ordered by where their crossing class first appears as the winding radius grows
    catalog = WeaveCatalog()
    laves = ["⟨100⟩ Trigonal Laves", "⟨100⟩ Trefoil Laves", "⟨100⟩ Braid Laves", "⟨100⟩ Triple Laves"]
    entries = sorted((catalog.find_entry(name) for name in laves), key=lambda e: e.recipe["window"][0])
    assert [e.name for e in entries] == [
        "⟨100⟩ Trefoil Laves", "⟨100⟩ Trigonal Laves", "⟨100⟩ Braid Laves", "⟨100⟩ Triple Laves",
    ]
    assert [e.helices_per_crossing[0] for e in entries] == [3, 3, 6, 2]
