import json

import pytest

from models.Helix import HelixSpec
from models.Lattice import Lattice
from models.Weave import ChiralityClass, ExpectedProperties, PackingLabel, Tier, WeaveSpec
from services.CrossingAnalysis import CrossingAnalysis
from services.Validation import Validation
from services.WeaveCatalog import WeaveCatalog

P1 = Lattice(period=1.0)
X, Z = (1.0, 0.0, 0.0), (0.0, 0.0, 1.0)


def crossed_rods(tube_radius=0.14, name="crossed rods", second=None, crossing_names=("pair",)) -> WeaveSpec:
    helices = [
        HelixSpec(anchor=(0.0, 0.0, 0.0), direction=Z, radius=0.0, pitch=1.0, tube_radius=tube_radius),
        second or HelixSpec(anchor=(0.0, 0.3, 0.0), direction=X, radius=0.0, pitch=1.0, tube_radius=tube_radius),
    ]
    expected = ExpectedProperties(
        packing_label=PackingLabel.NONE,
        helices_per_crossing=(2,),
        helices_per_unit=2,
        chirality_class=ChiralityClass.ONE,
        crossing_type_names=crossing_names,
        tier=Tier.A,
    )
    return WeaveSpec(name=name, lattice=P1, helices=tuple(helices), expected=expected)


@pytest.fixture(scope="module")
def validation():
    return Validation(grid_n=64, gap_tol=0.05, max_workers=1)


def test_crossed_rods_pass(validation):
    report = validation.validate(crossed_rods(), seed=3)
    assert list(report.checks) == ["counts", "periodicity", "clearance", "crossings", "chirality", "laves"]
    assert report.passed
    clearance = report.checks["clearance"].details
    assert clearance["min_gap"] == pytest.approx(0.02, abs=1e-9)
    assert clearance["pair"] == [0, 1]
    assert clearance["contacts"] == 1
    assert not report.checks["laves"].applicable

    doc = json.loads(Validation.report_json(report))
    assert doc["pass"] is True
    assert doc["seed"] == 3
    assert doc["checks"]["laves"] == {"pass": True, "applicable": False}

    text = Validation.report_text(report)
    assert text.splitlines()[0] == "crossed rods: PASS"
    assert "[n/a ] laves" in text


def test_overlapping_tubes_fail_clearance(validation):
    report = validation.validate(crossed_rods(tube_radius=0.2))
    assert not report.passed
    assert not report.checks["clearance"].passed
    assert report.checks["clearance"].details["min_gap"] == pytest.approx(-0.1, abs=1e-9)


def test_duplicate_helix_fails_periodicity(validation):
    copy = HelixSpec(anchor=(1.0, 1.0, 0.5), direction=Z, radius=0.0, pitch=1.0, tube_radius=0.14)
    report = validation.validate(crossed_rods(second=copy))
    assert report.checks["periodicity"].details["duplicates"] == [[0, 1]]
    assert not report.passed


def test_laves_check_applies_to_trigonal_laves_rows(validation):
    report = validation.validate(crossed_rods(name="toy Laves", crossing_names=("trigonal",)))
    laves = report.checks["laves"]
    assert laves.applicable
    assert not laves.passed
    assert laves.details["networks"] == 1

    other = validation.validate(crossed_rods(name="toy Laves"))
    assert not other.checks["laves"].applicable


@pytest.mark.slow
def test_trigonal_laves_networks_are_each_laves():
    catalog = WeaveCatalog()
    report = Validation().validate(catalog.build_weave("⟨100⟩ Trigonal Laves"))
    assert report.passed
    laves = report.checks["laves"]
    assert laves.applicable
    assert laves.details == {"networks": 2, "per_network": [True, True]}
    assert report.checks["chirality"].passed


@pytest.mark.slow
def test_trefoil_laves_networks_stay_apart():
    catalog = WeaveCatalog()
    w = catalog.build_weave("⟨100⟩ Trefoil Laves")
    analysis = CrossingAnalysis(max_workers=1)
    graph = analysis.contact_graph(w)
    components = graph.components()
    assert len(components) == 2
    for component in components:
        assert len({w.helices[i].handedness for i in component}) == 1

    report = Validation().validate(w)
    assert report.passed
    assert not report.checks["laves"].applicable
