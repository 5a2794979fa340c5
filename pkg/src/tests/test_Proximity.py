import math
import uuid

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lib.Geometry import Geometry
from models.Errors import InvariantViolation, UnconstructedWeave
from models.Helix import TWO_PI, HelixSpec
from models.Lattice import DirectionFamily, Lattice
from models.Reports import DistanceWitness
from models.Weave import (
    ChiralityClass,
    ConstructionStatus,
    ExpectedProperties,
    PackingLabel,
    Tier,
    WeaveSpec,
)
from services.HelixModel import HelixModel
from services.Proximity import Proximity, _cached_pair_witnesses
from services.WeaveCatalog import WeaveCatalog
from services.logger.Logger import _log

P1 = Lattice(period=1.0)
X, Z = (1.0, 0.0, 0.0), (0.0, 0.0, 1.0)


def rod(anchor, direction=Z, tube_radius=0.0) -> HelixSpec:
    return HelixSpec(anchor=anchor, direction=direction, radius=0.0, pitch=1.0, tube_radius=tube_radius)


def toy_weave(helices, lattice=P1, name="toy") -> WeaveSpec:
    expected = ExpectedProperties(
        packing_label=PackingLabel.NONE,
        helices_per_crossing=(2,),
        helices_per_unit=len(helices),
        chirality_class=ChiralityClass.ONE,
        crossing_type_names=("pair",),
        tier=Tier.A,
    )
    return WeaveSpec(name=name, lattice=lattice, helices=tuple(helices), expected=expected)


@pytest.fixture(scope="module")
def proximity():
    return Proximity(grid_n=64, max_workers=1, use_cache=False)


def test_skew_rods(proximity):
    w = proximity.pair_min_distance(rod((0.0, 0.0, 0.0)), rod((0.0, 0.5, 0.5), X), P1, shells=0)
    assert w.distance == pytest.approx(0.5, abs=1e-9)
    assert not w.non_isolated


def test_coaxial_half_turn_pair_is_flagged(proximity):
    lattice = Lattice(period=TWO_PI)
    h1 = HelixSpec(anchor=(0.0, 0.0, 0.0), direction=Z, radius=1.0, pitch=TWO_PI, phase=0.0)
    h2 = h1.with_updates(phase=math.pi)
    w = proximity.pair_min_distance(h1, h2, lattice, shells=0)
    _log("Coaxial witness", w.model_dump())
    assert w.distance == pytest.approx(2.0, abs=1e-6)
    assert w.non_isolated


def test_identical_helices_touch(proximity):
    h = HelixSpec(anchor=(0.2, 0.3, 0.0), direction=Z, radius=0.2, pitch=1.0, phase=0.7)
    assert proximity.pair_min_distance(h, h, P1, shells=0).distance == pytest.approx(0.0, abs=1e-9)


def test_self_distance(proximity):
    assert proximity.self_min_distance(rod((0.0, 0.0, 0.0)), P1).distance == pytest.approx(1.0, abs=1e-9)

    h = HelixSpec(anchor=(0.5, 0.5, 0.0), direction=Z, radius=0.3, pitch=1.0)
    w = proximity.self_min_distance(h, P1)
    brute = Proximity.brute_force_min_distance(h, h, P1, shells=1, samples=512, exclude_self=True)
    assert 0.4 - 1e-9 <= w.distance <= 1.0
    assert w.distance == pytest.approx(brute.distance, abs=1e-6)
    # the axial repeat maps the helix onto itself and must not count
    assert np.linalg.norm(np.cross(w.translation, Z)) > 0


def test_clearance_of_two_rods(proximity):
    w = toy_weave([rod((0.0, 0.0, 0.0), tube_radius=0.2), rod((0.5, 0.5, 0.0), tube_radius=0.2)])
    report = proximity.clearance(w)
    assert report.min_distance == pytest.approx(math.sqrt(0.5), abs=1e-9)
    assert report.min_gap == pytest.approx(math.sqrt(0.5) - 0.4, abs=1e-9)
    assert report.pair == (0, 1)
    assert report.interwoven
    assert report.pair_count_evaluated == 3


def test_clearance_scales_and_tubes_shift(proximity):
    helices = [
        HelixSpec(anchor=(0.0, 0.5, 0.0), direction=Z, radius=0.2, pitch=1.0, tube_radius=0.05),
        HelixSpec(anchor=(0.5, 0.0, 0.0), direction=X, radius=0.2, pitch=1.0, phase=1.0, tube_radius=0.05),
    ]
    base = proximity.clearance(toy_weave(helices)).min_gap

    scaled = [h.with_updates(anchor=tuple(2.0 * h.anchor_array()), radius=2 * h.radius, pitch=2 * h.pitch, tube_radius=2 * h.tube_radius) for h in helices]
    assert proximity.clearance(toy_weave(scaled, Lattice(period=2.0))).min_gap == pytest.approx(2.0 * base, abs=1e-8)

    thicker = [h.with_updates(tube_radius=h.tube_radius + 0.01) for h in helices]
    assert proximity.clearance(toy_weave(thicker)).min_gap == pytest.approx(base - 0.02, abs=1e-9)


def test_single_tangent_contact(proximity):
    w = toy_weave([rod((0.0, 0.0, 0.0), tube_radius=0.15), rod((0.0, 0.3, 0.0), X, tube_radius=0.15)])
    contacts = proximity.find_contacts(w)
    assert len(contacts) == 1
    contact = contacts[0]
    assert (contact.helix_i, contact.helix_j) == (0, 1)
    assert contact.gap == pytest.approx(0.0, abs=1e-9)
    reduced, _ = Geometry.reduce_point(contact.midpoint, P1)
    assert np.allclose(reduced, [0.0, 0.15, 0.0], atol=1e-6)


def test_contacts_reject_bad_tolerance_and_unconstructed(proximity):
    w = toy_weave([rod((0.0, 0.0, 0.0), tube_radius=0.1)])
    with pytest.raises(ValueError):
        proximity.find_contacts(w, gap_tol=0.0)
    empty = w.with_helices([], construction_status=ConstructionStatus.UNCONSTRUCTED)
    with pytest.raises(UnconstructedWeave):
        proximity.clearance(empty)


def _helix_on(directions):
    # pitch divides the axis repeat, so <111> helices close after sqrt(3) * L
    return st.builds(
        lambda d, turns, a, phase, chi, anchor: HelixSpec(
            anchor=anchor,
            direction=d,
            radius=a,
            pitch=Geometry.axis_repeat_length(d, P1) / turns,
            phase=phase,
            handedness=chi,
        ),
        st.sampled_from(directions),
        st.integers(1, 2),
        st.floats(0.0, 0.3),
        st.floats(0.0, TWO_PI, exclude_max=True),
        st.sampled_from([1, -1]),
        st.tuples(*[st.floats(0.0, 1.0)] * 3),
    )


cube_axes = [tuple(d.tolist()) for d in Geometry.family_directions(DirectionFamily.FAM100)]
body_diagonals = [tuple(d.tolist()) for d in Geometry.family_directions(DirectionFamily.FAM111)]
helix_strategy = _helix_on(cube_axes)
any_family_helix = _helix_on(cube_axes + body_diagonals)


@pytest.mark.slow
@settings(max_examples=200, deadline=None)
@given(any_family_helix, any_family_helix)
def test_matches_brute_force(h1, h2):
    proximity = Proximity(grid_n=96, max_workers=1, use_cache=False)
    fast = proximity.pair_min_distance(h1, h2, P1)
    diagonal = any(abs(h.direction[0] * h.direction[1] * h.direction[2]) > 0 for h in (h1, h2))
    brute = Proximity.brute_force_min_distance(h1, h2, P1, shells=3 if diagonal else 2, samples=2048)
    assert fast.distance == pytest.approx(brute.distance, abs=1e-6)
    assert proximity.pair_min_distance(h2, h1, P1).distance == pytest.approx(fast.distance, abs=1e-9)


@settings(max_examples=15, deadline=None)
@given(helix_strategy, helix_strategy, st.integers(0, 23))
def test_rotation_invariance(h1, h2, index):
    proximity = Proximity(grid_n=64, max_workers=1, use_cache=False)
    d0 = proximity.pair_min_distance(h1, h2, P1).distance
    d1 = proximity.pair_min_distance(HelixModel.rotate_cube(h1, index), HelixModel.rotate_cube(h2, index), P1).distance
    assert d1 == pytest.approx(d0, abs=1e-7)


# --------------------------
# Cache and degenerate input
# --------------------------

def test_cached_witnesses_match_uncached(proximity):
    # a fresh phase keeps the cache key unseen
    phase = (uuid.uuid4().int % 10**6) / 10**6 * TWO_PI
    h1 = HelixSpec(anchor=(0.0, 0.5, 0.0), direction=Z, radius=0.2, pitch=1.0, phase=phase)
    h2 = HelixSpec(anchor=(0.5, 0.0, 0.0), direction=X, radius=0.2, pitch=1.0)
    cached = Proximity(grid_n=64, max_workers=1, use_cache=True)

    plain = proximity.pair_witnesses(h1, h2, P1, keep_below=0.8)
    first = cached.pair_witnesses(h1, h2, P1, keep_below=0.8)
    again = cached.pair_witnesses(h1, h2, P1, keep_below=0.8)
    assert plain
    assert first == plain
    assert again == plain

    payload = _cached_pair_witnesses(h1.model_dump(), h2.model_dump(), P1.model_dump(), 0.8, 64, None, False)
    assert [DistanceWitness(**w) for w in payload] == plain

    w = toy_weave([h1, h2])
    assert cached.min_centerline_distance(w) == proximity.min_centerline_distance(w)


def test_no_reachable_image_is_an_invariant_violation(monkeypatch):
    proximity = Proximity(grid_n=64, max_workers=1, use_cache=False)
    monkeypatch.setattr(proximity, "min_distances", lambda w, grid_n=None: {})
    w = toy_weave([rod((0.0, 0.0, 0.0), tube_radius=0.1)])
    with pytest.raises(InvariantViolation) as err:
        proximity.clearance(w)
    assert err.value.invariant == "images"
    with pytest.raises(InvariantViolation):
        proximity.min_centerline_distance(w)


# --------------------------
# Catalog weaves under symmetry and scale
# --------------------------

TIER_A = [
    "⟨100⟩ Simple Annular",
    "⟨100⟩ Simple Trefoil",
    "⟨100⟩ Simple Trio",
    "⟨100⟩ Trigonal Laves",
    "⟨100⟩ Trefoil Laves",
    "⟨100⟩ Braid Laves",
    "⟨100⟩ Triple Laves",
    "⟨100⟩ Gyroid",
]


@pytest.mark.slow
@pytest.mark.parametrize("name", TIER_A)
def test_clearance_ignores_cube_rotations_and_scales_with_the_cell(name):
    catalog = WeaveCatalog()
    proximity = Proximity(max_workers=1, use_cache=False)
    w = catalog.build_weave(name)
    gap = proximity.clearance(w).min_gap

    for index in range(24):
        rotated = w.with_helices([HelixModel.rotate_cube(h, index) for h in w.helices])
        assert proximity.clearance(rotated).min_gap == pytest.approx(gap, abs=1e-9), index

    doubled = catalog.build_weave(name, {"period": 2.0, "tube_radius": 2.0 * w.helices[0].tube_radius})
    assert doubled.lattice.period == 2.0
    assert proximity.clearance(doubled).min_gap == pytest.approx(2.0 * gap, abs=2e-9)
