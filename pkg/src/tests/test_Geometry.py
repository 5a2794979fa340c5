import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lib.Geometry import Geometry
from models.Errors import InvalidDirection, UnsupportedAxis
from models.Lattice import DirectionFamily, Lattice

S3 = math.sqrt(3.0)
P1 = Lattice(period=1.0)
I1 = Lattice(period=1.0, centering="I")


def test_family_directions():
    assert np.allclose(Geometry.family_directions(DirectionFamily.FAM100), np.eye(3))
    diagonals = Geometry.family_directions(DirectionFamily.FAM111)
    assert len(diagonals) == 4
    assert np.allclose(np.abs(diagonals), 1.0 / S3)
    for a in range(4):
        for b in range(a + 1, 4):
            assert diagonals[a] @ diagonals[b] == pytest.approx(-1.0 / 3.0)


def test_classify_direction():
    family, index, sign = Geometry.classify_direction([-1.0, 1.0, -1.0] / np.float64(-S3))
    assert (family, index, sign) == (DirectionFamily.FAM111, 2, -1)
    with pytest.raises(UnsupportedAxis):
        Geometry.classify_direction(np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0))


def test_frame_examples():
    f = Geometry.frame_for_direction([0.0, 0.0, 1.0])
    assert f.u_hat == (1.0, 0.0, 0.0)
    assert np.allclose(f.v_hat, [0.0, 1.0, 0.0])

    f = Geometry.frame_for_direction([1.0, 0.0, 0.0])
    assert np.allclose(f.u_hat, [0.0, 1.0, 0.0])
    assert np.allclose(f.v_hat, [0.0, 0.0, 1.0])

    f = Geometry.frame_for_direction(np.ones(3) / S3)
    assert np.allclose(f.u_hat, np.array([-1.0, 1.0, 0.0]) / math.sqrt(2.0))
    assert np.allclose(f.v_hat, np.array([-1.0, -1.0, 2.0]) / math.sqrt(6.0))


def test_frame_rejects_non_unit():
    with pytest.raises(InvalidDirection):
        Geometry.frame_for_direction([0.0, 0.0, 2.0])


@given(st.sampled_from(Geometry.family_directions(DirectionFamily.FAM100) + Geometry.family_directions(DirectionFamily.FAM111)),
       st.sampled_from([1, -1]))
def test_frame_is_orthonormal_and_deterministic(d, sign):
    d = sign * d
    u, v, dd = Geometry.frame_for_direction(d).as_arrays()
    m = np.column_stack([u, v, dd])
    assert np.allclose(m.T @ m, np.eye(3), atol=1e-12)
    assert np.linalg.det(m) == pytest.approx(1.0)
    assert Geometry.frame_for_direction(d) == Geometry.frame_for_direction(d.copy())


def test_axis_repeat_length():
    assert Geometry.axis_repeat_length([0.0, 1.0, 0.0], P1) == pytest.approx(1.0)
    assert Geometry.axis_repeat_length(np.ones(3) / S3, P1) == pytest.approx(S3)
    assert Geometry.axis_repeat_length([1.0, 0.0, 0.0], Lattice(period=2.0)) == pytest.approx(2.0)
    assert Geometry.axis_repeat_length(np.ones(3) / S3, I1) == pytest.approx(S3 / 2.0)
    assert np.allclose(Geometry.repeat_vector(-np.ones(3) / S3, P1), [-1.0, -1.0, -1.0])


def test_image_translations():
    assert Geometry.image_translations(P1, 0).tolist() == [[0.0, 0.0, 0.0]]
    assert len(Geometry.image_translations(P1, 1)) == 27
    assert len(Geometry.image_translations(P1, 2)) == 125
    body = Geometry.image_translations(I1, 1)
    assert len(body) == 27 + 8
    assert [0.5, 0.5, 0.5] in body.tolist()
    keys = [tuple(t) for t in Geometry.image_translations(P1, 1)]
    assert keys == sorted(keys)


def test_minimum_image_and_reduce_point():
    assert np.allclose(Geometry.minimum_image([0.9, -0.8, 0.1], P1), [-0.1, 0.2, 0.1])
    assert np.allclose(Geometry.minimum_image([0.45, 0.45, 0.45], I1), [-0.05, -0.05, -0.05])

    reduced, shift = Geometry.reduce_point([1.25, -0.5, 3.0], P1)
    assert np.allclose(reduced, [0.25, 0.5, 0.0])
    assert np.allclose(shift, [-1.0, 1.0, -3.0])
    reduced, _ = Geometry.reduce_point([1.0 - 1e-12, 0.0, 0.0], P1)
    assert reduced[0] == pytest.approx(0.0, abs=1e-11)


@given(st.tuples(*[st.floats(-5.0, 5.0)] * 3))
def test_reduce_transverse_is_lattice_invariant(point):
    d = np.array([0.0, 0.0, 1.0])
    p = np.array(point)
    rep, T = Geometry.reduce_transverse(p, d, P1)
    assert rep[2] == 0.0
    assert np.all(rep[:2] >= -1e-9) and np.all(rep[:2] < 1.0)
    assert np.allclose(T, np.round(T))
    shifted, _ = Geometry.reduce_transverse(p + np.array([2.0, -3.0, 1.0]), d, P1)
    # equal modulo whole cells; rounding can land a boundary point on either side
    assert np.allclose((shifted - rep + 0.5) % 1.0 - 0.5, 0.0, atol=1e-8)


def test_cube_rotations():
    rotations = Geometry.cube_rotations()
    assert len(rotations) == 24
    assert np.array_equal(rotations[0], np.eye(3))
    assert all(round(np.linalg.det(r)) == 1 for r in rotations)
    c = Geometry.cyclic_rotation()
    assert np.array_equal(c @ np.array([1.0, 0.0, 0.0]), [0.0, 1.0, 0.0])
    assert np.allclose(np.linalg.matrix_power(c, 3), np.eye(3))


def test_gyroid_value():
    assert Geometry.gyroid_value([0.0, 0.0, 0.0])[0] == pytest.approx(0.0)
    assert Geometry.gyroid_value([[0.25, 0.0, 0.0]])[0] == pytest.approx(1.0)
    values = Geometry.gyroid_value(np.random.default_rng(0).uniform(0, 1, (50, 3)), period=1.0)
    assert values.shape == (50,)
    assert np.all(np.abs(values) <= 1.5 + 1e-12)
