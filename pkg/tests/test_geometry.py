import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trievac.geometry import (SQRT3, T, Y, OffPerimeter, dist, mirror_coord, on_perimeter,
                              perimeter_coord, perimeter_point, reflect_ao, third_side)


def test_side_lengths_are_one():
    for p, q in ((T.A, T.B), (T.B, T.C), (T.C, T.A)):
        assert dist(p, q) == pytest.approx(1.0, abs=1e-15)


def test_centroid_distances():
    assert dist(T.O, T.A) == pytest.approx(2 * Y, abs=1e-15)
    assert dist(T.O, T.M1) == pytest.approx(Y, abs=1e-15)
    assert dist(T.O, T.A) == pytest.approx(0.577350, abs=1e-6)
    assert T.h == pytest.approx(3 * Y) and T.h == pytest.approx(SQRT3 / 2)


def test_midpoints():
    assert np.allclose(T.M1, (T.B + T.C) / 2)
    assert np.allclose(T.M2, (T.C + T.A) / 2)
    assert np.allclose(T.M3, (T.A + T.B) / 2)


def test_third_side_matches_coordinates():
    # |Q2C| with |BQ2| = 0.4 on BA
    q2 = T.B + 0.4 * (T.A - T.B)
    assert third_side(0.4, 1, math.pi / 3) == pytest.approx(dist(q2, T.C), abs=1e-12)
    assert third_side(0.4, 1, math.pi / 3) == pytest.approx(math.sqrt(0.76), abs=1e-12)
    assert third_side(1, 1, math.pi / 3) == pytest.approx(1.0)
    assert third_side(0, 0.7, 1.0) == pytest.approx(0.7)


def test_third_side_rejects_negative():
    with pytest.raises(ValueError):
        third_side(-0.1, 1, 1.0)


@pytest.mark.parametrize("s,name", [(0.0, "A"), (1.0, "B"), (1.5, "M1"), (2.0, "C"), (2.5, "M2"),
                                    (0.5, "M3")])
def test_perimeter_landmarks(s, name):
    assert np.allclose(perimeter_point(s), T.named_points()[name])


def test_perimeter_coord_of_c():
    assert perimeter_coord(T.C) == pytest.approx(2.0)


def test_interior_point_is_off_perimeter():
    with pytest.raises(OffPerimeter):
        perimeter_coord(T.O)
    assert not on_perimeter(T.O)


@given(st.floats(0.0, 3.0, exclude_max=True))
def test_round_trip(s):
    p = perimeter_point(s)
    assert np.linalg.norm(perimeter_point(perimeter_coord(p)) - p) < 1e-9


@given(st.floats(0.0, 3.0, exclude_max=True))
def test_mirror_coord_reflects(s):
    assert np.allclose(perimeter_point(mirror_coord(s)), reflect_ao(perimeter_point(s)), atol=1e-12)


def test_containment():
    assert T.contains(T.O)
    assert T.contains(T.M1)
    assert not T.contains(np.array([0.0, 0.5]))
    assert sum(T.barycentric(T.O)) == pytest.approx(1.0)
