import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barysub.errors import DegenerateAngle, PointDegenerate
from barysub.triangle import (
    ShapePoint,
    TrianglePoints,
    area,
    diameter,
    edge_lengths_sq,
    functional_I,
    functional_J,
    largest_angle,
    median_lengths_sq,
    normalize,
    subdivide,
    subdivision_vertices,
)

SQ3 = math.sqrt(3.0)

coord = st.floats(-10.0, 10.0, allow_nan=False)


@st.composite
def triangles(draw):
    pts = [(draw(coord), draw(coord)) for _ in range(3)]
    t = TrianglePoints(*pts)
    # keep clearly non-flat, non-tiny triangles so relative tolerances are meaningful
    if area(t) < 1e-3 * diameter(t) ** 2 or diameter(t) < 1e-3:
        t = TrianglePoints((0.0, 0.0), (1.0, 0.0), (0.3, 0.7))
    return t


@st.composite
def shapes(draw):
    return normalize(draw(triangles()))


def naive_shape(t):
    # independent oracle: edge-length formulas with the sqrt for y
    (ax, ay), (bx, by), (cx, cy) = t
    l = sorted([(ax - bx) ** 2 + (ay - by) ** 2, (bx - cx) ** 2 + (by - cy) ** 2, (cx - ax) ** 2 + (cy - ay) ** 2])
    x = (l[2] - l[1] + l[0]) / (2 * l[2])
    y = math.sqrt(max(0.0, sum(l) / (2 * l[2]) - x * x + x - 1))
    return x, y


# -- normalize ---------------------------------------------------------------

def test_normalize_equilateral():
    s = normalize(((0, 0), (1, 0), (0.5, SQ3 / 2)))
    assert s.x == pytest.approx(0.5, abs=1e-15)
    assert s.y == pytest.approx(SQ3 / 2, rel=1e-15)


def test_normalize_flat():
    s = normalize(((0, 0), (1, 0), (0.25, 0)))
    assert s == ShapePoint(0.25, 0.0)
    assert s.is_flat


def test_normalize_right_triangle():
    s = normalize(((0, 0), (2, 0), (0, 1)))
    assert s.x == pytest.approx(0.2, rel=1e-15)
    assert s.y == pytest.approx(0.4, rel=1e-15)
    assert s.x**2 + s.y**2 == pytest.approx(0.2, rel=1e-14)


def test_normalize_point_triangle():
    with pytest.raises(PointDegenerate):
        normalize(((1.5, 2.0), (1.5, 2.0), (1.5, 2.0)))


def test_normalize_two_coincident_vertices():
    # a doubled vertex is a flat triangle with shortest edge 0
    assert normalize(((0, 0), (0, 0), (3, 4))) == ShapePoint(0.0, 0.0)


@given(triangles())
def test_normalize_matches_edge_formula(t):
    s = normalize(t)
    x, y = naive_shape(t)
    assert s.x == pytest.approx(x, abs=1e-9)
    assert s.y == pytest.approx(y, abs=1e-7)
    assert 0.0 <= s.x <= 0.5 and s.y >= 0.0
    assert s.x**2 + s.y**2 <= 1.0 + 1e-12


@given(
    triangles(),
    st.floats(0, 2 * math.pi),
    st.floats(0.01, 100.0),
    st.floats(-50, 50),
    st.floats(-50, 50),
    st.booleans(),
)
def test_similarity_invariance(t, theta, scale, tx, ty, reflect):
    c, s = math.cos(theta), math.sin(theta)

    def f(p):
        px, py = p
        if reflect:
            py = -py
        return (scale * (c * px - s * py) + tx, scale * (s * px + c * py) + ty)

    a = normalize(t)
    b = normalize(TrianglePoints(*(f(p) for p in t)))
    assert b.x == pytest.approx(a.x, abs=1e-9)
    assert b.y == pytest.approx(a.y, abs=1e-9)


def test_vertex_order_irrelevant():
    t = ((0.1, 0.2), (3.0, -1.0), (1.0, 2.5))
    ref = normalize(t)
    for perm in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        s = normalize(tuple(t[k] for k in perm))
        assert s.x == pytest.approx(ref.x, abs=1e-15)
        assert s.y == pytest.approx(ref.y, abs=1e-15)


def test_shape_point_rejects_invalid():
    for x, y in ((-0.1, 0.2), (0.6, 0.1), (0.3, -0.1), (0.5, 1.0)):
        with pytest.raises(ValueError):
            ShapePoint(x, y)


# -- subdivide ---------------------------------------------------------------

def test_subdivide_equilateral():
    for child in subdivide(ShapePoint(0.5, SQ3 / 2)):
        assert child.x == pytest.approx(0.25, abs=1e-15)
        assert child.y == pytest.approx(SQ3 / 4, rel=1e-14)


def test_subdivide_flat_follows_z_maps():
    from barysub.flat import z_map

    for x in (0.0, 0.1, 0.2, 0.25, 2 / 7, 0.4, 0.5):
        children = subdivide(ShapePoint(x, 0.0))
        for i, child in enumerate(children, 1):
            assert child.y == 0.0
            assert child.x == z_map(i, x)


def test_subdivide_flat_geometry_matches_z_maps():
    # the z-map table against the raw flat subdivision geometry
    from barysub.flat import z_map

    for x in np.linspace(0, 0.5, 41):
        for i, t in enumerate(subdivision_vertices(ShapePoint(x, 0.0)), 1):
            assert normalize(t).x == pytest.approx(z_map(i, x), abs=1e-14)


def test_subdivide_right_triangle_diameters():
    for t in subdivision_vertices(ShapePoint(0.2, 0.4)):
        assert 0.25 <= diameter(t) <= 1.0


def test_subdivision_children_tile_the_parent():
    s = ShapePoint(0.2, 0.4)
    parent = area(((0, 0), (s.x, s.y), (1, 0)))
    assert sum(area(t) for t in subdivision_vertices(s)) == pytest.approx(parent, rel=1e-14)


@settings(max_examples=300)
@given(shapes())
def test_children_have_equal_area(s):
    parent = area(((0.0, 0.0), (s.x, s.y), (1.0, 0.0)))
    for t in subdivision_vertices(s):
        assert area(t) == pytest.approx(parent / 6, rel=1e-12, abs=1e-300)


@settings(max_examples=300)
@given(shapes())
def test_child_diameters_bounds(s):
    for t in subdivision_vertices(s):
        assert 0.25 - 1e-15 <= diameter(t) <= 1.0 + 1e-15


@settings(max_examples=300)
@given(shapes())
def test_subdivide_matches_normalize_of_raw_children(s):
    for child, t in zip(subdivide(s), subdivision_vertices(s)):
        ref = normalize(t)
        assert child.x == pytest.approx(ref.x, abs=1e-12)
        assert child.y == pytest.approx(ref.y, rel=1e-12, abs=1e-300)


# -- functionals -------------------------------------------------------------

def test_J_values():
    assert functional_J(ShapePoint(0.5, SQ3 / 2)) == pytest.approx(4 * SQ3, rel=1e-15)
    assert functional_J(ShapePoint(0.2, 0.4)) == pytest.approx(10.0, rel=1e-15)
    assert functional_J(ShapePoint(0.3, 0.0)) == math.inf


def test_I_values():
    i = functional_I(ShapePoint(0.2, 0.4))
    assert i == pytest.approx((1 + math.sqrt(0.2) + math.sqrt(0.8)) ** 2 / 0.2, rel=1e-14)
    assert i == pytest.approx(27.42, abs=0.01)
    assert i / 3 <= 10.0 <= i
    assert functional_I(ShapePoint(0.5, SQ3 / 2)) == pytest.approx(12 * SQ3, rel=1e-14)
    assert functional_I(ShapePoint(0.1, 0.0)) == math.inf


@settings(max_examples=1000)
@given(shapes())
def test_submartingale_identity(s):
    if s.y == 0.0:
        return
    mean_child = sum(functional_J(c) for c in subdivide(s)) / 6
    assert mean_child == pytest.approx(4 / 3 * functional_J(s), rel=1e-12)


@given(shapes())
def test_J_between_I_over_3_and_I(s):
    if s.y == 0.0:
        return
    j, i = functional_J(s), functional_I(s)
    assert i / 3 * (1 - 1e-12) <= j <= i * (1 + 1e-12)
    assert j >= 4 * math.pi / 3


@given(shapes())
def test_height_bounds_reciprocal_J(s):
    # 4(x^2+y^2-x+1) lies in [3, 6] on the shape domain, so 3/y <= J <= 8/y
    if s.y == 0.0:
        return
    inv = 1 / functional_J(s)
    assert s.y / 8 * (1 - 1e-12) <= inv <= s.y / 3 * (1 + 1e-12)


@given(shapes())
def test_median_length_identity(s):
    x, y = s.x, s.y
    m1, m2, m3 = median_lengths_sq(s)
    assert m1 == pytest.approx(x * x / 4 + y * y / 4 - x + 1, rel=1e-12)
    assert m2 == pytest.approx(x * x / 4 + y * y / 4 + x / 2 + 0.25, rel=1e-12)
    assert m3 == pytest.approx(x * x + y * y - x + 0.25, rel=1e-12, abs=1e-15)
    assert (m1 + m2 + m3) / sum(edge_lengths_sq(s)) == pytest.approx(0.75, rel=1e-12)


# -- largest angle -----------------------------------------------------------

def test_largest_angle_values():
    assert largest_angle(ShapePoint(0.5, SQ3 / 2)) == pytest.approx(math.pi / 3, rel=1e-15)
    assert largest_angle(ShapePoint(0.2, 0.4)) == pytest.approx(math.pi / 2, rel=1e-15)
    assert largest_angle(ShapePoint(0.3, 0.0)) == math.pi


def test_largest_angle_degenerate_corner():
    with pytest.raises(DegenerateAngle):
        largest_angle(ShapePoint(0.0, 0.0))


@given(shapes())
def test_largest_angle_is_max_angle(s):
    if s.x == 0.0 and s.y == 0.0:
        return
    # law of cosines at each vertex of the normalized triangle
    ab, bc = math.hypot(s.x, s.y), math.hypot(1 - s.x, s.y)
    if ab == 0.0:
        return
    cos_b = (ab * ab + bc * bc - 1.0) / (2 * ab * bc)
    b = math.acos(min(1.0, max(-1.0, cos_b)))
    assert largest_angle(s) == pytest.approx(b, abs=1e-7)
    assert largest_angle(s) >= math.pi / 3 - 1e-12
