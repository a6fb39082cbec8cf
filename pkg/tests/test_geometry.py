import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccap.geometry import (
    Complement,
    Difference,
    Direction,
    Disk,
    HalfPlane,
    Intersection,
    Polygon,
    Union,
    breakpoints,
    complement,
    difference,
    intersect,
    reflect_point,
    reflect_region,
    region_from_json,
    region_to_json,
    union,
)

# midpoints of a 0.0025 grid never coincide with the quarter-integer endpoints below
GRID = (np.arange(4000) + 0.5) * 0.0025


def mask(intervals):
    m = np.zeros(GRID.shape, dtype=bool)
    for a, b in intervals:
        m |= (GRID > a) & (GRID < b)
    return m


@st.composite
def interval_lists(draw):
    pts = sorted(set(draw(st.lists(st.integers(0, 40), max_size=8))))
    if len(pts) % 2:
        pts = pts[:-1]
    return [(pts[i] / 4.0, pts[i + 1] / 4.0) for i in range(0, len(pts), 2)]


@given(interval_lists(), interval_lists())
def test_interval_algebra_matches_masks(u, v):
    mu, mv = mask(u), mask(v)
    assert np.array_equal(mask(intersect(u, v)), mu & mv)
    assert np.array_equal(mask(union(u, v)), mu | mv)
    assert np.array_equal(mask(difference(u, v)), mu & ~mv)
    assert np.array_equal(mask(complement(u)), ~mu)


SHAPES = [
    Disk((0.3, -0.2), 1.1),
    HalfPlane((1.0, 2.0), 0.5),
    Polygon(((0, 0), (2, 0), (2, 1), (1, 0.4), (0, 1))),
    Difference(Disk((0, 0), 2.0), Polygon(((-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)))),
    Union((Disk((1, 1), 0.5), Intersection((Disk((0, 0), 1.0), HalfPlane((0, 1), 0))))),
    Complement(Disk((0, 0), 0.7)),
]


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("x", [(0.1, 0.05), (-1.3, 0.4), (1.7, -0.9)])
def test_ray_intervals_agree_with_membership(shape, x):
    for phi in np.linspace(0.01, 2 * math.pi, 37):
        e = (math.cos(phi), math.sin(phi))
        pts = np.asarray(x) + GRID[:, None] * np.asarray(e)
        inside = shape.contains(pts)
        got = mask(shape.intervals(x, e))
        # allow disagreement only at grid points within one step of an endpoint
        assert np.count_nonzero(inside != got) <= 2 * len(shape.intervals(x, e)) + 2


def test_ray_from_circle_point_starts_at_zero():
    d = Disk((0.0, 0.0), 1.0)
    x = (math.cos(0.7), math.sin(0.7))
    iv = d.intervals(x, (-x[0], -x[1]))
    assert iv[0][0] == 0.0 and iv[0][1] == pytest.approx(2.0)


def test_direction_keeps_relative_accuracy():
    x = (math.cos(0.7), math.sin(0.7))
    n = x
    v, w = (-n[1], n[0]), (n[1], -n[0])
    e = Direction(v, (-v[1], v[0]), 1e-12)
    chord = Disk((0.0, 0.0), 1.0).intervals(x, e)[0][1]
    assert chord == pytest.approx(2e-12, rel=1e-9)
    assert isinstance(e, tuple) and len(e) == 2
    assert w == (n[1], -n[0])


def test_polygon_orientation_and_area():
    cw = Polygon(((0, 0), (0, 1), (1, 1), (1, 0)))
    assert cw.area == pytest.approx(1.0)
    assert cw.vertices == ((1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0))
    with pytest.raises(ValueError):
        Polygon(((0, 0), (1, 1)))


def test_disk_validation():
    with pytest.raises(ValueError):
        Disk((0, 0), 0.0)
    assert Disk((0, 0), 2.0).area == pytest.approx(4 * math.pi)


@pytest.mark.parametrize("shape", [Disk((0.5, 0.3), 0.8), HalfPlane((0.2, 1.0), 0.3),
                                   Polygon(((0, 0), (1, 0), (0, 1)))])
def test_reflection_maps_membership(shape):
    x, m = (0.4, 0.9), (0.6, 0.8)
    mirrored = reflect_region(shape, x, m)
    pts = np.random.default_rng(1).uniform(-2, 2, (2000, 2))
    images = np.array([reflect_point(p, x, m) for p in pts])
    assert np.array_equal(mirrored.contains(images), shape.contains(pts))


def test_breakpoints_tangent_directions():
    bp = breakpoints(Disk((0.0, 0.0), 1.0), (0.0, 1.0))
    assert sorted(bp.singular) == pytest.approx([0.0, math.pi])
    outside = breakpoints(Disk((3.0, 0.0), 1.0), (0.0, 0.0))
    assert sorted(outside.kinks) == pytest.approx([math.asin(1 / 3), 2 * math.pi - math.asin(1 / 3)])


@pytest.mark.parametrize("obj", [
    {"type": "disk", "center": [0.5, -1.0], "radius": 2.0},
    {"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
])
def test_json_round_trip(obj):
    shape = region_from_json(json.loads(json.dumps(obj)))
    assert region_from_json(region_to_json(shape)) == shape


def test_json_unknown_type():
    with pytest.raises(ValueError):
        region_from_json({"type": "ellipse"})
