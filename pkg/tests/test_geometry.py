import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathtri.errors import GeometryError
from pathtri.geometry import (
    EPS,
    ROUND,
    PathClass,
    PathClassTriangle,
    PathTriangle,
    SampledPath,
    arc_samples,
    boundary,
    convex_hull,
    fiber_family,
    interior_contains,
    interior_mask,
    make_path,
    make_path_triangle,
    polygon_area,
    realize_path,
    resample_polyline,
)

FIG1 = [(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]


def fig1_triangle(samples=16, fibers=64):
    return make_path_triangle(make_path(0, 1, FIG1, samples=samples), make_path(1, 2, FIG1, samples=samples),
                              make_path(2, 0, FIG1, samples=samples), fibers=fibers)


def barycentric_strict(tri, q, eps=EPS):
    (x1, y1), (x2, y2), (x3, y3) = tri
    det = (y2 - y3) * (x1 - x3) + (x3 - x2) * (y1 - y3)
    l1 = ((y2 - y3) * (q[0] - x3) + (x3 - x2) * (q[1] - y3)) / det
    l2 = ((y3 - y1) * (q[0] - x3) + (x1 - x3) * (q[1] - y3)) / det
    return min(l1, l2, 1.0 - l1 - l2) > eps


def test_two_sample_path():
    h = make_path(0, 1, [(0, 0), (1, 0)], samples=2)
    assert h.samples.tolist() == [[0.0, 0.0], [1.0, 0.0]]
    assert h.is_straight()


def test_three_sample_midpoint():
    h = make_path(0, 1, [(0, 0), (1, 0)], samples=3)
    assert h.samples[1].tolist() == [0.5, 0.0]


def test_waypoint_resampling_matches_dense_arclength_oracle():
    h = make_path(0, 1, [(0, 0), (2, 0)], waypoints=[(1, 1)], samples=5)
    dense = np.concatenate([np.linspace((0, 0), (1, 1), 10001), np.linspace((1, 1), (2, 0), 10001)[1:]])
    cum = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(dense, axis=0).T))])
    assert cum[-1] == pytest.approx(2 * math.sqrt(2))
    for s, target in zip(h.samples, np.arange(5) * math.sqrt(2) / 2):
        j = int(np.argmin(abs(cum - target)))
        assert np.allclose(s, dense[j], atol=1e-4)


def test_self_loop_rejected():
    with pytest.raises(GeometryError):
        make_path(0, 0, [(0, 0), (1, 0)])


def test_path_through_vertex_rejected():
    with pytest.raises(GeometryError, match="passes through"):
        make_path(0, 1, [(0, 0), (2, 0), (1, 0)], samples=5)


def test_samples_are_read_only():
    h = make_path(0, 1, [(0, 0), (1, 0)], samples=4)
    with pytest.raises(ValueError):
        h.samples[0, 0] = 5.0


def test_reversed_and_at():
    h = make_path(0, 1, [(0, 0), (2, 0)], waypoints=[(1, 1)], samples=9)
    r = h.reversed()
    assert (r.start, r.end) == (1, 0)
    assert np.array_equal(r.samples, h.samples[::-1])
    assert h.at(0.0) == (0.0, 0.0) and h.at(1.0) == (2.0, 0.0)
    assert h.at(0.5) == pytest.approx((1.0, 1.0))
    assert h.length == pytest.approx(2 * math.sqrt(2))


def test_realize_path_edges():
    e = realize_path(make_path(0, 1, [(0, 0), (1, 0)], samples=2))
    assert e.endpoints == (0, 1) and e.polyline.tolist() == [[0, 0], [1, 0]]
    e3 = realize_path(make_path(0, 1, [(0, 0), (1, 0)], samples=3))
    assert e3.interior.tolist() == [[0.5, 0.0]]
    curved = make_path(0, 1, [(0, 0), (2, 0)], waypoints=[(1, 1)], samples=5)
    assert np.array_equal(realize_path(curved).polyline, curved.samples)


def test_fig1_triangle_valid():
    t = fig1_triangle()
    assert t.vertices == (0, 1, 2)
    assert t.area() == pytest.approx(2.0)
    edges = boundary(t)
    assert [e.endpoints for e in edges] == [(0, 1), (1, 2), (0, 2)]


def test_endpoint_mismatch_rejected():
    h1 = make_path(0, 1, FIG1)
    h2 = make_path(2, 0, FIG1)
    with pytest.raises(GeometryError, match="cyclically"):
        make_path_triangle(h1, h2, make_path(0, 1, FIG1))


def test_collinear_triangle_rejected():
    pts = [(0, 0), (1, 0), (2, 0)]
    with pytest.raises(GeometryError):
        make_path_triangle(make_path(0, 1, pts, samples=2), make_path(1, 2, pts, samples=2),
                           make_path(2, 0, pts, samples=2))


def test_interior_examples():
    t = fig1_triangle()
    assert interior_contains(t, (1.0, 2.0 / 3.0))
    assert not interior_contains(t, (0.0, 0.0))
    assert interior_contains(t, (1.0, 1.0)) == barycentric_strict(FIG1, (1.0, 1.0)) is True
    assert not interior_contains(t, (1.0, 0.0))
    assert not interior_contains(t, (5.0, 5.0))


def test_interior_modes_agree_away_from_boundary():
    t = fig1_triangle(fibers=200)
    rng = np.random.default_rng(7)
    q = rng.uniform((-0.5, -0.5), (2.5, 2.5), size=(4000, 2))
    fiber = interior_mask(t, q)
    exact = interior_mask(t, q, mode="exact")
    oracle = np.array([barycentric_strict(FIG1, p) for p in q])
    assert np.array_equal(exact, oracle)
    spacing = 2.0 / 201
    d = np.array([min(abs((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) / math.dist(a, b)
                      for a, b in zip(FIG1, FIG1[1:] + FIG1[:1])) for p in q])
    far = d > 2 * spacing
    assert np.array_equal(fiber[far], oracle[far])


def test_fiber_family_acute_count_and_perpendicular():
    poly = np.array(FIG1)
    fam = fiber_family(poly, FIG1[2], FIG1[0], 9)
    assert len(fam) == 9
    for near, far in zip(fam.near, fam.far):
        assert abs(np.dot(far - near, fam.direction)) < 1e-12
        assert abs(near[1]) < 1e-12


def test_unknown_mode():
    with pytest.raises(ValueError):
        interior_mask(fig1_triangle(), [(1, 1)], mode="fuzzy")


def test_round_triangle_edges_chain():
    c, r = (0.0, 0.0), 1.0
    ang = np.radians([90.0, 210.0, 330.0])
    paths = []
    for i in range(3):
        a0, a1 = ang[i], ang[(i + 1) % 3]
        paths.append(SampledPath(i, (i + 1) % 3, arc_samples(c, r, a0, (a1 - a0) % (2 * math.pi), 9)))
    pts = [p.samples[0] for p in paths]
    fixed = []
    for i, h in enumerate(paths):
        s = h.samples.copy()
        s[-1] = pts[(i + 1) % 3]
        fixed.append(SampledPath(h.start, h.end, s))
    t = PathTriangle(tuple(fixed), ROUND)
    for e, h in zip(boundary(t), t.paths):
        assert set(e.endpoints) == {h.start, h.end}
        assert not h.is_straight()
    assert interior_contains(t, (0.0, 0.0))


def test_path_class_triangle_representatives():
    pts = [(-3.0, 0.0), (0.0, 3.8), (0.0, 1.0)]

    def cls(a, b):
        mid = np.add(pts[a], pts[b]) / 2
        reps = [make_path(a, b, pts, samples=8)]
        reps += [make_path(a, b, pts, [mid + (0.1 * k, -0.05 * k)], samples=8) for k in (1, 2, 3)]
        return PathClass(a, b, tuple(reps))

    pct = PathClassTriangle((cls(0, 1), cls(1, 2), cls(2, 0)))
    assert pct.vertices == (0, 1, 2)
    for i in range(4):
        assert pct.representative(i).vertices == (0, 1, 2)
    with pytest.raises(GeometryError):
        PathClass(0, 1, (make_path(1, 0, pts),))


def test_hull_and_area():
    pts = np.array([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)])
    h = convex_hull(pts)
    assert len(h) == 4 and polygon_area(h) == pytest.approx(1.0)


coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(coord, coord), min_size=2, max_size=6), st.integers(2, 40))
def test_resampling_properties(poly, samples):
    poly = np.array(poly)
    seg = np.hypot(*np.diff(poly, axis=0).T)
    if (seg < 1e-3).any():
        return
    out = resample_polyline(poly, samples)
    assert len(out) == samples
    assert np.array_equal(out[0], poly[0]) and np.array_equal(out[-1], poly[-1])
    steps = np.hypot(*np.diff(out, axis=0).T)
    assert steps.sum() <= seg.sum() + 1e-9


@given(coord, coord, coord, coord, coord, coord)
def test_centroid_is_interior(x1, y1, x2, y2, x3, y3):
    pts = [(x1, y1), (x2, y2), (x3, y3)]
    area = abs(polygon_area(np.array(pts)))
    sides = [math.dist(pts[i], pts[(i + 1) % 3]) for i in range(3)]
    if area < 1e-2 or 2 * area / max(sides) < 1e-2:
        return
    t = make_path_triangle(make_path(0, 1, pts, samples=2), make_path(1, 2, pts, samples=2),
                           make_path(2, 0, pts, samples=2), fibers=32)
    c = np.mean(pts, axis=0)
    assert interior_contains(t, c, mode="exact")
    assert not any(interior_contains(t, p) for p in pts)
