"""Plane geometry substrate: sampled paths, edges, path triangles, path classes.

A path ``h: [0, 1] -> R^2`` is stored as a polyline of ``S`` samples taken at
uniform arc-length spacing, so sample ``j`` sits at parameter ``j / (S - 1)``.
All objects are immutable once built; sample arrays are read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import GeometryError

EPS = 1e-9
DEFAULT_SAMPLES = 16
DEFAULT_FIBERS = 64

STRAIGHT = "straight"
ROUND = "round"
KINDS = (STRAIGHT, ROUND)


class Point(NamedTuple):
    x: float
    y: float


def as_point(p) -> Point:
    x, y = (float(c) for c in p)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate {p!r}")
    return Point(x, y)


def as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GeometryError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise GeometryError("points must be finite")
    return arr


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.float64)
    out.setflags(write=False)
    return out


def orient2d(a, b, c) -> float:
    """Twice the signed area of ``abc``; positive when counter-clockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def min_altitude(a, b, c) -> float:
    """Smallest altitude of triangle ``abc``; zero for collinear points."""
    longest = max(math.dist(a, b), math.dist(b, c), math.dist(c, a))
    if longest == 0.0:
        return 0.0
    return abs(orient2d(a, b, c)) / longest


def polygon_area(poly) -> float:
    p = np.asarray(poly, dtype=np.float64)
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def convex_hull(points) -> np.ndarray:
    """Counter-clockwise hull vertices (monotone chain, collinear points dropped)."""
    pts = sorted(map(tuple, np.asarray(points, dtype=np.float64)))
    if len(pts) <= 2:
        return np.array(pts)

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and orient2d(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return np.array(lower[:-1] + upper[:-1])


def resample_polyline(poly, samples: int) -> np.ndarray:
    """Resample a polyline to ``samples`` points evenly spaced in arc length."""
    poly = np.asarray(poly, dtype=np.float64)
    seg = np.hypot(*np.diff(poly, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, cum[-1], samples)
    out = np.column_stack([np.interp(targets, cum, poly[:, 0]), np.interp(targets, cum, poly[:, 1])])
    out[0], out[-1] = poly[0], poly[-1]
    return out


@dataclass(frozen=True, eq=False)
class SampledPath:
    """Discretized path from vertex ``start`` to vertex ``end``.

    Parameters
    ----------
    start, end : int
        Vertex ids of ``h(0)`` and ``h(1)``; must differ.
    samples : array_like, shape (S, 2)
        Polyline samples, ``S >= 2``, no two consecutive samples equal.
    """

    start: int
    end: int
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = _frozen(self.samples)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "start", int(self.start))
        object.__setattr__(self, "end", int(self.end))
        if self.start == self.end:
            raise GeometryError(f"path from vertex {self.start} to itself (self-loop)")
        if s.ndim != 2 or s.shape[1] != 2 or len(s) < 2:
            raise GeometryError("a path needs at least two 2-d samples")
        if not np.isfinite(s).all():
            raise GeometryError("path samples must be finite")
        if (np.hypot(*np.diff(s, axis=0).T) == 0.0).any():
            raise GeometryError("consecutive path samples coincide")

    @property
    def n_samples(self) -> int:
        return len(self.samples)

    @property
    def start_point(self) -> Point:
        return Point(*self.samples[0])

    @property
    def end_point(self) -> Point:
        return Point(*self.samples[-1])

    @property
    def interior(self) -> np.ndarray:
        return self.samples[1:-1]

    @property
    def length(self) -> float:
        return float(np.hypot(*np.diff(self.samples, axis=0).T).sum())

    def at(self, t: float) -> Point:
        """Evaluate ``h(t)`` by linear interpolation between samples."""
        if not 0.0 <= t <= 1.0:
            raise ValueError("t must lie in [0, 1]")
        grid = np.linspace(0.0, 1.0, self.n_samples)
        return Point(float(np.interp(t, grid, self.samples[:, 0])), float(np.interp(t, grid, self.samples[:, 1])))

    def reversed(self) -> "SampledPath":
        return SampledPath(self.end, self.start, self.samples[::-1])

    def is_straight(self, eps: float = EPS) -> bool:
        a, b = self.samples[0], self.samples[-1]
        d = b - a
        dist = np.abs(d[0] * (self.samples[:, 1] - a[1]) - d[1] * (self.samples[:, 0] - a[0]))
        return bool((dist / np.hypot(*d) <= eps).all())


def make_path(a: int, b: int, vertices, waypoints: Sequence = (), samples: int = DEFAULT_SAMPLES,
              *, check_vertices: bool = True) -> SampledPath:
    """Build the path ``a -> b`` through ``waypoints``, resampled to ``samples`` points.

    ``vertices`` is the ambient vertex table (indexable by vertex id). With
    ``check_vertices`` the interior samples may not land on any vertex.
    """
    if a == b:
        raise GeometryError(f"path from vertex {a} to itself (self-loop)")
    if samples < 2:
        raise GeometryError("a path needs at least two samples")
    pa, pb = as_point(vertices[a]), as_point(vertices[b])
    poly = np.array([pa, *(as_point(w) for w in waypoints), pb], dtype=np.float64)
    if (np.hypot(*np.diff(poly, axis=0).T) <= EPS).any():
        raise GeometryError("coincident consecutive waypoints")
    path = SampledPath(a, b, resample_polyline(poly, samples))
    if check_vertices and samples > 2:
        table = as_points([vertices[i] for i in range(len(vertices))])
        near = kernels.min_distance_to_segments(path.interior, table, table)
        if (near <= EPS).any():
            raise GeometryError(f"path {a}->{b} passes through a vertex of the complex")
    return path


@dataclass(frozen=True, eq=False)
class Edge:
    """Geometric realization of a path: a 1-cell with endpoints and polyline."""

    endpoints: tuple[int, int]
    polyline: np.ndarray

    @property
    def interior(self) -> np.ndarray:
        return self.polyline[1:-1]

    def __contains__(self, v) -> bool:
        return v in self.endpoints


def realize_path(p: SampledPath) -> Edge:
    u, v = sorted((p.start, p.end))
    return Edge((u, v), p.samples)


@dataclass(frozen=True, eq=False)
class FiberFamily:
    """Segments perpendicular to a base chord that sweep a convex region.

    The ``m`` stations split the region's projection onto the base direction
    into ``m + 1`` equal gaps; for an acute base the projection is the base
    itself and the spacing is ``base_length / (m + 1)``. Fiber ``i`` runs
    from ``far[i]`` (on the non-base boundary) to ``near[i]`` (on the base
    when the station is within the base span).
    """

    origin: np.ndarray
    direction: np.ndarray
    normal: np.ndarray
    base_length: float
    spacing: float
    stations: np.ndarray
    near: np.ndarray
    far: np.ndarray

    def __len__(self):
        return len(self.stations)


def _local(poly, origin, direction, normal):
    rel = np.asarray(poly, dtype=np.float64) - origin
    return rel @ direction, rel @ normal


def _cross_sections(U, W, u):
    """Lowest and highest ``w`` where the line ``U = u`` meets the polygon."""
    u0, u1 = U, np.roll(U, -1)
    w0, w1 = W, np.roll(W, -1)
    uq = np.asarray(u, dtype=np.float64)[:, None]
    lo_u, hi_u = np.minimum(u0, u1), np.maximum(u0, u1)
    hit = (uq >= lo_u) & (uq <= hi_u)
    du = u1 - u0
    flat = du == 0.0
    t = np.where(flat, 0.0, (uq - u0) / np.where(flat, 1.0, du))
    w = w0 + t * (w1 - w0)
    lo = np.where(hit, np.where(flat, np.minimum(w0, w1), w), np.inf).min(axis=1)
    hi = np.where(hit, np.where(flat, np.maximum(w0, w1), w), -np.inf).max(axis=1)
    return lo, hi


def _stations(U, m):
    umin, umax = float(U.min()), float(U.max())
    spacing = (umax - umin) / (m + 1)
    return umin, spacing


class _Frame(NamedTuple):
    origin: np.ndarray
    direction: np.ndarray
    normal: np.ndarray
    base_length: float
    U: np.ndarray
    W: np.ndarray


def _frame(poly, base_start, base_end) -> _Frame:
    origin = np.asarray(base_start, dtype=np.float64)
    d = np.asarray(base_end, dtype=np.float64) - origin
    L = float(np.hypot(*d))
    if L <= EPS:
        raise GeometryError("base chord has zero length")
    d = d / L
    n = np.array([-d[1], d[0]])
    U, W = _local(poly, origin, d, n)
    if W.mean() < 0.0:
        n = -n
        W = -W
    return _Frame(origin, d, n, L, U, W)


def fiber_family(poly, base_start, base_end, m: int) -> FiberFamily:
    """Fibers perpendicular to ``base_start -> base_end`` clipped to convex ``poly``."""
    if m < 1:
        raise GeometryError("fiber count must be positive")
    fr = _frame(poly, base_start, base_end)
    umin, spacing = _stations(fr.U, m)
    stations = umin + np.arange(1, m + 1, dtype=np.float64) * spacing
    lo, hi = _cross_sections(fr.U, fr.W, stations)
    base_pts = fr.origin + stations[:, None] * fr.direction
    return FiberFamily(
        origin=fr.origin, direction=fr.direction, normal=fr.normal,
        base_length=fr.base_length, spacing=spacing, stations=_frozen(stations),
        near=_frozen(base_pts + lo[:, None] * fr.normal),
        far=_frozen(base_pts + hi[:, None] * fr.normal),
    )


@dataclass(frozen=True, eq=False)
class PathTriangle:
    """Three cyclically matched paths ``h1: v1->v2, h2: v2->v3, h3: v3->v1``.

    The base is ``h3``; interior membership in fiber mode is decided by
    ``fibers`` segments perpendicular to its chord.
    """

    paths: tuple[SampledPath, SampledPath, SampledPath]
    kind: str = STRAIGHT
    fibers: int = DEFAULT_FIBERS

    def __post_init__(self):
        paths = tuple(self.paths)
        object.__setattr__(self, "paths", paths)
        if len(paths) != 3:
            raise GeometryError("a path triangle has exactly three paths")
        if self.kind not in KINDS:
            raise GeometryError(f"unknown triangle kind {self.kind!r}")
        if self.fibers < 1:
            raise GeometryError("fiber count must be positive")
        h1, h2, h3 = paths
        if not (h1.end == h2.start and h2.end == h3.start and h3.end == h1.start):
            raise GeometryError("path endpoints do not match cyclically")
        for p, q in ((h1, h2), (h2, h3), (h3, h1)):
            if not np.array_equal(p.samples[-1], q.samples[0]):
                raise GeometryError(f"paths meet at vertex {p.end} with different coordinates")
        if len(set(self.vertices)) != 3:
            raise GeometryError("path triangle vertices must be distinct")
        pts = self.points
        if min(math.dist(pts[0], pts[1]), math.dist(pts[1], pts[2]), math.dist(pts[2], pts[0])) <= EPS:
            raise GeometryError("path triangle vertices coincide")
        if self.kind == STRAIGHT and min_altitude(*pts) <= EPS:
            raise GeometryError("degenerate (collinear) straight triangle")

    @property
    def vertices(self) -> tuple[int, int, int]:
        return tuple(h.start for h in self.paths)

    @property
    def points(self) -> np.ndarray:
        return np.array([h.samples[0] for h in self.paths])

    @property
    def base(self) -> SampledPath:
        return self.paths[2]

    @cached_property
    def polygon(self) -> np.ndarray:
        """Closed boundary polyline without the repeated closing point."""
        return _frozen(np.concatenate([h.samples[:-1] for h in self.paths]))

    @cached_property
    def _frame(self) -> _Frame:
        return _frame(self.polygon, self.base.samples[0], self.base.samples[-1])

    def fiber_family(self, m: int | None = None) -> FiberFamily:
        return fiber_family(self.polygon, self.base.samples[0], self.base.samples[-1], m or self.fibers)

    def area(self) -> float:
        return abs(polygon_area(self.polygon))


def make_path_triangle(h1: SampledPath, h2: SampledPath, h3: SampledPath,
                       kind: str = STRAIGHT, fibers: int = DEFAULT_FIBERS) -> PathTriangle:
    return PathTriangle((h1, h2, h3), kind, fibers)


def boundary(t: PathTriangle) -> tuple[Edge, Edge, Edge]:
    return tuple(realize_path(h) for h in t.paths)


def _strictly_inside_convex(poly, pts, eps):
    poly = np.asarray(poly, dtype=np.float64)
    if polygon_area(poly) < 0.0:
        poly = poly[::-1]
    a, b = poly, np.roll(poly, -1, axis=0)
    d = b - a
    ll = np.hypot(d[:, 0], d[:, 1])
    keep = ll > 0.0
    a, d, ll = a[keep], d[keep], ll[keep]
    side = (d[None, :, 0] * (pts[:, None, 1] - a[None, :, 1])
            - d[None, :, 1] * (pts[:, None, 0] - a[None, :, 0])) / ll
    return (side > eps).all(axis=1)


def interior_mask(t: PathTriangle, points, mode: str = "fiber", m: int | None = None, eps: float = EPS) -> np.ndarray:
    """Vectorized ``interior_contains`` over an ``(N, 2)`` array."""
    pts = as_points(np.atleast_2d(points))
    if mode == "exact":
        corners = t.points if t.kind == STRAIGHT else t.polygon
        return _strictly_inside_convex(corners, pts, eps)
    if mode != "fiber":
        raise ValueError(f"unknown mode {mode!r}")
    m = m or t.fibers
    fr = t._frame
    umin, spacing = _stations(fr.U, m)
    u, w = _local(pts, fr.origin, fr.direction, fr.normal)
    inside_span = (u > fr.U.min()) & (u < fr.U.max())
    k = np.clip(np.rint((u - umin) / spacing), 1, m)
    lo, hi = _cross_sections(fr.U, fr.W, umin + k * spacing)
    out = inside_span & (w > lo + eps) & (w < hi - eps)
    if out.any():
        poly = t.polygon
        seg_a, seg_b = poly, np.roll(poly, -1, axis=0)
        idx = np.flatnonzero(out)
        clear = kernels.min_distance_to_segments(pts[idx], seg_a, seg_b) > eps
        out[idx] = clear
    return out


def interior_contains(t: PathTriangle, q, mode: str = "fiber", m: int | None = None) -> bool:
    """True iff ``q`` lies in the interior of ``t`` (boundary excluded).

    ``mode="fiber"`` snaps ``q`` to the nearest of the perpendicular fibers
    and tests the fiber's open span; it agrees with ``mode="exact"`` for all
    points farther than one fiber spacing from the boundary.
    """
    return bool(interior_mask(t, [as_point(q)], mode=mode, m=m)[0])


def arc_samples(center, radius: float, theta0: float, sweep: float, samples: int) -> np.ndarray:
    """Points on a circle from angle ``theta0`` through signed ``sweep`` radians."""
    th = theta0 + np.linspace(0.0, sweep, samples)
    c = np.asarray(center, dtype=np.float64)
    return np.column_stack([c[0] + radius * np.cos(th), c[1] + radius * np.sin(th)])


@dataclass(frozen=True, eq=False)
class PathClass:
    """Paths sharing the same initial and final vertex."""

    start: int
    end: int
    representatives: tuple[SampledPath, ...]

    def __post_init__(self):
        reps = tuple(self.representatives)
        object.__setattr__(self, "representatives", reps)
        if not reps:
            raise GeometryError("a path class needs at least one representative")
        for h in reps:
            if (h.start, h.end) != (self.start, self.end):
                raise GeometryError(
                    f"representative {h.start}->{h.end} does not match class {self.start}->{self.end}")

    def __len__(self):
        return len(self.representatives)

    def __getitem__(self, i) -> SampledPath:
        return self.representatives[i]

    def reversed(self) -> "PathClass":
        return PathClass(self.end, self.start, tuple(h.reversed() for h in self.representatives))


@dataclass(frozen=True, eq=False)
class PathClassTriangle:
    classes: tuple[PathClass, PathClass, PathClass]

    def __post_init__(self):
        cls = tuple(self.classes)
        object.__setattr__(self, "classes", cls)
        if len(cls) != 3:
            raise GeometryError("a path-class triangle has exactly three classes")
        c1, c2, c3 = cls
        if not (c1.end == c2.start and c2.end == c3.start and c3.end == c1.start):
            raise GeometryError("path classes do not match cyclically")
        if len({c1.start, c2.start, c3.start}) != 3:
            raise GeometryError("path-class triangle vertices must be distinct")

    @property
    def vertices(self) -> tuple[int, int, int]:
        return tuple(c.start for c in self.classes)

    def representative(self, i: int = 0, kind: str = STRAIGHT, fibers: int = DEFAULT_FIBERS) -> PathTriangle:
        return PathTriangle(tuple(c[i] for c in self.classes), kind, fibers)
