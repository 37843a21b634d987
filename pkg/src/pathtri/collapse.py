"""Discretized collapses onto path triangles, and elementary collapse sequences.

The cone ``D x I`` and the billiard ball ``K x I`` are modelled by their planar
silhouettes: a triangle (straight or round) swept by fibers perpendicular to
the base chord. The collapse parameter becomes the fiber station.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import CollapseStuckError, GeometryError
from .geometry import (
    EPS,
    ROUND,
    STRAIGHT,
    FiberFamily,
    PathTriangle,
    Point,
    SampledPath,
    arc_samples,
    as_point,
    fiber_family,
    make_path,
    min_altitude,
)
from .triangulation import Triangulation, edge_key

LATTICE = 160


class Fiber(NamedTuple):
    """Segment from ``start`` (non-base boundary) to ``end`` (base side) at ``station``."""

    start: Point
    end: Point
    station: float

    @property
    def length(self) -> float:
        return math.dist(self.start, self.end)


@dataclass(frozen=True)
class ConeSpec:
    """Planar silhouette of a cone: apex over the base chord ``b c``."""

    apex: Point
    b: Point
    c: Point

    def __post_init__(self):
        for name in ("apex", "b", "c"):
            object.__setattr__(self, name, as_point(getattr(self, name)))
        if min_altitude(self.b, self.apex, self.c) <= EPS:
            raise GeometryError("degenerate cone: apex and base are collinear")

    @property
    def base_length(self) -> float:
        return math.dist(self.b, self.c)


@dataclass(frozen=True)
class SphereSpec:
    """Great-circle slice of a billiard ball with three boundary vertices."""

    center: Point
    radius: float
    vertices: tuple[Point, Point, Point]

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "vertices", tuple(as_point(v) for v in self.vertices))
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise GeometryError("radius must be positive")
        if len(self.vertices) != 3:
            raise GeometryError("a round triangle has three vertices")
        for v in self.vertices:
            if abs(math.dist(v, self.center) - self.radius) > EPS:
                raise GeometryError(f"vertex {tuple(v)} is not on the circle")
        vs = self.vertices
        for i in range(3):
            p, q = vs[i], vs[(i + 1) % 3]
            if math.dist(p, q) <= EPS:
                raise GeometryError("duplicate round-triangle vertices")
            if math.dist(((p.x + q.x) / 2, (p.y + q.y) / 2), self.center) <= EPS:
                raise GeometryError("antipodal vertices make the arc ambiguous")

    @classmethod
    def from_angles(cls, center, radius: float, angles_deg) -> "SphereSpec":
        c = as_point(center)
        vs = tuple(Point(c.x + radius * math.cos(math.radians(a)), c.y + radius * math.sin(math.radians(a)))
                   for a in angles_deg)
        return cls(c, radius, vs)


@dataclass(frozen=True, eq=False)
class CollapseTrace:
    fibers: tuple[Fiber, ...]
    residual: PathTriangle
    hausdorff_bound: float
    base_length: float
    spacing: float

    def __len__(self):
        return len(self.fibers)

    def segments(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.array([f.start for f in self.fibers]).reshape(-1, 2),
                np.array([f.end for f in self.fibers]).reshape(-1, 2))


def fiber_distances(trace: CollapseTrace, points) -> np.ndarray:
    """Distance from each point to the union of the trace's fibers."""
    a, b = trace.segments()
    return kernels.min_distance_to_segments(np.asarray(points, dtype=np.float64), a, b)


def region_lattice(poly, n: int = LATTICE) -> np.ndarray:
    """Deterministic dense sample of a convex polygon: grid points inside plus the boundary."""
    poly = np.asarray(poly, dtype=np.float64)
    lo, hi = poly.min(axis=0), poly.max(axis=0)
    gx, gy = np.meshgrid(np.linspace(lo[0], hi[0], n), np.linspace(lo[1], hi[1], n))
    grid = np.column_stack([gx.ravel(), gy.ravel()])
    a, b = poly, np.roll(poly, -1, axis=0)
    d = b - a
    sign = 1.0 if np.sum(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]) >= 0 else -1.0
    side = sign * (d[None, :, 0] * (grid[:, None, 1] - a[None, :, 1])
                   - d[None, :, 1] * (grid[:, None, 0] - a[None, :, 0]))
    inside = grid[(side >= 0.0).all(axis=1)]
    t = np.linspace(0.0, 1.0, 8, endpoint=False)
    rim = (a[:, None, :] + t[None, :, None] * d[:, None, :]).reshape(-1, 2)
    return np.concatenate([inside, rim])


def _trace(residual: PathTriangle, family: FiberFamily) -> CollapseTrace:
    fibers = tuple(Fiber(as_point(f), as_point(n), float(s))
                   for f, n, s in zip(family.far, family.near, family.stations))
    partial = CollapseTrace(fibers, residual, math.inf, family.base_length, family.spacing)
    bound = float(fiber_distances(partial, region_lattice(residual.polygon)).max())
    return CollapseTrace(fibers, residual, bound, family.base_length, family.spacing)


def _cone_triangle(spec: ConeSpec, samples: int, m: int) -> PathTriangle:
    table = [spec.b, spec.apex, spec.c]  # v1 = b, v2 = apex, v3 = c
    h_l = make_path(0, 1, table, samples=samples)
    h_r = make_path(1, 2, table, samples=samples)
    h_b = make_path(0, 2, table, samples=samples)
    return PathTriangle((h_l, h_r, h_b.reversed()), STRAIGHT, m)


def collapse_cone(spec: ConeSpec, m: int) -> CollapseTrace:
    """Sweep the cone silhouette with ``m`` fibers perpendicular to ``b c``.

    Stations split the projection onto ``b c`` into ``m + 1`` equal gaps, so
    they are ``|bc| / (m + 1)`` apart when both base angles are acute.
    ``hausdorff_bound`` is the measured one-sided Hausdorff distance from a
    dense lattice of the triangle to the fiber union.
    """
    if m < 2:
        raise GeometryError("need at least 2 fibers")
    residual = _cone_triangle(spec, 2, m)
    family = fiber_family(residual.polygon, spec.b, spec.c, m)
    return _trace(residual, family)


def collapse_cone_to_path_triangle(spec: ConeSpec, m: int, samples: int) -> tuple[CollapseTrace, PathTriangle]:
    """Cone collapse plus the path triangle ``h_l: v1->v2, h_r: v2->v3, h_b`` (reversed to ``v3->v1``)."""
    if samples < 2:
        raise GeometryError("need at least 2 samples per path")
    trace = collapse_cone(spec, m)
    return trace, _cone_triangle(spec, samples, m)


def _arc_path(i: int, j: int, k: int, spec: SphereSpec, samples: int) -> SampledPath:
    c = spec.center
    theta = [math.atan2(v.y - c.y, v.x - c.x) for v in spec.vertices]
    tau = 2.0 * math.pi
    ccw = (theta[j] - theta[i]) % tau
    # go the way that avoids the third vertex
    sweep = ccw - tau if (theta[k] - theta[i]) % tau < ccw else ccw
    pts = arc_samples(c, spec.radius, theta[i], sweep, samples)
    pts[0], pts[-1] = spec.vertices[i], spec.vertices[j]
    return SampledPath(i, j, pts)


def collapse_sphere(spec: SphereSpec, m: int, samples: int) -> tuple[CollapseTrace, PathTriangle]:
    """Collapse onto the round path triangle whose edges are circular arcs.

    Each arc joins consecutive vertices without passing the third one (the
    minor arc whenever the center lies inside the vertex triangle). Fibers are
    perpendicular to the chord of the base arc ``v3 -> v1``.
    """
    if m < 2:
        raise GeometryError("need at least 2 fibers")
    if samples < 3:
        raise GeometryError("round edges need at least 3 samples")
    paths = (_arc_path(0, 1, 2, spec, samples), _arc_path(1, 2, 0, spec, samples), _arc_path(2, 0, 1, spec, samples))
    tri = PathTriangle(paths, ROUND, m)
    family = tri.fiber_family(m)
    return _trace(tri, family), tri


# --- elementary collapses --------------------------------------------------------

@dataclass(frozen=True)
class ElementaryStep:
    """Removal of a free pair: ``face`` with its free ``edge``, or ``edge`` with a leaf ``vertex``."""

    stage: int
    kind: str
    removed: tuple[int, ...]
    free: tuple[int, ...]


@dataclass(frozen=True)
class CollapseSequence:
    steps: tuple[ElementaryStep, ...]
    terminal: int

    def __len__(self):
        return len(self.steps)


class ComplexState(NamedTuple):
    vertices: frozenset
    edges: frozenset
    faces: frozenset

    @property
    def cells(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.faces)


def _face_edges(f):
    a, b, c = f
    return (edge_key(a, b), edge_key(b, c), edge_key(c, a))


def elementary_collapse_sequence(t: Triangulation) -> CollapseSequence:
    """Greedy collapse to a single vertex.

    Faces go first, each with its smallest free edge (an edge of exactly one
    remaining face). The leftover tree is then pruned leaf by leaf, smallest
    edge first, never removing the smallest remaining vertex, which becomes
    the terminal vertex. Raises ``CollapseStuckError`` when no free pair is
    left while cells of dimension > 0 remain.
    """
    faces = set(t.faces)
    edges = set(t.edges)
    vertices = set(t.vertex_ids)
    owners: dict[tuple[int, int], set] = defaultdict(set)
    for f in faces:
        for e in _face_edges(f):
            owners[e].add(f)
    steps: list[ElementaryStep] = []

    heap = [e for e in edges if len(owners[e]) == 1]
    heapq.heapify(heap)
    while faces:
        while heap and len(owners[heap[0]]) != 1:
            heapq.heappop(heap)
        if not heap:
            raise CollapseStuckError(f"no free edge with {len(faces)} triangles left", steps)
        e = heapq.heappop(heap)
        (f,) = owners[e]
        faces.discard(f)
        edges.discard(e)
        for g in _face_edges(f):
            owners[g].discard(f)
            if g != e and len(owners[g]) == 1:
                heapq.heappush(heap, g)
        del owners[e]
        steps.append(ElementaryStep(len(steps), "face", f, e))

    nbrs: dict[int, set] = defaultdict(set)
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    while len(vertices) > 1:
        keep = min(vertices)
        best = None
        for v in vertices:
            if v != keep and len(nbrs[v]) == 1:
                e = edge_key(v, next(iter(nbrs[v])))
                if best is None or e < best[0]:
                    best = (e, v)
        if best is None:
            raise CollapseStuckError(f"no leaf to prune with {len(vertices)} vertices left", steps)
        e, v = best
        (w,) = nbrs.pop(v)
        nbrs[w].discard(v)
        edges.discard(e)
        vertices.discard(v)
        steps.append(ElementaryStep(len(steps), "edge", e, (v,)))
    return CollapseSequence(tuple(steps), min(vertices))


def replay_collapse(t: Triangulation, seq: CollapseSequence) -> list[ComplexState]:
    """Rebuild ``K_0, K_1, ...`` from a trace, checking each step was a free pair."""
    state = ComplexState(frozenset(t.vertex_ids), frozenset(t.edges), frozenset(t.faces))
    states = [state]
    for step in seq.steps:
        V, E, F = set(state.vertices), set(state.edges), set(state.faces)
        if step.kind == "face":
            f, e = tuple(step.removed), tuple(step.free)
            if f not in F or e not in E:
                raise CollapseStuckError(f"step {step.stage}: cells already gone")
            if sum(1 for g in F if e in _face_edges(g)) != 1 or e not in _face_edges(f):
                raise CollapseStuckError(f"step {step.stage}: edge {e} is not free in face {f}")
            F.discard(f)
            E.discard(e)
        elif step.kind == "edge":
            e, (v,) = tuple(step.removed), tuple(step.free)
            if e not in E or v not in V or v not in e:
                raise CollapseStuckError(f"step {step.stage}: cells already gone")
            if any(v in g for g in F) or sum(1 for g in E if v in g) != 1:
                raise CollapseStuckError(f"step {step.stage}: vertex {v} is not a leaf")
            E.discard(e)
            V.discard(v)
        else:
            raise ValueError(f"unknown step kind {step.kind!r}")
        state = ComplexState(frozenset(V), frozenset(E), frozenset(F))
        states.append(state)
    return states
