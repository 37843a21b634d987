"""Path triangulation of planar point sets.

The scaffold is an incremental Bowyer-Watson Delaunay triangulation. The hull
is handled with a single vertex at infinity (``GHOST``) rather than a
finite super-triangle, which keeps nearly collinear hull points from
producing missing hull triangles. Cocircular ties are resolved afterwards by
flipping every cocircular quad to the diagonal incident to its
lexicographically smallest vertex.

Every 1-cell of the result is carried by a straight ``SampledPath``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import GeometryError, TriangulationError, UnknownVertexError
from .geometry import (
    DEFAULT_FIBERS,
    DEFAULT_SAMPLES,
    EPS,
    STRAIGHT,
    PathClass,
    PathClassTriangle,
    PathTriangle,
    SampledPath,
    as_points,
    convex_hull,
    make_path,
    min_altitude,
    orient2d,
    polygon_area,
)

GHOST = -1
DEFAULT_SEED = 42


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _canonical_face(face, pts) -> tuple[int, int, int]:
    a, b, c = face
    if orient2d(pts[a], pts[b], pts[c]) < 0.0:
        b, c = c, b
    r = min(range(3), key=lambda i: (a, b, c)[i])
    f = (a, b, c)
    return f[r:] + f[:r]


# --- point-set checks -------------------------------------------------------

def check_point_set(points, eps: float = EPS) -> np.ndarray:
    """Validate a point set for triangulation; returns it as an array."""
    try:
        pts = as_points(points)
    except GeometryError as exc:
        raise TriangulationError(str(exc)) from None
    n = len(pts)
    if n < 3:
        raise TriangulationError("need at least 3 points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    xs = pts[order, 0]
    for pos, i in enumerate(order):
        j = pos + 1
        while j < n and xs[j] - xs[pos] <= eps:
            if math.dist(pts[i], pts[order[j]]) <= eps:
                a, b = sorted((int(i), int(order[j])))
                raise TriangulationError(f"duplicate points {a} and {b}")
            j += 1
    far = int(np.argmax(np.hypot(*(pts - pts[0]).T)))
    d = pts[far] - pts[0]
    dist = np.abs(d[0] * (pts[:, 1] - pts[0, 1]) - d[1] * (pts[:, 0] - pts[0, 0])) / np.hypot(*d)
    if (dist <= eps).all():
        raise TriangulationError("all points are collinear")
    return pts


# --- Bowyer-Watson ------------------------------------------------------------

class _Mesh:
    """Mutable triangle soup with directed-edge adjacency, used during insertion."""

    def __init__(self, pts, eps):
        self.pts = pts
        self.eps = eps
        self.tris: dict[int, tuple[int, int, int]] = {}
        self.owner: dict[tuple[int, int], int] = {}
        self.circles: dict[int, tuple[float, float, float]] = {}
        self._next = 0

    def add(self, tri):
        a, b, c = tri
        if a == GHOST:
            tri = (b, c, a)
        elif b == GHOST:
            tri = (c, a, b)
        tid = self._next
        self._next += 1
        self.tris[tid] = tri
        for e in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            self.owner[e] = tid
        if GHOST not in tri:
            self.circles[tid] = _circumcircle(*(self.pts[v] for v in tri))
        return tid

    def remove(self, tid):
        tri = self.tris.pop(tid)
        for e in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            if self.owner.get(e) == tid:
                del self.owner[e]
        self.circles.pop(tid, None)

    def neighbours(self, tid):
        a, b, c = self.tris[tid]
        for e in ((b, a), (c, b), (a, c)):
            nb = self.owner.get(e)
            if nb is not None:
                yield nb

    def conflicts(self, tid, p) -> bool:
        a, b, c = self.tris[tid]
        if c == GHOST:
            pa, pb = self.pts[a], self.pts[b]
            d = pb - pa
            ll = math.hypot(*d)
            side = orient2d(pa, pb, p) / ll
            if side > self.eps:
                return True
            if side < -self.eps:
                return False
            t = float(np.dot(p - pa, d)) / (ll * ll)
            return self.eps / ll < t < 1.0 - self.eps / ll
        cx, cy, r = self.circles[tid]
        return math.hypot(p[0] - cx, p[1] - cy) < r - self.eps

    def locate(self, p) -> int:
        best, best_side = None, -math.inf
        for tid, (a, b, c) in self.tris.items():
            if c == GHOST:
                pa, pb = self.pts[a], self.pts[b]
                side = orient2d(pa, pb, p) / math.dist(pa, pb)
                if side > best_side:
                    best, best_side = tid, side
                continue
            pa, pb, pc = self.pts[a], self.pts[b], self.pts[c]
            if (orient2d(pa, pb, p) / math.dist(pa, pb) >= -self.eps
                    and orient2d(pb, pc, p) / math.dist(pb, pc) >= -self.eps
                    and orient2d(pc, pa, p) / math.dist(pc, pa) >= -self.eps):
                return tid
        if best is None or best_side < -self.eps:
            raise TriangulationError("point location failed")
        return best

    def insert(self, v):
        p = self.pts[v]
        seed = self.locate(p)
        cavity = {seed}
        stack = [seed]
        while stack:
            tid = stack.pop()
            for nb in self.neighbours(tid):
                if nb not in cavity and self.conflicts(nb, p):
                    cavity.add(nb)
                    stack.append(nb)
        rim = []
        for tid in cavity:
            a, b, c = self.tris[tid]
            for e in ((a, b), (b, c), (c, a)):
                if self.owner.get((e[1], e[0])) not in cavity:
                    rim.append(e)
        for tid in cavity:
            self.remove(tid)
        for a, b in rim:
            self.add((a, b, v))


def _circumcircle(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return ux, uy, math.hypot(ax - ux, ay - uy)


def _break_cocircular_ties(pts, faces, eps):
    """Flip cocircular quads to the diagonal at their lexicographically smallest vertex.

    Each flip replaces an edge by one whose lowest-ranked endpoint ranks
    strictly lower, so the loop terminates.
    """
    faces = {i: f for i, f in enumerate(faces)}
    owner = {}
    for fid, (a, b, c) in faces.items():
        for e in ((a, b), (b, c), (c, a)):
            owner[e] = fid
    next_id = len(faces)
    changed = True
    while changed:
        changed = False
        for (a, b), fid in sorted(owner.items()):
            if a > b or fid not in faces:
                continue
            other = owner.get((b, a))
            if other is None:
                continue
            c = next(v for v in faces[fid] if v not in (a, b))
            d = next(v for v in faces[other] if v not in (a, b))
            cx, cy, r = _circumcircle(pts[a], pts[b], pts[c])
            if abs(math.hypot(pts[d][0] - cx, pts[d][1] - cy) - r) > eps:
                continue
            low = min((a, b, c, d), key=lambda i: (pts[i][0], pts[i][1]))
            if low in (a, b):
                continue
            if orient2d(pts[c], pts[a], pts[d]) <= 0.0 or orient2d(pts[d], pts[b], pts[c]) <= 0.0:
                continue
            # quad a, d, b, c (ccw); replace diagonal ab with cd
            for e in ((a, b), (b, c), (c, a), (b, a), (a, d), (d, b)):
                owner.pop(e, None)
            del faces[fid], faces[other]
            for tri in ((c, a, d), (d, b, c)):
                faces[next_id] = tri
                for e in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                    owner[e] = next_id
                next_id += 1
            changed = True
            break
    return list(faces.values())


def delaunay_faces(points, eps: float = EPS) -> list[tuple[int, int, int]]:
    """Counter-clockwise Delaunay faces of a validated point set, canonically ordered."""
    pts = check_point_set(points, eps)
    n = len(pts)
    # widest initial triangle: farthest point from 0, then farthest from that line
    b = int(np.argmax(np.hypot(*(pts - pts[0]).T)))
    d = pts[b] - pts[0]
    c = int(np.argmax(np.abs(d[0] * (pts[:, 1] - pts[0, 1]) - d[1] * (pts[:, 0] - pts[0, 0]))))
    a = 0
    mesh = _Mesh(pts, eps)
    first = {a, b, c}
    if orient2d(pts[a], pts[b], pts[c]) < 0.0:
        b, c = c, b
    mesh.add((a, b, c))
    mesh.add((b, a, GHOST))
    mesh.add((c, b, GHOST))
    mesh.add((a, c, GHOST))
    for v in range(n):
        if v not in first:
            mesh.insert(v)
    faces = [t for t in mesh.tris.values() if GHOST not in t]
    for f in faces:
        if orient2d(*(pts[v] for v in f)) <= 0.0:
            raise TriangulationError("inverted triangle produced; input too degenerate")
    faces = _break_cocircular_ties(pts, faces, eps)
    return sorted(_canonical_face(f, pts) for f in faces)


# --- complexes ------------------------------------------------------------------

class Triangulation:
    """A planar 2-complex whose 1-cells are sampled paths.

    Parameters
    ----------
    points : array_like, shape (n, 2)
        Vertex table; vertex ids are row indices.
    faces : iterable of (int, int, int)
        Triangles; stored counter-clockwise, rotated to start at the
        smallest id, sorted.
    edges : mapping, optional
        ``(u, v) -> SampledPath`` with ``u < v`` and the path running
        ``u -> v``. Defaults to straight paths for every face edge.
    vertex_ids : iterable of int, optional
        Subset of rows that belong to this complex (used for
        subcomplexes). Defaults to all rows.
    samples, fibers : int
        Sample count of default straight paths and fiber count of the
        path triangles.
    validate : bool
        Check all invariants, raising ``TriangulationError``.
    """

    def __init__(self, points, faces: Iterable, edges: Mapping | None = None, *,
                 vertex_ids: Iterable[int] | None = None, samples: int = DEFAULT_SAMPLES,
                 fibers: int = DEFAULT_FIBERS, validate: bool = True):
        pts = as_points(points).copy()
        pts.setflags(write=False)
        self.points = pts
        self.samples = int(samples)
        self.fibers = int(fibers)
        self.vertex_ids = tuple(sorted(range(len(pts)) if vertex_ids is None else set(vertex_ids)))
        self._vset = frozenset(self.vertex_ids)
        for f in faces:
            if len(set(f)) != 3:
                raise TriangulationError(f"face {tuple(f)} repeats a vertex")
            for v in f:
                if v not in self._vset:
                    raise TriangulationError(f"face {tuple(f)} references unknown vertex {v}")
        self.faces = tuple(sorted(_canonical_face(tuple(int(v) for v in f), pts) for f in faces))
        if edges is None:
            keys = sorted({edge_key(*e) for f in self.faces for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0]))})
            edges = {k: make_path(k[0], k[1], pts, samples=self.samples, check_vertices=False) for k in keys}
        self.edges = MappingProxyType(dict(sorted(edges.items())))
        self._adj: dict[int, list[int]] = defaultdict(list)
        self._star: dict[int, list[int]] = defaultdict(list)
        for u, v in self.edges:
            self._adj[u].append(v)
            self._adj[v].append(u)
        for i, f in enumerate(self.faces):
            for v in f:
                self._star[v].append(i)
        for v in self._adj:
            self._adj[v].sort()
        self._triangles: dict[int, PathTriangle] = {}
        if validate:
            self.validate()

    # queries -------------------------------------------------------------

    def __repr__(self):
        return (f"Triangulation(vertices={len(self.vertex_ids)}, edges={len(self.edges)}, "
                f"triangles={len(self.faces)})")

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    def __contains__(self, v) -> bool:
        return v in self._vset

    def require(self, v) -> int:
        if v not in self._vset:
            raise UnknownVertexError(f"unknown vertex {v}")
        return int(v)

    def coords(self, v) -> np.ndarray:
        return self.points[self.require(v)]

    def neighbors(self, v) -> list[int]:
        return list(self._adj.get(self.require(v), ()))

    def incident_faces(self, v) -> list[int]:
        return list(self._star.get(self.require(v), ()))

    def incident_edges(self, v) -> list[tuple[int, int]]:
        return [edge_key(v, w) for w in self.neighbors(v)]

    def path(self, u, v) -> SampledPath:
        """The path carrying edge ``{u, v}``, oriented ``u -> v``."""
        h = self.edges.get(edge_key(u, v))
        if h is None:
            raise TriangulationError(f"no edge between {u} and {v}")
        return h if h.start == u else h.reversed()

    def triangle(self, i: int) -> PathTriangle:
        t = self._triangles.get(i)
        if t is None:
            a, b, c = self.faces[i]
            paths = (self.path(a, b), self.path(b, c), self.path(c, a))
            t = self._triangles[i] = PathTriangle(paths, STRAIGHT, self.fibers)
        return t

    @property
    def triangles(self) -> tuple[PathTriangle, ...]:
        return tuple(self.triangle(i) for i in range(len(self.faces)))

    def face_points(self) -> np.ndarray:
        return self.points[np.array(self.faces, dtype=np.int64).reshape(-1, 3)]

    def area(self) -> float:
        return float(sum(abs(polygon_area(self.points[list(f)])) for f in self.faces))

    def hull(self) -> np.ndarray:
        return convex_hull(self.points[list(self.vertex_ids)])

    def star(self, v) -> "Triangulation":
        """Closed star of ``v``: the subcomplex of all triangles incident to it."""
        fids = self.incident_faces(v)
        faces = [self.faces[i] for i in fids]
        verts = {w for f in faces for w in f} or {self.require(v)}
        keys = {edge_key(*e) for f in faces for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0]))}
        return Triangulation(self.points, faces, {k: self.edges[k] for k in keys}, vertex_ids=verts,
                             samples=self.samples, fibers=self.fibers, validate=False)

    def is_subcomplex_of(self, other: "Triangulation") -> bool:
        return (self._vset <= other._vset and set(self.faces) <= set(other.faces)
                and set(self.edges) <= set(other.edges))

    # invariants ---------------------------------------------------------

    def validate(self) -> None:
        for (u, v), h in self.edges.items():
            if u not in self._vset or v not in self._vset:
                raise TriangulationError(f"edge ({u}, {v}) has an endpoint outside the vertex table")
            if u >= v:
                raise TriangulationError(f"edge key ({u}, {v}) is not normalized")
            if (h.start, h.end) != (u, v):
                raise TriangulationError(f"edge ({u}, {v}) carries path {h.start}->{h.end}")
            if not (np.array_equal(h.samples[0], self.points[u]) and np.array_equal(h.samples[-1], self.points[v])):
                raise TriangulationError(f"path on edge ({u}, {v}) does not end on its vertices")
        for f in self.faces:
            for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                if edge_key(*e) not in self.edges:
                    raise TriangulationError(f"face {f} uses missing edge {edge_key(*e)}")
            if min_altitude(*self.points[list(f)]) <= EPS:
                raise TriangulationError(f"face {f} is degenerate")
        orphans = find_orphans(self.vertex_ids, self.edges)
        if orphans:
            raise TriangulationError(f"orphan vertices {sorted(orphans)}")
        interior = [h.interior for h in self.edges.values() if h.n_samples > 2]
        if interior:
            table = self.points[list(self.vertex_ids)]
            near = kernels.min_distance_to_segments(np.concatenate(interior), table, table)
            if (near <= EPS).any():
                raise TriangulationError("an edge path passes through a vertex")

    @classmethod
    def from_faces(cls, points, faces, **kw) -> "Triangulation":
        return cls(points, faces, **kw)


def find_orphans(vertices: Iterable[int], edges: Iterable) -> set[int]:
    """Vertices that are the endpoint of no edge."""
    used = set()
    for e in edges:
        if isinstance(e, SampledPath):
            used.update((e.start, e.end))
        else:
            used.update(e)
    return {int(v) for v in vertices} - used


def triangulate(points, *, samples: int = DEFAULT_SAMPLES, fibers: int = DEFAULT_FIBERS,
                eps: float = EPS) -> Triangulation:
    """Delaunay path triangulation; every edge is a straight ``samples``-point path."""
    pts = check_point_set(points, eps)
    faces = delaunay_faces(pts, eps)
    return Triangulation(pts, faces, samples=samples, fibers=fibers)


def adjacency_report(t: Triangulation) -> dict[int, tuple[int, int]]:
    """``vertex -> (degree, incident triangle count)``."""
    return {v: (len(t.neighbors(v)), len(t.incident_faces(v))) for v in t.vertex_ids}


# --- path classes -------------------------------------------------------------

class ClassTriangulation:
    """Triangulation whose edges are path classes with ``r`` representatives each."""

    def __init__(self, points, faces, classes: Mapping[tuple[int, int], PathClass], *,
                 samples: int = DEFAULT_SAMPLES, fibers: int = DEFAULT_FIBERS, validate: bool = True):
        self.points = as_points(points)
        self.samples = samples
        self.fibers = fibers
        self.faces = tuple(sorted(_canonical_face(tuple(f), self.points) for f in faces))
        self.classes = MappingProxyType(dict(sorted(classes.items())))
        for (u, v), c in self.classes.items():
            if (c.start, c.end) != (u, v):
                raise TriangulationError(f"class on edge ({u}, {v}) runs {c.start}->{c.end}")
        if validate:
            self.projection()

    @property
    def reps(self) -> int:
        return min(len(c) for c in self.classes.values())

    def path_class(self, u, v) -> PathClass:
        c = self.classes[edge_key(u, v)]
        return c if c.start == u else c.reversed()

    def class_triangle(self, i: int) -> PathClassTriangle:
        a, b, c = self.faces[i]
        return PathClassTriangle((self.path_class(a, b), self.path_class(b, c), self.path_class(c, a)))

    def projection(self, rep: int = 0) -> Triangulation:
        """The triangulation carried by representative ``rep`` of every class."""
        return Triangulation(self.points, self.faces, {k: c[rep] for k, c in self.classes.items()},
                             samples=self.samples, fibers=self.fibers)


def path_class_triangulate(points, reps: int, *, samples: int = DEFAULT_SAMPLES,
                           fibers: int = DEFAULT_FIBERS, seed: int = DEFAULT_SEED,
                           eps: float = EPS) -> ClassTriangulation:
    """Delaunay scaffold with ``reps`` paths per edge.

    Representative 0 is straight. Each further representative bends at one
    point on the median from the edge midpoint toward the opposite vertex of
    an incident triangle, offset by at most a quarter of the edge length, so
    it stays inside that triangle.
    """
    if reps < 1:
        raise TriangulationError("need at least one representative per edge")
    base = triangulate(points, samples=samples, fibers=fibers, eps=eps)
    pts = base.points
    rng = np.random.default_rng(seed)
    opposite: dict[tuple[int, int], list[int]] = defaultdict(list)
    for f in base.faces:
        for i in range(3):
            opposite[edge_key(f[i], f[(i + 1) % 3])].append(f[(i + 2) % 3])
    classes = {}
    for (u, v), straight in base.edges.items():
        paths = [straight]
        mid = 0.5 * (pts[u] + pts[v])
        length = math.dist(pts[u], pts[v])
        for _ in range(reps - 1):
            w = opposite[(u, v)][int(rng.integers(len(opposite[(u, v)])))]
            toward = pts[w] - mid
            cap = min(0.9, 0.25 * length / math.hypot(*toward))
            bend = mid + cap * rng.uniform(0.2, 1.0) * toward
            paths.append(make_path(u, v, pts, [bend], samples, check_vertices=False))
        classes[(u, v)] = PathClass(u, v, tuple(paths))
    return ClassTriangulation(pts, base.faces, classes, samples=samples, fibers=fibers)


def is_delaunay(t: Triangulation, eps: float = EPS) -> bool:
    """Empty-circumcircle check of every face against every vertex."""
    pts = t.points[list(t.vertex_ids)]
    for f in t.faces:
        cx, cy, r = _circumcircle(*(t.points[v] for v in f))
        if (np.hypot(pts[:, 0] - cx, pts[:, 1] - cy) < r - eps).any():
            return False
    return True


def faces_from_sequence(seq: Sequence[Sequence[int]]) -> list[tuple[int, int, int]]:
    return [tuple(int(v) for v in f) for f in seq]
