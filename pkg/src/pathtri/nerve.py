"""Alexandrov-Hopf nerves, the maximal nucleus complex, and good-cover checking.

The cover checked is the triangulation's own set of closed triangles.
Contractibility of intersections is decided combinatorially: in a proper
planar triangulation every nonvoid intersection of triangles is a shared
vertex, a shared edge or a whole triangle, all contractible. Anything else
(2-d overlap, a vertex resting on another triangle, an edge in three or more
triangles) is reported with a witness.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import kernels
from .geometry import EPS, PathTriangle, orient2d, polygon_area
from .triangulation import Triangulation, edge_key


@dataclass(frozen=True, eq=False)
class Nerve:
    """The triangles attached to a nucleus vertex."""

    nucleus: int
    faces: tuple[int, ...]
    carrier: Triangulation

    def __post_init__(self):
        if not self.faces:
            raise ValueError(f"vertex {self.nucleus} has no attached triangles")
        for i in self.faces:
            if self.nucleus not in self.carrier.faces[i]:
                raise ValueError(f"face {self.carrier.faces[i]} does not contain nucleus {self.nucleus}")

    def __len__(self):
        return len(self.faces)

    @property
    def triangles(self) -> tuple[PathTriangle, ...]:
        return tuple(self.carrier.triangle(i) for i in self.faces)

    def common_vertices(self) -> frozenset[int]:
        return frozenset(reduce(set.intersection, (set(self.carrier.faces[i]) for i in self.faces)))


def nerve_at(t: Triangulation, v: int) -> Nerve:
    return Nerve(t.require(v), tuple(t.incident_faces(v)), t)


def nerve_census(t: Triangulation) -> list[Nerve]:
    """One nerve per vertex, in vertex order."""
    return [nerve_at(t, v) for v in t.vertex_ids]


def maximal_nucleus_complex(t: Triangulation) -> Nerve:
    """Nerve with the most triangles; ties go to the smallest nucleus id."""
    return max(nerve_census(t), key=lambda nv: (len(nv), -nv.nucleus))


@dataclass(frozen=True)
class CoverReport:
    covers: bool
    intersections_ok: bool
    nerve_count: int
    witness: tuple[int, int] | None = None
    reason: str | None = None
    area_ratio: float = 1.0
    uncovered_samples: int = 0
    global_intersection: tuple[int, ...] = ()

    @property
    def good_cover(self) -> bool:
        return self.covers and self.intersections_ok

    def as_dict(self) -> dict:
        return {
            "covers": self.covers,
            "intersections_ok": self.intersections_ok,
            "good_cover": self.good_cover,
            "nerve_count": self.nerve_count,
            "witness": list(self.witness) if self.witness else None,
            "reason": self.reason,
            "area_ratio": self.area_ratio,
            "uncovered_samples": self.uncovered_samples,
            "global_intersection": list(self.global_intersection),
        }


def _side(a, b, p):
    return orient2d(a, b, p) / math.dist(a, b)


def _inside_closed(tri, p, eps):
    a, b, c = tri
    return _side(a, b, p) >= -eps and _side(b, c, p) >= -eps and _side(c, a, p) >= -eps


def _separated(P, Q, eps):
    for T, O in ((P, Q), (Q, P)):
        for i in range(3):
            a, b = T[i], T[(i + 1) % 3]
            if all(_side(a, b, q) <= eps for q in O):
                return True
    return False


def pair_defect(t: Triangulation, i: int, j: int, eps: float = EPS) -> str | None:
    """Why faces ``i`` and ``j`` do not meet in a shared vertex or edge, or ``None``."""
    fi, fj = t.faces[i], t.faces[j]
    shared = set(fi) & set(fj)
    if len(shared) == 3:
        return "duplicate triangle"
    P, Q = t.points[list(fi)], t.points[list(fj)]
    if not _separated(P, Q, eps):
        return "interiors overlap"
    for f, other in ((fi, Q), (fj, P)):
        for v in f:
            if v not in shared and _inside_closed(other, t.points[v], eps):
                return f"vertex {v} lies on the other triangle"
    return None


def sample_hull(hull, n: int, rng) -> np.ndarray:
    """Uniform random points in a convex polygon (fan triangulation from vertex 0)."""
    a = hull[0]
    tris = np.array([[a, hull[k], hull[k + 1]] for k in range(1, len(hull) - 1)])
    areas = np.abs(np.array([orient2d(*tr) for tr in tris]))
    pick = rng.choice(len(tris), size=n, p=areas / areas.sum())
    r1, r2 = rng.random(n), rng.random(n)
    flip = r1 + r2 > 1.0
    r1, r2 = np.where(flip, 1.0 - r1, r1), np.where(flip, 1.0 - r2, r2)
    T = tris[pick]
    return T[:, 0] + r1[:, None] * (T[:, 1] - T[:, 0]) + r2[:, None] * (T[:, 2] - T[:, 0])


def check_good_cover(t: Triangulation, *, samples: int = 10_000, rtol: float = 1e-9,
                     seed: int = 0, eps: float = EPS) -> CoverReport:
    """Union and intersection tests of the triangles against the vertex hull.

    ``covers`` requires the summed triangle area to match the hull area
    within ``rtol`` and every one of ``samples`` random hull points to lie in
    some triangle. ``intersections_ok`` requires every intersecting pair to
    meet in exactly a shared vertex or edge and no edge to border more than
    two triangles.
    """
    hull = t.hull()
    hull_area = abs(polygon_area(hull))
    area = t.area()
    ratio = area / hull_area if hull_area > 0 else math.inf
    uncovered = 0
    if samples:
        pts = sample_hull(hull, samples, np.random.default_rng(seed))
        uncovered = int((kernels.locate_points(pts, t.face_points(), eps) < 0).sum())
    covers = abs(ratio - 1.0) <= rtol and uncovered == 0

    witness, reason = None, None
    fp = t.face_points()
    lo, hi = fp.min(axis=1), fp.max(axis=1)
    touch = ((lo[:, None, :] <= hi[None, :, :] + eps) & (lo[None, :, :] <= hi[:, None, :] + eps)).all(axis=2)
    for i, j in zip(*np.nonzero(np.triu(touch, k=1))):
        why = pair_defect(t, int(i), int(j), eps)
        if why:
            witness, reason = (int(i), int(j)), why
            break
    if witness is None:
        use = Counter(edge_key(*e) for f in t.faces for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])))
        crowded = sorted(k for k, c in use.items() if c > 2)
        if crowded:
            k = crowded[0]
            owners = [i for i, f in enumerate(t.faces) if set(k) <= set(f)]
            witness, reason = (owners[0], owners[1]), f"edge {k} borders {use[k]} triangles"

    common = reduce(set.intersection, (set(f) for f in t.faces)) if t.faces else set()
    return CoverReport(
        covers=covers,
        intersections_ok=witness is None,
        nerve_count=t.n_vertices,
        witness=witness,
        reason=reason,
        area_ratio=ratio,
        uncovered_samples=uncovered,
        global_intersection=tuple(sorted(common)),
    )
