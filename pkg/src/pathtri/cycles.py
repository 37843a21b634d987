"""Path cycles, their mod-n walk/move arithmetic, and path-connectedness."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .errors import CycleError
from .geometry import PathTriangle, SampledPath
from .triangulation import Triangulation, edge_key


@dataclass(frozen=True, eq=False)
class PathCycle:
    """Cyclic path sequence ``h_0 ... h_{n-1}`` with ``h_i.end == h_{i+1 mod n}.start``.

    Position ``i`` names the vertex ``h_i(0)``. Indices wrap with
    mathematical mod, so negative offsets are fine.
    """

    paths: tuple[SampledPath, ...]
    basepoint: int = 0

    def __post_init__(self):
        paths = tuple(self.paths)
        object.__setattr__(self, "paths", paths)
        n = len(paths)
        if n < 3:
            raise CycleError(f"a path cycle needs at least 3 paths, got {n}")
        for i, h in enumerate(paths):
            if h.end != paths[(i + 1) % n].start:
                raise CycleError(f"path {i} ends at {h.end} but path {(i + 1) % n} starts at "
                                 f"{paths[(i + 1) % n].start}")
        if len({h.start for h in paths}) != n:
            raise CycleError("cycle revisits a vertex")
        if not 0 <= self.basepoint < n:
            raise CycleError("basepoint out of range")

    @property
    def n(self) -> int:
        return len(self.paths)

    def __len__(self):
        return len(self.paths)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(h.start for h in self.paths)

    def vertex(self, i: int) -> int:
        return self.paths[i % self.n].start

    def index(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise CycleError(f"vertex {v} is not on the cycle") from None

    def position(self, i: int, k: int) -> int:
        self._check(i)
        return (i + k) % self.n

    def _check(self, i):
        if not 0 <= i < self.n:
            raise IndexError(f"cycle index {i} outside [0, {self.n})")


def walk(c: PathCycle, i: int, k: int) -> int:
    """Walk forward ``k`` vertices from position ``i``: ``h_{(i+k) mod n}(0)``."""
    return c.vertex(c.position(i, k))


def walk_back(c: PathCycle, i: int, k: int) -> int:
    """Walk back ``k`` vertices from position ``i``: ``h_{(i-k) mod n}(0)``."""
    return c.vertex(c.position(i, -k))


def move_add(c: PathCycle, i: int, k: int, k2: int) -> int:
    """The move ``k g + k2 g`` from ``g = h_i(0)``: ``h_{(i+k+k2) mod n}(0)``."""
    return c.vertex(c.position(c.position(i, k), k2))


def boundary_cycle(t: PathTriangle) -> PathCycle:
    return PathCycle(t.paths)


def validate_cycle(c: PathCycle, n: int | None = None) -> None:
    """Check closure, degree two at every vertex and, optionally, the length."""
    if n is not None and c.n != n:
        raise CycleError(f"expected a {n}-cycle, got length {c.n}")
    for i, h in enumerate(c.paths):
        nxt = c.paths[(i + 1) % c.n]
        if h.end != nxt.start or tuple(h.samples[-1]) != tuple(nxt.samples[0]):
            raise CycleError(f"chain breaks between paths {i} and {(i + 1) % c.n}")
    degree = Counter()
    for h in c.paths:
        degree[h.start] += 1
        degree[h.end] += 1
    bad = {v: d for v, d in degree.items() if d != 2}
    if bad:
        raise CycleError(f"vertices with degree other than two: {bad}")
    if len({edge_key(h.start, h.end) for h in c.paths}) != c.n:
        raise CycleError("cycle reuses an edge")


def triangle_cycles(t: Triangulation) -> list[PathCycle]:
    return [boundary_cycle(tri) for tri in t.triangles]


def hull_cycle(t: Triangulation) -> PathCycle:
    """Outer boundary cycle, oriented counter-clockwise, starting at the smallest vertex."""
    count = Counter()
    directed = {}
    for a, b, c in t.faces:
        for u, v in ((a, b), (b, c), (c, a)):
            count[edge_key(u, v)] += 1
            directed[edge_key(u, v)] = (u, v)
    succ = {}
    for k, cnt in count.items():
        if cnt == 1:
            u, v = directed[k]
            if u in succ:
                raise CycleError("boundary is not a simple closed curve")
            succ[u] = v
    if not succ:
        raise CycleError("complex has no boundary")
    start = min(succ)
    order = [start]
    while succ[order[-1]] != start:
        order.append(succ[order[-1]])
        if len(order) > len(succ):
            raise CycleError("boundary is not a simple closed curve")
    if len(order) != len(succ):
        raise CycleError("boundary has more than one component")
    return PathCycle(tuple(t.path(order[i], order[(i + 1) % len(order)]) for i in range(len(order))))


def extract_cycles(t: Triangulation, include_hull: bool = True) -> list[PathCycle]:
    """Triangle boundary cycles, plus the outer boundary cycle when requested."""
    cycles = triangle_cycles(t)
    if include_hull:
        cycles.append(hull_cycle(t))
    return cycles


def bfs_tree(t: Triangulation, source: int) -> tuple[dict[int, int | None], dict[int, int]]:
    """Breadth-first parents and edge distances; neighbors visited in id order."""
    source = t.require(source)
    parent: dict[int, int | None] = {source: None}
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in t.neighbors(u):
            if w not in parent:
                parent[w] = u
                dist[w] = dist[u] + 1
                queue.append(w)
    return parent, dist


def route(parent: dict[int, int | None], v: int) -> list[int]:
    """Vertex sequence from the BFS source to ``v``."""
    seq = [v]
    while parent[seq[-1]] is not None:
        seq.append(parent[seq[-1]])
    return seq[::-1]


def is_path_connected(t: Triangulation, u: int, v: int) -> tuple[bool, list[SampledPath]]:
    """Whether ``u`` and ``v`` are joined by a chain of paths, with the shortest witness.

    The witness is deterministic: fewest edges, ties broken toward smaller
    vertex ids. ``u == v`` yields ``(True, [])``.
    """
    u, v = t.require(u), t.require(v)
    if u == v:
        return True, []
    parent, _ = bfs_tree(t, u)
    if v not in parent:
        return False, []
    seq = route(parent, v)
    return True, [t.path(a, b) for a, b in zip(seq, seq[1:])]
