"""Free-group presentations of path cycles and path triangulations.

A relation word is a tuple of ``(k, g)`` terms read as ``sum k * g``. On a
cycle carrier a term moves ``k`` positions along the cycle. On a
triangulation carrier there is no global group law on vertices, so a word is
evaluated by replaying the deterministic breadth-first route from the
generator toward the target vertex, ``sum k`` steps along it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union

from .cycles import PathCycle, bfs_tree, boundary_cycle, route, validate_cycle
from .errors import CycleError, PresentationError, UnknownVertexError
from .triangulation import Triangulation

Term = tuple[int, int]
Word = tuple[Term, ...]
Carrier = Union[PathCycle, Triangulation]


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generator basis, one relation word per carrier vertex, and the carrier.

    ``routes`` holds the breadth-first vertex sequence from the generator to
    every vertex; it is only used for triangulation carriers.
    """

    basis: tuple[int, ...]
    relations: Mapping[int, Word]
    carrier: Carrier
    routes: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.basis:
            raise PresentationError("basis must be non-empty")
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "relations", MappingProxyType(
            {int(v): tuple((int(k), int(g)) for k, g in w) for v, w in sorted(self.relations.items())}))
        object.__setattr__(self, "routes", MappingProxyType(dict(self.routes)))

    @property
    def generator(self) -> int:
        return self.basis[0]

    @property
    def vertices(self) -> tuple[int, ...]:
        if isinstance(self.carrier, PathCycle):
            return self.carrier.vertices
        return self.carrier.vertex_ids

    def __len__(self):
        return len(self.relations)

    def with_relation(self, v: int, word: Word) -> "Presentation":
        """Copy with one relation replaced (used for fault injection)."""
        rel = dict(self.relations)
        rel[v] = tuple(word)
        return Presentation(self.basis, rel, self.carrier, self.routes)


def present_cycle(c: PathCycle, g_index: int = 0) -> Presentation:
    """Single-generator presentation ``g = h_{g_index}(0)``; vertex at offset ``k`` is ``k g``."""
    if not 0 <= g_index < c.n:
        raise PresentationError(f"generator index {g_index} outside [0, {c.n})")
    g = c.vertex(g_index)
    relations = {c.vertex(g_index + k): ((k, g),) for k in range(c.n)}
    return Presentation((g,), relations, c)


def present_triangulation(t: Triangulation, g: int) -> Presentation:
    """Single-generator presentation: vertex ``v`` is ``k g`` with ``k`` its BFS edge distance."""
    if g not in t:
        raise UnknownVertexError(f"generator {g} is not a vertex of the complex")
    parent, dist = bfs_tree(t, g)
    missing = set(t.vertex_ids) - set(parent)
    if missing:
        raise PresentationError(f"complex is disconnected; unreachable vertices {sorted(missing)}")
    relations = {v: ((dist[v], g),) for v in t.vertex_ids}
    routes = {v: tuple(route(parent, v)) for v in t.vertex_ids}
    return Presentation((g,), relations, t, routes)


def evaluate_word(p: Presentation, word: Word, toward: int | None = None) -> int:
    """Replay ``word`` from its first generator (the basis generator for the empty word).

    Triangulation carriers need ``toward``, the vertex whose route is
    replayed, whenever the word takes a non-zero number of steps.
    """
    word = tuple(word)
    for _, g in word:
        if g not in p.basis:
            raise PresentationError(f"generator {g} is not in the basis {p.basis}")
    start = word[0][1] if word else p.generator
    steps = sum(k for k, _ in word)
    c = p.carrier
    if isinstance(c, PathCycle):
        return c.vertex(c.index(start) + steps)
    if steps == 0:
        return start
    if toward is None:
        raise PresentationError("a triangulation word needs a target route to replay")
    if start != p.generator:
        raise PresentationError("routes are only stored from the primary generator")
    path = p.routes.get(toward)
    if path is None:
        raise UnknownVertexError(f"no route to vertex {toward}")
    if not 0 <= steps < len(path):
        raise PresentationError(f"{steps} steps exceed the {len(path) - 1}-edge route to {toward}")
    return path[steps]


def evaluate_relation(p: Presentation, v: int) -> int:
    return evaluate_word(p, p.relations[v], toward=v)


@dataclass(frozen=True, eq=False)
class HomotopySystem:
    """Presentation of the whole complex plus one per vertex star."""

    full: Presentation
    stars: Mapping[int, Presentation]

    def __post_init__(self):
        object.__setattr__(self, "stars", MappingProxyType(dict(sorted(self.stars.items()))))
        whole = self.full.carrier
        for v, sub in self.stars.items():
            if not sub.carrier.is_subcomplex_of(whole):
                raise PresentationError(f"star presentation at {v} is not carried by a subcomplex")

    @property
    def presentations(self) -> tuple[Presentation, ...]:
        return (self.full, *self.stars.values())

    def __len__(self):
        return 1 + len(self.stars)


def build_homotopy_system(t: Triangulation) -> HomotopySystem:
    """Full presentation generated by the maximal nucleus, plus a star presentation per vertex."""
    from .nerve import maximal_nucleus_complex

    nucleus = maximal_nucleus_complex(t).nucleus
    full = present_triangulation(t, nucleus)
    stars = {v: present_triangulation(t.star(v), v) for v in t.vertex_ids}
    return HomotopySystem(full, stars)


@dataclass(frozen=True)
class RealizationReport:
    """What ``realize_system`` reconstructed.

    ``vertices_hit`` / ``vertex_count`` refer to the full carrier;
    ``cycles`` are its validated triangle-boundary 1-cycles.
    """

    vertices_hit: int
    vertex_count: int
    cycles: tuple[PathCycle, ...]
    triangle_count: int
    subcomplexes: int
    subcomplex_cycles: int

    @property
    def ok(self) -> bool:
        return self.vertices_hit == self.vertex_count and len(self.cycles) == self.triangle_count


def _realize(p: Presentation) -> tuple[int, list[PathCycle]]:
    hit = set()
    for v in p.vertices:
        if v not in p.relations:
            raise PresentationError(f"vertex {v} has no relation")
        got = evaluate_relation(p, v)
        if got != v:
            raise PresentationError(f"relation of vertex {v} evaluates to {got}")
        hit.add(got)
    c = p.carrier
    if isinstance(c, PathCycle):
        validate_cycle(c)
        return len(hit), [c]
    cycles = []
    for tri in c.triangles:
        if not set(tri.vertices) <= hit:
            raise PresentationError(f"triangle {tri.vertices} has an unrealized vertex")
        cyc = boundary_cycle(tri)
        try:
            validate_cycle(cyc, 3)
        except CycleError as exc:
            raise PresentationError(f"triangle {tri.vertices}: {exc}") from None
        cycles.append(cyc)
    return len(hit), cycles


def realize_system(s: HomotopySystem) -> RealizationReport:
    """Evaluate every relation of every presentation and recover the 1-cycles.

    Raises ``PresentationError`` if any relation lands on the wrong vertex.
    """
    hit, cycles = _realize(s.full)
    sub_cycles = 0
    for sub in s.stars.values():
        _, cyc = _realize(sub)
        sub_cycles += len(cyc)
    carrier = s.full.carrier
    n_tri = len(carrier.faces) if isinstance(carrier, Triangulation) else 1
    return RealizationReport(hit, len(s.full.vertices), tuple(cycles), n_tri, len(s.stars), sub_cycles)
