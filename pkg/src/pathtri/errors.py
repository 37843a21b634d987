"""Exception hierarchy. Every domain failure derives from ``PathTriError``."""


class PathTriError(ValueError):
    """Base class for geometric and combinatorial domain errors."""


class GeometryError(PathTriError):
    """Invalid path or triangle geometry (self-loop, degeneracy, mismatch)."""


class TriangulationError(PathTriError):
    """Invalid point set or a complex that violates triangulation invariants."""


class UnknownVertexError(PathTriError, KeyError):
    """A vertex id that is not in the complex's vertex table."""

    def __str__(self):
        return ValueError.__str__(self)


class CycleError(PathTriError):
    """A path sequence that does not close up into a valid path cycle."""


class PresentationError(PathTriError):
    """Word evaluation failed or a relation evaluates to the wrong vertex."""


class CollapseStuckError(PathTriError):
    """Greedy collapsing ran out of free pairs while 2-cells remained."""

    def __init__(self, message, steps=()):
        super().__init__(message)
        self.steps = tuple(steps)
