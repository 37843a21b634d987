"""Path triangulations of planar point sets.

Sampled-path triangles and Delaunay-scaffolded path triangulations, path
cycles with mod-n move arithmetic, free-group presentations and homotopy
systems, Alexandrov-Hopf nerves and good covers, and discretized collapses
of cones and balls onto (round) path triangles.
"""

from .collapse import (
    CollapseSequence,
    CollapseTrace,
    ConeSpec,
    ElementaryStep,
    SphereSpec,
    collapse_cone,
    collapse_cone_to_path_triangle,
    collapse_sphere,
    elementary_collapse_sequence,
    replay_collapse,
)
from .cycles import (
    PathCycle,
    boundary_cycle,
    extract_cycles,
    hull_cycle,
    is_path_connected,
    move_add,
    validate_cycle,
    walk,
    walk_back,
)
from .errors import (
    CollapseStuckError,
    CycleError,
    GeometryError,
    PathTriError,
    PresentationError,
    TriangulationError,
    UnknownVertexError,
)
from .geometry import (
    EPS,
    ROUND,
    STRAIGHT,
    Edge,
    PathClass,
    PathClassTriangle,
    PathTriangle,
    SampledPath,
    interior_contains,
    interior_mask,
    make_path,
    make_path_triangle,
    realize_path,
)
from .kernels import BACKEND
from .nerve import CoverReport, Nerve, check_good_cover, maximal_nucleus_complex, nerve_at, nerve_census
from .presentation import (
    HomotopySystem,
    Presentation,
    build_homotopy_system,
    evaluate_relation,
    evaluate_word,
    present_cycle,
    present_triangulation,
    realize_system,
)
from .triangulation import (
    ClassTriangulation,
    Triangulation,
    find_orphans,
    path_class_triangulate,
    triangulate,
)

__version__ = "0.1.0"
