"""Hot geometric kernels with a compiled core and a numpy fallback.

The compiled module is used when it was built and importable, unless the
environment variable ``PATHTRI_PURE_PYTHON=1`` forces the fallback. Both
backends take and return plain numpy arrays.

``min_distance_to_segments(points, seg_start, seg_end)``
    Distance from each of N points to the nearest of M closed segments.

``locate_points(points, triangles, eps)``
    Index of the first triangle (shape ``(T, 3, 2)``) containing each point,
    boundary included up to ``eps`` in distance, or -1.
"""

import os

from . import _pykernels

if os.environ.get("PATHTRI_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

min_distance_to_segments = _impl.min_distance_to_segments
locate_points = _impl.locate_points

__all__ = ["BACKEND", "min_distance_to_segments", "locate_points"]
