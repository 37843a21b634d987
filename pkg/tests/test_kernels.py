import importlib
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathtri import _pykernels, kernels

try:
    from pathtri import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python"),
            pytest.param(_ckernels, id="compiled",
                         marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))]


def brute_distance(points, a, b):
    out = []
    for p in points:
        best = np.inf
        for s, e in zip(a, b):
            d = e - s
            L2 = d @ d
            t = 0.0 if L2 == 0 else min(1.0, max(0.0, (p - s) @ d / L2))
            best = min(best, float(np.hypot(*(s + t * d - p))))
        out.append(best)
    return np.array(out)


def brute_locate(points, tris, eps):
    out = []
    for p in points:
        hit = -1
        for k, (a, b, c) in enumerate(tris):
            sides = []
            for u, v in ((a, b), (b, c), (c, a)):
                cr = (v[0] - u[0]) * (p[1] - u[1]) - (v[1] - u[1]) * (p[0] - u[0])
                sides.append(cr / np.hypot(*(v - u)))
            sign = 1.0 if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0 else -1.0
            if min(sign * s for s in sides) >= -eps:
                hit = k
                break
        out.append(hit)
    return np.array(out)


@pytest.mark.parametrize("impl", BACKENDS)
def test_distance_matches_brute_force(impl):
    rng = np.random.default_rng(0)
    pts, a, b = rng.random((300, 2)), rng.random((40, 2)), rng.random((40, 2))
    b[3] = a[3]
    assert np.allclose(impl.min_distance_to_segments(pts, a, b), brute_distance(pts, a, b), atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS)
def test_distance_no_segments(impl):
    d = impl.min_distance_to_segments(np.zeros((3, 2)), np.zeros((0, 2)), np.zeros((0, 2)))
    assert d.shape == (3,) and np.isinf(d).all()


@pytest.mark.parametrize("impl", BACKENDS)
def test_locate_matches_brute_force(impl):
    rng = np.random.default_rng(1)
    tris = rng.random((25, 3, 2))
    pts = rng.random((500, 2))
    got = impl.locate_points(pts, tris, 1e-9)
    assert got.dtype == np.int64
    assert np.array_equal(got, brute_locate(pts, tris, 1e-9))


@pytest.mark.parametrize("impl", BACKENDS)
def test_locate_boundary_is_closed(impl):
    tris = np.array([[[0, 0], [1, 0], [0, 1]]], dtype=float)
    pts = np.array([[0.5, 0.0], [0.0, 0.0], [0.5, 0.5], [0.6, 0.6]])
    assert impl.locate_points(pts, tris, 1e-9).tolist() == [0, 0, 0, -1]


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
@given(st.integers(0, 2**32 - 1))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    pts, tris = rng.normal(size=(50, 2)), rng.normal(size=(8, 3, 2))
    a, b = rng.normal(size=(10, 2)), rng.normal(size=(10, 2))
    assert np.allclose(_ckernels.min_distance_to_segments(pts, a, b),
                       _pykernels.min_distance_to_segments(pts, a, b), atol=1e-12)
    assert np.array_equal(_ckernels.locate_points(pts, tris, 1e-9), _pykernels.locate_points(pts, tris, 1e-9))


def test_env_forces_pure_python():
    code = "import pathtri.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, PATHTRI_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("compiled", "python")
    importlib.reload(kernels)
