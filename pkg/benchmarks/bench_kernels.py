"""Compare the compiled and numpy kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from pathtri import _pykernels
from pathtri.collapse import ConeSpec, collapse_cone, region_lattice

try:
    from pathtri import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    tr = collapse_cone(ConeSpec((2.0, 3.0), (0.0, 1.0), (4.0, 1.0)), 1000)
    a, b = tr.segments()
    lattice = region_lattice(tr.residual.polygon)
    yield "distance: 160x160 lattice vs 1000 fibers", "min_distance_to_segments", (lattice, a, b)
    pts = rng.random((10_000, 2)) * 10
    seg = rng.random((500, 2)) * 10
    yield "distance: 10k points vs 500 segments", "min_distance_to_segments", (pts, seg, seg[::-1].copy())
    tris = rng.random((2_000, 3, 2)) * 10
    yield "locate: 10k points in 2000 triangles", "locate_points", (pts, tris, 1e-9)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'case':44s} {'numpy [s]':>10s} {'compiled [s]':>13s} {'speedup':>8s}")
    for label, name, argv in cases(rng):
        py = best_of(lambda: getattr(_pykernels, name)(*argv), args.repeat)
        if _ckernels is None:
            print(f"{label:44s} {py:10.4f} {'n/a':>13s} {'n/a':>8s}")
            continue
        cy = best_of(lambda: getattr(_ckernels, name)(*argv), args.repeat)
        ref, got = getattr(_pykernels, name)(*argv), getattr(_ckernels, name)(*argv)
        assert np.allclose(ref, got), f"backends disagree on {label}"
        print(f"{label:44s} {py:10.4f} {cy:13.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
