"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``."""

import numpy as np

# keeps the (points x segments) scratch arrays around 32 MB
_CHUNK_CELLS = 4_000_000


def _chunks(n, m):
    step = max(1, _CHUNK_CELLS // max(m, 1))
    for lo in range(0, n, step):
        yield lo, min(n, lo + step)


def min_distance_to_segments(points, seg_start, seg_end):
    p = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    a = np.asarray(seg_start, dtype=np.float64).reshape(-1, 2)
    b = np.asarray(seg_end, dtype=np.float64).reshape(-1, 2)
    out = np.full(len(p), np.inf)
    if len(a) == 0:
        return out
    d = b - a
    ll = np.einsum("ij,ij->i", d, d)
    safe = np.where(ll == 0.0, 1.0, ll)
    for lo, hi in _chunks(len(p), len(a)):
        rel = p[lo:hi, None, :] - a[None, :, :]
        t = np.einsum("nmk,mk->nm", rel, d) / safe
        t = np.where(ll == 0.0, 0.0, np.clip(t, 0.0, 1.0))
        diff = rel - t[..., None] * d[None, :, :]
        out[lo:hi] = np.sqrt(np.einsum("nmk,nmk->nm", diff, diff)).min(axis=1)
    return out


def _side(a, b, p):
    d = b - a
    ll = np.sqrt(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1])
    safe = np.where(ll == 0.0, 1.0, ll)
    s = (d[None, :, 0] * (p[:, None, 1] - a[None, :, 1])
         - d[None, :, 1] * (p[:, None, 0] - a[None, :, 0])) / safe
    return np.where(ll == 0.0, 0.0, s)


def locate_points(points, triangles, eps):
    p = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    t = np.asarray(triangles, dtype=np.float64).reshape(-1, 3, 2)
    out = np.full(len(p), -1, dtype=np.int64)
    if len(t) == 0:
        return out
    a, b, c = t[:, 0], t[:, 1], t[:, 2]
    orient = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    sign = np.where(orient < 0.0, -1.0, 1.0)
    for lo, hi in _chunks(len(p), 3 * len(t)):
        q = p[lo:hi]
        inside = ((sign * _side(a, b, q) >= -eps)
                  & (sign * _side(b, c, q) >= -eps)
                  & (sign * _side(c, a, q) >= -eps))
        hit = inside.any(axis=1)
        out[lo:hi] = np.where(hit, inside.argmax(axis=1), -1)
    return out
