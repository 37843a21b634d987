# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Results match ``_pykernels`` up to rounding."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef inline double _seg_dist2(double px, double py, double ax, double ay,
                              double bx, double by) nogil:
    # squared distance from p to the closed segment a-b
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double ll = dx * dx + dy * dy
    cdef double t, ex, ey
    if ll == 0.0:
        t = 0.0
    else:
        t = ((px - ax) * dx + (py - ay) * dy) / ll
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    ex = px - (ax + t * dx)
    ey = py - (ay + t * dy)
    return ex * ex + ey * ey


def min_distance_to_segments(points, seg_start, seg_end):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] a = np.ascontiguousarray(seg_start, dtype=np.float64)
    cdef const double[:, ::1] b = np.ascontiguousarray(seg_end, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t m = a.shape[0]
    out_arr = np.full(n, np.inf, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double d, best
    with nogil:
        for i in range(n):
            best = 1e308
            for j in range(m):
                d = _seg_dist2(p[i, 0], p[i, 1], a[j, 0], a[j, 1], b[j, 0], b[j, 1])
                if d < best:
                    best = d
            if m > 0:
                out[i] = sqrt(best)
    return out_arr


cdef inline double _side(double ax, double ay, double bx, double by,
                         double px, double py) nogil:
    # signed distance of p from the line a->b, positive on the left
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double ll = sqrt(dx * dx + dy * dy)
    if ll == 0.0:
        return 0.0
    return (dx * (py - ay) - dy * (px - ax)) / ll


def locate_points(points, triangles, double eps):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    tri = np.ascontiguousarray(triangles, dtype=np.float64).reshape(-1, 6)
    cdef const double[:, ::1] t = tri
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t m = t.shape[0]
    out_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double s0, s1, s2, orient
    with nogil:
        for i in range(n):
            for j in range(m):
                orient = ((t[j, 2] - t[j, 0]) * (t[j, 5] - t[j, 1])
                          - (t[j, 3] - t[j, 1]) * (t[j, 4] - t[j, 0]))
                s0 = _side(t[j, 0], t[j, 1], t[j, 2], t[j, 3], p[i, 0], p[i, 1])
                s1 = _side(t[j, 2], t[j, 3], t[j, 4], t[j, 5], p[i, 0], p[i, 1])
                s2 = _side(t[j, 4], t[j, 5], t[j, 0], t[j, 1], p[i, 0], p[i, 1])
                if orient < 0.0:
                    s0 = -s0
                    s1 = -s1
                    s2 = -s2
                if s0 >= -eps and s1 >= -eps and s2 >= -eps:
                    out[i] = j
                    break
    return out_arr
