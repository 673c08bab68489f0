# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled sweep kernels; semantics mirror hexpatterns.kernels.pure."""
from libc.math cimport fabs, sqrt, INFINITY

import numpy as np

ETA = 1e-12


def hexagon_mr_deviations(values):
    """|M + 1| per row of six hexagon vertex values; nan on zero denominator."""
    cdef double complex[:, ::1] w = np.ascontiguousarray(values, dtype=complex)
    cdef Py_ssize_t h = w.shape[0], i
    out_arr = np.empty(h, dtype=float)
    cdef double[::1] out = out_arr
    cdef double complex num, den
    for i in range(h):
        num = (w[i, 0] - w[i, 1]) * (w[i, 2] - w[i, 3]) * (w[i, 4] - w[i, 5])
        den = (w[i, 1] - w[i, 2]) * (w[i, 3] - w[i, 4]) * (w[i, 5] - w[i, 0])
        if den == 0:
            out[i] = float("nan")
        else:
            out[i] = abs(num / den + 1.0)
    return out_arr


def circularity_deviations(values, centers):
    """Max deviation of the six vertex distances from their mean radius."""
    cdef double complex[:, ::1] w = np.ascontiguousarray(values, dtype=complex)
    cdef double complex[::1] c = np.ascontiguousarray(centers, dtype=complex)
    cdef Py_ssize_t h = w.shape[0], i, t
    out_arr = np.empty(h, dtype=float)
    cdef double[::1] out = out_arr
    cdef double radii[6]
    cdef double mean, dev, d
    for i in range(h):
        mean = 0.0
        for t in range(6):
            radii[t] = abs(w[i, t] - c[i])
            mean += radii[t]
        mean /= 6.0
        dev = 0.0
        for t in range(6):
            d = fabs(radii[t] - mean)
            if d > dev:
                dev = d
        out[i] = dev
    return out_arr


def triangle_overlap_count(points, triangles, double eta=ETA):
    """Separating-axis pair scan; same contract as the pure version."""
    cdef double[:, ::1] pts = np.ascontiguousarray(points, dtype=float)
    cdef long long[:, ::1] tris = np.ascontiguousarray(triangles, dtype=np.int64)
    cdef Py_ssize_t t = tris.shape[0], n = pts.shape[0]
    if t < 2:
        return 0, 0
    cdef Py_ssize_t i, j, a, v, src
    cdef double scale = 1.0
    for i in range(n):
        for a in range(2):
            if fabs(pts[i, a]) > scale:
                scale = fabs(pts[i, a])
    cdef double tol = eta * scale
    corners_np = np.asarray(pts)[np.asarray(tris)]
    edges_np = np.roll(corners_np, -1, axis=1) - corners_np
    axes_np = np.stack([-edges_np[..., 1], edges_np[..., 0]], axis=-1)
    norms_np = np.sqrt((axes_np ** 2).sum(axis=-1))
    cdef double[:, :, ::1] corners = np.ascontiguousarray(corners_np)
    cdef double[:, :, ::1] axes = np.ascontiguousarray(axes_np)
    cdef double[:, ::1] norms = np.ascontiguousarray(norms_np)
    usable_np = (norms_np > tol).any(axis=1)
    cdef unsigned char[::1] usable = np.ascontiguousarray(usable_np, dtype=np.uint8)
    cdef long long overlap = 0, inconclusive = 0
    cdef bint shared
    cdef double best, sep, mn_i, mx_i, mn_o, mx_o, p, ax0, ax1, s1, s2
    cdef Py_ssize_t other, self_t
    for i in range(t - 1):
        for j in range(i + 1, t):
            shared = False
            for a in range(3):
                for v in range(3):
                    if tris[i, a] == tris[j, v]:
                        shared = True
                        break
                if shared:
                    break
            if shared:
                continue
            if not (usable[i] and usable[j]):
                inconclusive += 1
                continue
            best = -INFINITY
            for src in range(2):
                self_t = i if src == 0 else j
                other = j if src == 0 else i
                for a in range(3):
                    if norms[self_t, a] <= tol:
                        continue
                    ax0 = axes[self_t, a, 0]
                    ax1 = axes[self_t, a, 1]
                    mn_i = INFINITY
                    mx_i = -INFINITY
                    for v in range(3):
                        p = corners[self_t, v, 0] * ax0 + corners[self_t, v, 1] * ax1
                        if p < mn_i:
                            mn_i = p
                        if p > mx_i:
                            mx_i = p
                    mn_o = INFINITY
                    mx_o = -INFINITY
                    for v in range(3):
                        p = corners[other, v, 0] * ax0 + corners[other, v, 1] * ax1
                        if p < mn_o:
                            mn_o = p
                        if p > mx_o:
                            mx_o = p
                    s1 = mn_o - mx_i
                    s2 = mn_i - mx_o
                    sep = (s1 if s1 > s2 else s2) / norms[self_t, a]
                    if sep > best:
                        best = sep
                    if best > tol:
                        break
                if best > tol:
                    break
            if best > tol:
                continue
            if best < -tol:
                overlap += 1
            else:
                inconclusive += 1
    return int(overlap), int(inconclusive)
