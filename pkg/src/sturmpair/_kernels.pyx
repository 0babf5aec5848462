# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: certified fixed-point symbol classification and
pattern encoding over symbol grids."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int8_t, int32_t, int64_t, uint64_t

cnp.import_array()


cdef inline uint64_t circ_dist(uint64_t a, uint64_t b) nogil:
    cdef uint64_t x = a - b
    cdef uint64_t y = b - a
    return x if x < y else y


def classify_points(cnp.int64_t[:, ::1] points, cnp.uint64_t[::1] steps,
                    uint64_t offset, cnp.uint64_t[::1] thresholds):
    cdef Py_ssize_t n = points.shape[0], d = points.shape[1], k = thresholds.shape[0]
    cdef Py_ssize_t i, j
    cdef uint64_t u, margin, t
    cdef int64_t c
    cdef int8_t cnt
    cdef bint amb
    counts_arr = np.empty(n, dtype=np.int8)
    amb_arr = np.zeros(n, dtype=np.bool_)
    cdef int8_t[::1] counts = counts_arr
    cdef cnp.npy_bool[::1] ambiguous = amb_arr
    with nogil:
        for i in range(n):
            u = offset
            margin = 3
            for j in range(d):
                c = points[i, j]
                u += (<uint64_t>c) * steps[j]
                margin += <uint64_t>(c if c >= 0 else -c)
            cnt = 0
            amb = circ_dist(u, 0) <= margin
            for j in range(k):
                t = thresholds[j]
                if u >= t:
                    cnt += 1
                if circ_dist(u, t) <= margin:
                    amb = True
            counts[i] = cnt
            ambiguous[i] = amb
    return counts_arr, amb_arr


cdef void _codes_narrow(const int8_t* g, int32_t* out, const Py_ssize_t* delta, Py_ssize_t k, int32_t base,
                        Py_ssize_t n0, Py_ssize_t n1, Py_ssize_t n2, Py_ssize_t s0, Py_ssize_t s1) nogil:
    cdef Py_ssize_t a, b, c, j
    cdef int32_t* orow
    cdef const int8_t* grow
    for j in range(k):
        for a in range(n0):
            for b in range(n1):
                orow = out + (a * n1 + b) * n2
                grow = g + a * s0 + b * s1 + delta[j]
                for c in range(n2):
                    orow[c] = orow[c] * base + grow[c]


cdef void _codes_wide(const int8_t* g, int64_t* out, const Py_ssize_t* delta, Py_ssize_t k, int64_t base,
                      Py_ssize_t n0, Py_ssize_t n1, Py_ssize_t n2, Py_ssize_t s0, Py_ssize_t s1) nogil:
    cdef Py_ssize_t a, b, c, j
    cdef int64_t* orow
    cdef const int8_t* grow
    for j in range(k):
        for a in range(n0):
            for b in range(n1):
                orow = out + (a * n1 + b) * n2
                grow = g + a * s0 + b * s1 + delta[j]
                for c in range(n2):
                    orow[c] = orow[c] * base + grow[c]


def pattern_codes3(cnp.int8_t[:, :, ::1] grid, cnp.int64_t[:, ::1] offsets, int64_t base,
                   Py_ssize_t n0, Py_ssize_t n1, Py_ssize_t n2):
    cdef Py_ssize_t k = offsets.shape[0]
    cdef Py_ssize_t j
    cdef Py_ssize_t s1 = grid.shape[2]
    cdef Py_ssize_t s0 = grid.shape[1] * s1
    delta_arr = np.empty(max(k, 1), dtype=np.intp)
    cdef Py_ssize_t[::1] delta = delta_arr
    for j in range(k):
        delta[j] = offsets[j, 0] * s0 + offsets[j, 1] * s1 + offsets[j, 2]
    if n0 == 0 or n1 == 0 or n2 == 0:
        return np.zeros((n0, n1, n2), dtype=np.int64)
    cdef int32_t[:, :, ::1] narrow
    cdef int64_t[:, :, ::1] wide
    # codes below 2^31 fit 32-bit lanes, which vectorize much better
    if base ** k < 2 ** 31:
        narrow_arr = np.zeros((n0, n1, n2), dtype=np.int32)
        narrow = narrow_arr
        with nogil:
            _codes_narrow(&grid[0, 0, 0], &narrow[0, 0, 0], &delta[0], k, <int32_t>base, n0, n1, n2, s0, s1)
        return narrow_arr.astype(np.int64)
    wide_arr = np.zeros((n0, n1, n2), dtype=np.int64)
    wide = wide_arr
    with nogil:
        _codes_wide(&grid[0, 0, 0], &wide[0, 0, 0], &delta[0], k, base, n0, n1, n2, s0, s1)
    return wide_arr
