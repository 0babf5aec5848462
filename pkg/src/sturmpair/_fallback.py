"""Pure numpy versions of the compiled kernels, same signatures."""

import numpy as np


def _circ_dist(a, b):
    x = a - b
    y = b - a
    return np.minimum(x, y)


def classify_points(points, steps, offset, thresholds):
    points = np.ascontiguousarray(points, dtype=np.int64)
    u = np.full(points.shape[0], offset, dtype=np.uint64)
    # unsigned arithmetic wraps modulo 2**64, which is the circle
    u += (points.astype(np.uint64) * np.asarray(steps, dtype=np.uint64)).sum(axis=1, dtype=np.uint64)
    margin = np.abs(points).sum(axis=1).astype(np.uint64) + np.uint64(3)
    counts = np.zeros(points.shape[0], dtype=np.int8)
    ambiguous = _circ_dist(u, np.uint64(0)) <= margin
    for t in np.asarray(thresholds, dtype=np.uint64):
        counts += (u >= t).astype(np.int8)
        ambiguous |= _circ_dist(u, t) <= margin
    return counts, ambiguous


def pattern_codes3(grid, offsets, base, n0, n1, n2):
    codes = np.zeros((n0, n1, n2), dtype=np.int64)
    for a, b, c in np.asarray(offsets):
        codes = codes * base + grid[a:a + n0, b:b + n1, c:c + n2]
    return codes
