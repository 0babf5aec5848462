"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set STURMPAIR_PURE=1 to force the numpy fallback.
"""

import os

import numpy as np

from . import _fallback

BACKEND = "python"
_impl = _fallback
if os.environ.get("STURMPAIR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled

        _impl = _compiled
        BACKEND = "cython"
    except ImportError:
        pass


def classify_points(points, steps, offset, thresholds, impl=None):
    impl = impl or _impl
    pts = np.ascontiguousarray(points, dtype=np.int64)
    if pts.ndim != 2:
        raise ValueError("points must be an (N, d) array")
    return impl.classify_points(pts, np.ascontiguousarray(steps, dtype=np.uint64), np.uint64(offset),
                                np.ascontiguousarray(thresholds, dtype=np.uint64))


def pattern_codes(grid, offsets, base, impl=None):
    """Integer code of the pattern read at every anchor where all offsets fit.

    grid is a d-dimensional int8 array (d <= 3), offsets an (k, d) array of
    non-negative integers.  Returns an array over the valid anchors.
    """
    impl = impl or _impl
    grid = np.asarray(grid, dtype=np.int8)
    offsets = np.asarray(offsets, dtype=np.int64).reshape(-1, grid.ndim)
    d = grid.ndim
    if d > 3:
        raise ValueError("pattern_codes supports up to 3 dimensions")
    if base ** len(offsets) >= 2 ** 62:
        raise OverflowError("support too large for integer pattern codes")
    ext = offsets.max(axis=0)
    valid = tuple(int(n - e) for n, e in zip(grid.shape, ext))
    if any(v <= 0 for v in valid):
        return np.zeros((0,) * d, dtype=np.int64)
    pad = 3 - d
    g3 = np.ascontiguousarray(grid.reshape((1,) * pad + grid.shape))
    o3 = np.ascontiguousarray(np.hstack([np.zeros((len(offsets), pad), dtype=np.int64), offsets]))
    v3 = (1,) * pad + valid
    out = impl.pattern_codes3(g3, o3, int(base), *v3)
    return np.asarray(out).reshape(valid)
