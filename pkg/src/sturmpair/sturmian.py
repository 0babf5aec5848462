"""Codimension-one cut and project configurations.

The lower configuration with slope alpha and intercept rho takes at n the
value sum_i(floor(alpha_i + t) - floor(t)) where t = n.alpha + rho; the
upper one uses ceilings.  Equivalently the symbol is the index of the cell
of the window partition containing frac(t), where cells are closed on the
left (lower) or on the right (upper).
"""

from fractions import Fraction

import numpy as np

from . import kernels
from .exactreal import SurdReal, SlopeVector, compare, dot, floor_of, ceil_of, frac_mod_1
from .lattice import (DimensionError, Support, box_between, canonical_difference_set,
                      is_connected, minkowski_diff)

LOWER, UPPER = "lower", "upper"
FIXED_BITS = 64
_MASK = (1 << FIXED_BITS) - 1


class DegenerateSlope(ValueError):
    pass


class DisconnectedSupport(ValueError):
    pass


def _check_side(side):
    if side not in (LOWER, UPPER):
        raise ValueError(f"side must be 'lower' or 'upper', not {side!r}")
    return side


class WindowPartition:
    """Partition of [0,1) into d+1 cells cut at 1 - alpha_i.

    order[k] is the 1-based coordinate with the k-th largest slope entry, so
    cell k is [1 - alpha_order[k], 1 - alpha_order[k+1]) with the
    conventions alpha_order[0] = 1 and alpha_order[d+1] = 0.
    """

    def __init__(self, alpha):
        if not isinstance(alpha, SlopeVector):
            alpha = SlopeVector(alpha)
        self.alpha = alpha
        d = alpha.dim
        for i in range(d):
            if alpha[i].sign() <= 0:
                raise DegenerateSlope(f"slope entry {i + 1} is zero")
            for j in range(i + 1, d):
                if compare(alpha[i], alpha[j]) == 0:
                    raise DegenerateSlope(f"slope entries {i + 1} and {j + 1} coincide")
        idx = list(range(d))
        # insertion sort with exact comparisons, descending
        order = []
        for i in idx:
            k = 0
            while k < len(order) and compare(alpha[order[k]], alpha[i]) > 0:
                k += 1
            order.insert(k, i)
        self.order = tuple(i + 1 for i in order)
        self.dim = d
        self._desc = [SurdReal(1)] + [alpha[i] for i in order] + [SurdReal(0)]
        self.endpoints = tuple(1 - a for a in self._desc)

    def cell(self, i, side=LOWER):
        """(left, right) endpoints of cell i; closedness follows the side."""
        return self.endpoints[i], self.endpoints[i + 1]

    def lengths(self):
        return [self._desc[i] - self._desc[i + 1] for i in range(self.dim + 1)]

    def symbol_of(self, f, side=LOWER):
        """Cell index of f in [0,1)."""
        if _check_side(side) == LOWER:
            return sum(1 for e in self.endpoints[1:self.dim + 1] if compare(e, f) <= 0)
        if f.is_zero():
            return self.dim
        return sum(1 for e in self.endpoints[1:self.dim + 1] if compare(e, f) < 0)


def window_partition(alpha):
    return WindowPartition(alpha)


class Patch:
    """Pattern: a support with one symbol per point."""

    __slots__ = ("support", "values", "_hash")

    def __init__(self, support, values):
        if not isinstance(support, Support):
            support = Support(support)
        if isinstance(values, dict):
            vals = []
            for p in support:
                if p not in values:
                    raise ValueError(f"no symbol given at {p}")
                vals.append(int(values[p]))
            if len(values) != len(support):
                raise ValueError("symbols given outside the support")
        else:
            vals = [int(v) for v in values]
            if len(vals) != len(support):
                raise ValueError("one symbol per support point is required")
        self.support = support
        self.values = tuple(vals)
        self._hash = hash((support, self.values))

    @classmethod
    def empty(cls, d):
        return cls(Support([], d), ())

    def __getitem__(self, p):
        return self.values[self.support.points.index(tuple(p))]

    def items(self):
        return zip(self.support.points, self.values)

    def as_dict(self):
        return dict(self.items())

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, Patch) and self.support == other.support and self.values == other.values

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.support.points, self.values) < (other.support.points, other.values)

    def __repr__(self):
        return f"Patch({dict(self.items())})"

    def translate(self, v):
        return Patch(self.support.translate(v), self.values)

    def restrict(self, S):
        d = self.as_dict()
        return Patch(S, {p: d[p] for p in S})

    def extend(self, pos, symbol):
        d = self.as_dict()
        d[tuple(pos)] = symbol
        return Patch(self.support.with_points(pos), d)

    def to_text(self, alphabet_size):
        lines = [f"dim {self.support.dim}", f"alphabet {alphabet_size}"]
        lines += [" ".join(str(c) for c in p) + f" {v}" for p, v in self.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if len(lines) < 2 or not lines[0].startswith("dim ") or not lines[1].startswith("alphabet "):
            raise ValueError("patch text must start with 'dim <d>' and 'alphabet <k>'")
        d = int(lines[0].split()[1])
        k = int(lines[1].split()[1])
        vals = {}
        for ln in lines[2:]:
            parts = ln.split()
            if len(parts) != d + 1:
                raise DimensionError(f"line {ln!r} needs {d} coordinates and a symbol")
            p = tuple(int(c) for c in parts[:d])
            s = int(parts[d])
            if not 0 <= s < k:
                raise ValueError(f"symbol {s} outside alphabet of size {k}")
            if p in vals:
                raise ValueError(f"point {p} given twice")
            vals[p] = s
        return cls(Support(vals, d), vals), k

    def key(self):
        return ",".join(str(v) for v in self.values)

    def grid_text(self):
        """Rows from top to bottom for d = 2, '.' outside the support."""
        if self.support.dim != 2:
            return " ".join(str(v) for v in self.values)
        (x0, y0), (x1, y1) = self.support.bounds()
        d = self.as_dict()
        rows = []
        for y in range(y1, y0 - 1, -1):
            rows.append(" ".join(str(d.get((x, y), ".")) for x in range(x0, x1 + 1)))
        return "\n".join(rows)


class Configuration:
    """Lazily evaluated map Z^d -> alphabet."""

    dim = None
    alphabet = None

    def values(self, points):
        raise NotImplementedError

    def __call__(self, n):
        return int(self.values(np.array([n], dtype=np.int64).reshape(1, -1))[0])

    def window(self, lo, hi):
        """Symbols on the box lo <= n <= hi as an array indexed by n - lo."""
        shape = tuple(h - l + 1 for l, h in zip(lo, hi))
        grids = np.meshgrid(*[np.arange(l, h + 1) for l, h in zip(lo, hi)], indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
        return self.values(pts).reshape(shape)

    def patch(self, S):
        if not isinstance(S, Support):
            S = Support(S)
        if len(S) == 0:
            return Patch(S, ())
        return Patch(S, self.values(S.array()).tolist())

    def patch_at(self, S, u):
        """sigma^u(x) restricted to S."""
        if len(S) == 0:
            return Patch(S, ())
        return Patch(S, self.values(S.array() + np.array(u, dtype=np.int64)).tolist())


class SturmianConfig(Configuration):
    """s_{alpha,rho} (side lower) or s'_{alpha,rho} (side upper)."""

    def __init__(self, slope, intercept=0, side=LOWER):
        if not isinstance(slope, SlopeVector):
            slope = SlopeVector(slope)
        self.slope = slope
        self.intercept = SurdReal.coerce(intercept)
        if self.intercept.sign() < 0 or compare(self.intercept, 1) >= 0:
            raise ValueError("intercept must lie in [0,1)")
        self.side = _check_side(side)
        self.dim = slope.dim
        self.alphabet = tuple(range(self.dim + 1))
        self.partition = WindowPartition(slope)
        self._steps = np.array([a.fixed_floor(FIXED_BITS) & _MASK for a in slope], dtype=np.uint64)
        self._offset = self.intercept.fixed_floor(FIXED_BITS) & _MASK
        self._thresholds = np.array([(1 - a).fixed_floor(FIXED_BITS) for a in slope], dtype=np.uint64)
        self.exact_evaluations = 0

    def __repr__(self):
        return f"SturmianConfig({self.slope!r}, {self.intercept}, {self.side!r})"

    def with_side(self, side):
        return SturmianConfig(self.slope, self.intercept, side)

    def argument(self, n):
        if len(n) != self.dim:
            raise DimensionError(f"point {n} is not {self.dim}-dimensional")
        return dot(n, self.slope.entries) + self.intercept

    def eval_formula(self, n):
        t = self.argument(n)
        rnd = floor_of if self.side == LOWER else ceil_of
        base = rnd(t)
        return sum(rnd(a + t) - base for a in self.slope)

    def eval_window(self, n):
        return self.partition.symbol_of(frac_mod_1(self.argument(n)), self.side)

    def values(self, points):
        pts = np.ascontiguousarray(points, dtype=np.int64).reshape(-1, self.dim)
        counts, ambiguous = kernels.classify_points(pts, self._steps, self._offset, self._thresholds)
        counts = np.asarray(counts, dtype=np.int8)
        amb = np.flatnonzero(np.asarray(ambiguous))
        if amb.size:
            counts = counts.copy()
            for i in amb:
                counts[i] = self.eval_window(tuple(int(c) for c in pts[i]))
            self.exact_evaluations += amb.size
        return counts


def characteristic(alpha, side=LOWER):
    return SturmianConfig(alpha, 0, side)


def eval_config(cfg, n):
    return cfg(n)


def patch(cfg, S):
    return cfg.patch(S)


# pattern intervals on R/Z


class Arc:
    """Arc [lo, lo + length) (lower) or (lo, lo + length] (upper) on R/Z."""

    __slots__ = ("lo", "length")

    def __init__(self, lo, length):
        self.lo = frac_mod_1(lo)
        self.length = length

    @property
    def hi(self):
        return self.lo + self.length

    def __repr__(self):
        return f"Arc({self.lo}, {self.hi})"

    def __eq__(self, other):
        return isinstance(other, Arc) and self.lo == other.lo and self.length == other.length

    def __hash__(self):
        return hash((self.lo, self.length))


def _intersect(a, b):
    """Pieces of a n b; arcs of the same closedness type."""
    out = []
    for k in (-1, 0, 1):
        lo = a.lo if compare(a.lo, b.lo + k) >= 0 else b.lo + k
        hi = a.hi if compare(a.hi, b.hi + k) <= 0 else b.hi + k
        if compare(lo, hi) < 0:
            out.append(Arc(lo, hi - lo))
    return out


class PatternInterval:
    """Set of intercepts rho with s_{alpha,rho}|_S = p, as disjoint arcs."""

    def __init__(self, arcs, side):
        self.arcs = sorted(arcs, key=lambda a: float(a.lo))
        self.side = side

    def is_empty(self):
        return not self.arcs

    @property
    def left(self):
        if len(self.arcs) != 1:
            raise ValueError("not a single interval")
        return self.arcs[0].lo

    @property
    def right(self):
        return frac_mod_1(self.arcs[0].hi) if len(self.arcs) == 1 else None

    def length(self):
        total = SurdReal(0)
        for a in self.arcs:
            total = total + a.length
        return total

    def contains(self, f):
        f = frac_mod_1(f)
        for a in self.arcs:
            for k in (0, -1):
                x = f - k  # f or f + 1
                if self.side == LOWER:
                    if compare(a.lo, x) <= 0 < compare(a.hi, x):
                        return True
                elif compare(a.lo, x) < 0 <= compare(a.hi, x):
                    return True
        return False

    def __repr__(self):
        return f"PatternInterval({self.arcs}, {self.side!r})"


def pattern_interval(alpha, p, side=LOWER):
    """Intersection over n in S of (W_{p(n)} - n.alpha) on R/Z."""
    part = alpha if isinstance(alpha, WindowPartition) else WindowPartition(alpha)
    _check_side(side)
    lengths = part.lengths()
    arcs = [Arc(SurdReal(0), SurdReal(1))]
    for n, sym in p.items():
        if not 0 <= sym <= part.dim:
            raise ValueError(f"symbol {sym} outside alphabet")
        c = Arc(part.endpoints[sym] - dot(n, part.alpha.entries), lengths[sym])
        nxt = []
        for a in arcs:
            if compare(a.length, 1) == 0:
                nxt.append(c)
            else:
                nxt.extend(_intersect(a, c))
        arcs = nxt
        if not arcs:
            break
    return PatternInterval(arcs, side)


# languages


def language_with_anchors(alpha, S, side=LOWER):
    """Map each pattern of the characteristic configuration on S to the
    unique u in F - S with sigma^u(c) restricted to S equal to it."""
    if not isinstance(alpha, SlopeVector):
        alpha = SlopeVector(alpha)
    if not isinstance(S, Support):
        S = Support(S)
    if not is_connected(S):
        raise DisconnectedSupport("exact language requires a nonempty connected support")
    cfg = SturmianConfig(alpha, 0, side)
    F = canonical_difference_set(alpha.dim)
    anchors = minkowski_diff(F, S)
    s_arr = S.array()
    u_arr = anchors.array()
    pts = (u_arr[:, None, :] + s_arr[None, :, :]).reshape(-1, alpha.dim)
    vals = cfg.values(pts).reshape(len(anchors), len(S))
    out = {}
    for u, row in zip(anchors, vals.tolist()):
        p = Patch(S, row)
        if p in out:
            raise ArithmeticError(f"pattern {p} found twice among F - S; slope not totally irrational?")
        out[p] = u
    return out


def language(alpha, S, side=LOWER):
    return set(language_with_anchors(alpha, S, side))


def window_language(cfg, S, lo, hi):
    """Brute-force set of patterns with support S read in the box [lo, hi]."""
    grid = cfg.window(lo, hi)
    return grid_language(grid, S, lo)


def grid_language(grid, S, lo=None):
    codes, base, smin = _codes(grid, S, 0)
    uniq = np.unique(codes)
    return {_decode(int(c), S, base) for c in uniq.tolist()}


def grid_occurrences(grid, p, lo):
    """Anchors u (absolute coordinates) where the pattern p occurs in grid."""
    S = p.support
    codes, base, smin = _codes(grid, S, max(p.values, default=0) + 1)
    target = 0
    for v in p.values:
        target = target * base + v
    hits = np.argwhere(codes == target)
    shift = np.array(lo, dtype=np.int64) - np.array(smin, dtype=np.int64)
    return [tuple(int(c) for c in h + shift) for h in hits]


def _codes(grid, S, min_base):
    grid = np.asarray(grid, dtype=np.int8)
    base = int(grid.max()) + 1 if grid.size else 1
    base = max(base, min_base, 2)
    arr = S.array()
    smin = arr.min(axis=0)
    codes = kernels.pattern_codes(grid, arr - smin, base)
    return codes, base, tuple(int(c) for c in smin)


def _decode(code, S, base):
    vals = []
    for _ in range(len(S)):
        vals.append(code % base)
        code //= base
    return Patch(S, vals[::-1])


def window_lengths(alpha):
    """Length of each window cell, the limiting frequency of its symbol."""
    return WindowPartition(alpha).lengths()


def symbol_frequencies(cfg, window):
    """Empirical symbol frequencies on a box window, as exact fractions."""
    if not isinstance(window, Support):
        raise TypeError("window must be a Support box")
    if len(window) == 0:
        raise ValueError("empty window")
    lo, hi = window.bounds()
    if len(box_between(lo, hi)) != len(window):
        raise ValueError("window must be a box")
    grid = cfg.window(lo, hi)
    counts = np.bincount(grid.ravel().astype(np.int64), minlength=len(cfg.alphabet))
    total = int(grid.size)
    return [Fraction(int(c), total) for c in counts]
