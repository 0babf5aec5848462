"""Lattice points of Z^d, finite supports and unimodular affine maps."""

from collections import deque
from fractions import Fraction
from itertools import product

import numpy as np

SUPPORT_GUARD = 10


class DimensionError(ValueError):
    pass


class GuardExceeded(ValueError):
    pass


def point(coords):
    return tuple(int(c) for c in coords)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def neg(u):
    return tuple(-a for a in u)


def unit(d, i, sign=1):
    """sign * e_i with i counted from 1."""
    return tuple(sign if j == i - 1 else 0 for j in range(d))


def zero(d):
    return (0,) * d


def l1(u):
    return sum(abs(a) for a in u)


class Support:
    """Finite set of lattice points of a fixed dimension, stored sorted."""

    __slots__ = ("dim", "points", "_set")

    def __init__(self, points, dim=None):
        pts = {point(p) for p in points}
        if dim is None:
            if not pts:
                raise DimensionError("empty support needs an explicit dimension")
            dim = len(next(iter(pts)))
        if dim < 1:
            raise DimensionError("dimension must be positive")
        for p in pts:
            if len(p) != dim:
                raise DimensionError(f"point {p} is not {dim}-dimensional")
        self.dim = dim
        self.points = tuple(sorted(pts))
        self._set = frozenset(pts)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self._set

    def __eq__(self, other):
        return isinstance(other, Support) and self.dim == other.dim and self._set == other._set

    def __hash__(self):
        return hash((self.dim, self.points))

    def __repr__(self):
        return f"Support({list(self.points)})"

    def __or__(self, other):
        _same_dim(self, other)
        return Support(self._set | other._set, self.dim)

    def __sub__(self, other):
        _same_dim(self, other)
        return Support(self._set - other._set, self.dim)

    def __and__(self, other):
        _same_dim(self, other)
        return Support(self._set & other._set, self.dim)

    def with_points(self, *pts):
        return Support(self._set | {point(p) for p in pts}, self.dim)

    def translate(self, v):
        return Support((add(p, v) for p in self.points), self.dim)

    def anchored(self):
        """Translate so the lexicographically least point is the origin."""
        if not self.points:
            return self
        return self.translate(neg(self.points[0]))

    def array(self):
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.dim)

    def bounds(self):
        a = self.array()
        return tuple(a.min(axis=0)), tuple(a.max(axis=0))

    def radius(self):
        return max((max(abs(c) for c in p) for p in self.points), default=0)

    def to_text(self):
        lines = [f"dim {self.dim}"]
        lines += [" ".join(str(c) for c in p) for p in self.points]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines or not lines[0].startswith("dim "):
            raise ValueError("support text must start with 'dim <d>'")
        d = int(lines[0].split()[1])
        pts = []
        for ln in lines[1:]:
            coords = ln.split()
            if len(coords) != d:
                raise DimensionError(f"line {ln!r} does not have {d} coordinates")
            pts.append(tuple(int(c) for c in coords))
        return cls(pts, d)


def _same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def neighbors(p):
    for i in range(len(p)):
        for s in (-1, 1):
            q = list(p)
            q[i] += s
            yield tuple(q)


def is_connected(S):
    pts = set(S)
    if not pts:
        return False
    start = next(iter(pts))
    seen = {start}
    todo = deque([start])
    while todo:
        p = todo.popleft()
        for q in neighbors(p):
            if q in pts and q not in seen:
                seen.add(q)
                todo.append(q)
    return len(seen) == len(pts)


def boundary(S):
    """Points outside S adjacent to S."""
    out = set()
    for p in S:
        for q in neighbors(p):
            if q not in S:
                out.add(q)
    return sorted(out)


def minkowski_diff(F, S):
    _same_dim(F, S)
    return Support((sub(f, s) for f in F for s in S), F.dim)


def box(m, lo=None):
    m = tuple(int(v) for v in m)
    if not m or any(v < 1 for v in m):
        raise ValueError(f"box sides must be positive: {m}")
    lo = lo or (0,) * len(m)
    return Support((add(p, lo) for p in product(*(range(v) for v in m))), len(m))


def box_between(lo, hi):
    """All points with lo <= p <= hi coordinatewise."""
    return box(tuple(h - l + 1 for l, h in zip(lo, hi)), tuple(lo))


def canonical_difference_set(d):
    return Support([zero(d)] + [unit(d, i, -1) for i in range(1, d + 1)], d)


def enumerate_connected_supports(d, max_size, guard=SUPPORT_GUARD):
    """Yield one anchored representative per translation class of connected
    subsets of Z^d with 1 <= |S| <= max_size, ordered by size then points."""
    if max_size > guard:
        raise GuardExceeded(f"max_size {max_size} exceeds guard {guard}")
    level = {(zero(d),)}
    for size in range(1, max_size + 1):
        for pts in sorted(level):
            yield Support(pts, d)
        if size == max_size:
            break
        nxt = set()
        for pts in level:
            cur = set(pts)
            for q in boundary(cur):
                grown = sorted(cur | {q})
                base = grown[0]
                nxt.add(tuple(sub(p, base) for p in grown))
        level = nxt


# affine maps


def _det(mat):
    n = len(mat)
    a = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def determinant(mat):
    return _det(mat)


def rational_rank(vectors):
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _inverse(mat):
    n = len(mat)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[int(v) for v in row[n:]] for row in a]


class AffineMap:
    """n -> M n + b with M in GL_d(Z)."""

    __slots__ = ("matrix", "translation", "dim")

    def __init__(self, matrix, translation=None):
        mat = tuple(tuple(int(v) for v in row) for row in matrix)
        d = len(mat)
        if any(len(row) != d for row in mat):
            raise DimensionError("affine matrix must be square")
        if abs(_det(mat)) != 1:
            raise ValueError("matrix is not unimodular")
        self.matrix = mat
        self.dim = d
        self.translation = point(translation) if translation is not None else zero(d)
        if len(self.translation) != d:
            raise DimensionError("translation dimension mismatch")

    @classmethod
    def identity(cls, d):
        return cls([[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def shift(cls, v):
        d = len(v)
        return cls([[int(i == j) for j in range(d)] for i in range(d)], v)

    def __call__(self, n):
        return tuple(sum(r * c for r, c in zip(row, n)) + t for row, t in zip(self.matrix, self.translation))

    def apply_array(self, pts):
        m = np.array(self.matrix, dtype=np.int64)
        return pts @ m.T + np.array(self.translation, dtype=np.int64)

    def inverse(self):
        inv = _inverse(self.matrix)
        t = tuple(-sum(r * c for r, c in zip(row, self.translation)) for row in inv)
        return AffineMap(inv, t)

    def compose(self, other):
        """self after other."""
        m = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.dim)) for j in range(self.dim)]
             for i in range(self.dim)]
        return AffineMap(m, self(other.translation))

    def __eq__(self, other):
        return isinstance(other, AffineMap) and self.matrix == other.matrix and self.translation == other.translation

    def __hash__(self):
        return hash((self.matrix, self.translation))

    def __repr__(self):
        return f"AffineMap({[list(r) for r in self.matrix]}, {self.translation})"


def apply_affine(A, S):
    if A.dim != S.dim:
        raise DimensionError("affine map and support have different dimensions")
    return Support((A(p) for p in S), S.dim)
