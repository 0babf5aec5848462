"""Extension sets and graphs, bilateral multiplicities, evil triples and
pattern complexity."""

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import networkx as nx
import numpy as np

from .exactreal import SlopeVector
from .lattice import (Support, add, boundary, canonical_difference_set, is_connected,
                      minkowski_diff, sub, unit, zero)
from .sturmian import LOWER, DisconnectedSupport, Patch, SturmianConfig, grid_language


class PositionClash(ValueError):
    pass


# language sources


class ExactLanguage:
    """Languages of the characteristic configuration read through the
    bijection with F - S, valid for nonempty connected supports."""

    grade = "exact"

    def __init__(self, alpha, radius=14):
        self.alpha = alpha if isinstance(alpha, SlopeVector) else SlopeVector(alpha)
        self.dim = self.alpha.dim
        self.difference_set = canonical_difference_set(self.dim)
        self.config = SturmianConfig(self.alpha, 0, LOWER)
        self._lo = (-radius,) * self.dim
        self._grid = self.config.window(self._lo, (radius,) * self.dim)
        self._cache = {}

    def _read(self, pts):
        idx = pts - np.array(self._lo, dtype=np.int64)
        if idx.min() >= 0 and idx.max() < self._grid.shape[0]:
            return self._grid[tuple(idx.T)]
        return self.config.values(pts)

    def language(self, S):
        if len(S) == 0:
            return {Patch(S, ())}
        key = S
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not is_connected(S):
            raise DisconnectedSupport("exact language requires a connected support")
        U = minkowski_diff(self.difference_set, S)
        pts = (U.array()[:, None, :] + S.array()[None, :, :]).reshape(-1, self.dim)
        vals = self._read(pts).reshape(len(U), len(S)).tolist()
        out = {Patch(S, row) for row in vals}
        if len(out) != len(U):
            raise ArithmeticError("patterns at distinct anchors of F - S coincide")
        self._cache[key] = out
        return out


class WindowLanguage:
    """Union of the languages read in a finite box of each configuration."""

    grade = "window"

    def __init__(self, configs, lo, hi, difference_set=None):
        self.configs = list(configs)
        self.dim = self.configs[0].dim
        self.lo, self.hi = tuple(lo), tuple(hi)
        self.difference_set = difference_set
        self._grids = [c.window(self.lo, self.hi) for c in self.configs]
        self._cache = {}

    def language(self, S):
        if len(S) == 0:
            return {Patch(S, ())}
        hit = self._cache.get(S)
        if hit is None:
            hit = set()
            for g in self._grids:
                hit |= grid_language(g, S)
            self._cache[S] = hit
        return hit


# extensions and graphs


def _check_positions(S, *positions):
    for p in positions:
        if tuple(p) in S:
            raise PositionClash(f"position {p} lies inside the support")
    if len(positions) == 2 and tuple(positions[0]) == tuple(positions[1]):
        raise PositionClash("positions must differ")


def _grouped(source, S, extra):
    """Map each w in L_S to the tuples of symbols it takes at extra positions."""
    T = S.with_points(*extra) if extra else S
    L = source.language(T)
    s_idx = [T.points.index(p) for p in S.points]
    e_idx = [T.points.index(tuple(p)) for p in extra]
    out = {}
    for u in L:
        w = tuple(u.values[i] for i in s_idx)
        out.setdefault(w, set()).add(tuple(u.values[i] for i in e_idx))
    return out


def extensions(source, w, pos):
    S = w.support
    _check_positions(S, pos)
    g = _grouped(source, S, [tuple(pos)])
    return {e[0] for e in g.get(w.values, ())}


@dataclass
class ExtensionGraph:
    pattern: Patch
    left: tuple
    right: tuple
    left_vertices: frozenset
    right_vertices: frozenset
    edges: frozenset

    def nx_graph(self):
        g = nx.Graph()
        g.add_nodes_from(("L", a) for a in self.left_vertices)
        g.add_nodes_from(("R", b) for b in self.right_vertices)
        g.add_edges_from((("L", a), ("R", b)) for a, b in self.edges)
        return g


def extension_graph(source, w, left, right):
    S = w.support
    left, right = tuple(left), tuple(right)
    _check_positions(S, left, right)
    edges = _grouped(source, S, [left, right]).get(w.values, set())
    lv = {e[0] for e in _grouped(source, S, [left]).get(w.values, ())}
    rv = {e[0] for e in _grouped(source, S, [right]).get(w.values, ())}
    return ExtensionGraph(w, left, right, frozenset(lv), frozenset(rv), frozenset(edges))


@dataclass
class MultiplicityRecord:
    pattern: Patch
    left: tuple
    right: tuple
    n_left: int
    n_right: int
    n_edges: int
    m: int
    classification: str
    components: int
    acyclic: bool
    evil: object = None
    grade: str = "exact"

    @property
    def v_datum(self):
        """right - left, collected for exploration of bispecial positions."""
        return sub(self.right, self.left)

    def as_row(self):
        S = self.pattern.support
        return [";".join(",".join(map(str, p)) for p in S), ",".join(map(str, self.left)),
                ",".join(map(str, self.right)), self.pattern.key(), str(self.n_left), str(self.n_right),
                str(self.n_edges), str(self.m), str(self.components),
                "" if self.evil is None else str(int(bool(self.evil)))]


RECORD_HEADER = ["support", "left", "right", "pattern", "n_left", "n_right", "n_edges", "m", "components", "evil"]


def classify(m):
    return "strong" if m > 0 else ("weak" if m < 0 else "neutral")


def bilateral_multiplicity(graph, evil=None, grade="exact"):
    m = len(graph.edges) - len(graph.left_vertices) - len(graph.right_vertices) + 1
    g = graph.nx_graph()
    comps = nx.number_connected_components(g) if g.number_of_nodes() else 0
    acyclic = nx.is_forest(g) if g.number_of_nodes() else True
    return MultiplicityRecord(graph.pattern, graph.left, graph.right, len(graph.left_vertices),
                              len(graph.right_vertices), len(graph.edges), m, classify(m), comps, acyclic,
                              evil, grade)


def bipartite_multiplicity(left, right, edges):
    """Multiplicity, component count and acyclicity of a bare bipartite graph."""
    w = Patch.empty(1)
    rec = bilateral_multiplicity(ExtensionGraph(w, (0,), (1,), frozenset(left), frozenset(right),
                                                frozenset(edges)))
    return rec.m, rec.components, rec.acyclic


# evil triples


def is_evil_triple(S, left, right, F):
    """The unique t with t + left, t + right in F and (t + S) disjoint from F."""
    left, right = tuple(left), tuple(right)
    _check_positions(S, left, right)
    if len(S) == 0:
        return None
    Fs = set(F)
    for f in F:
        t = sub(f, left)
        if add(t, right) in Fs and not any(add(t, s) in Fs for s in S):
            return t
    return None


def evil_pattern(x, S, left, right, F):
    t = is_evil_triple(S, left, right, F)
    if t is None:
        raise ValueError("triple is not evil")
    return x.patch_at(S, t)


# complexity


@dataclass
class ComplexityResult:
    support: Support
    measured: int
    predicted: int

    @property
    def match(self):
        return self.measured == self.predicted


def complexity(source, S):
    if len(S) == 0 or not is_connected(S):
        raise DisconnectedSupport("complexity is defined here for nonempty connected supports")
    F = source.difference_set if source.difference_set is not None else canonical_difference_set(S.dim)
    return ComplexityResult(S, len(source.language(S)), len(minkowski_diff(F, S)))


def rectangular_complexity(m):
    m = tuple(int(v) for v in m)
    if any(v < 1 for v in m):
        raise ValueError("box sides must be positive")
    val = prod(m) * (1 + sum(Fraction(1, v) for v in m))
    assert val.denominator == 1
    return int(val)


# multiplicities over a language


def default_positions(S, d):
    if len(S) == 0:
        return [(zero(d), unit(d, 1))]
    bd = boundary(set(S))
    return [(a, b) for i, a in enumerate(bd) for b in bd[i + 1:]]


def multiplicity_records(source, S, left, right, x=None, F=None):
    """One record per w in L_S at the positions (left, right)."""
    left, right = tuple(left), tuple(right)
    _check_positions(S, left, right)
    F = F if F is not None else source.difference_set
    x = x if x is not None else getattr(source, "config", None)
    both = _grouped(source, S, [left, right])
    gl = _grouped(source, S, [left])
    gr = _grouped(source, S, [right])
    evil_t = is_evil_triple(S, left, right, F) if F is not None else None
    evil_w = x.patch_at(S, evil_t).values if (evil_t is not None and x is not None) else None
    out = []
    for w in sorted(_grouped(source, S, [])):
        g = ExtensionGraph(Patch(S, w), left, right, frozenset(e[0] for e in gl.get(w, ())),
                           frozenset(e[0] for e in gr.get(w, ())), frozenset(both.get(w, ())))
        evil = (w == evil_w) if F is not None else None
        out.append(bilateral_multiplicity(g, evil, source.grade))
    return out


def bispecial_scan(source, S, positions=None, x=None, F=None):
    """Records of every w in L_S with at least two extensions on each side."""
    positions = positions if positions is not None else default_positions(S, source.dim)
    out = []
    for left, right in positions:
        for rec in multiplicity_records(source, S, left, right, x, F):
            if rec.n_left >= 2 and rec.n_right >= 2:
                out.append(rec)
    return out


def multiplicity_sum_identity(source, S, left, right):
    """(sum of m over L_S, |L_{S+l+r}| - |L_{S+l}| - |L_{S+r}| + |L_S|)."""
    total = sum(r.m for r in multiplicity_records(source, S, left, right))
    rhs = (len(source.language(S.with_points(left, right))) - len(source.language(S.with_points(left)))
           - len(source.language(S.with_points(right))) + len(source.language(S)))
    return total, rhs


def gamma_sets(pair, w, left, right):
    """Diagnostic edge classes by how an occurrence of w with its two
    extensions meets the difference set: only at left, only at right, or
    otherwise (S meets F, or both positions do)."""
    S = w.support
    left, right = tuple(left), tuple(right)
    F = pair.difference_set
    Fs = set(F)
    full = S.with_points(left, right)
    g_left, g_right, g_star = set(), set(), set()
    for t in minkowski_diff(F, full):
        if pair.x.patch_at(S, t).values != w.values:
            continue
        edge = (pair.x(add(t, left)), pair.x(add(t, right)))
        s_hits = any(add(t, s) in Fs for s in S)
        l_in, r_in = add(t, left) in Fs, add(t, right) in Fs
        if l_in and not r_in and not s_hits:
            g_left.add(edge)
        if r_in and not l_in and not s_hits:
            g_right.add(edge)
        if s_hits or (l_in and r_in):
            g_star.add(edge)
    return g_left, g_right, g_star


# lower bound helper


def joint_language_size(pair, S, lo, hi):
    src = WindowLanguage([pair.x, pair.y], lo, hi)
    return len(src.language(S))


# counting bound for cyclic permutations


def is_cyclic_permutation(perm):
    """perm is a dict U -> U forming a single cycle with no fixed point."""
    if len(perm) < 2 or set(perm.values()) != set(perm):
        return False
    start = next(iter(perm))
    seen, a = 1, perm[start]
    while a != start:
        seen += 1
        a = perm[a]
    return seen == len(perm)


def paired_images(perm, f):
    """#({(a, f(a))} u {(perm(a), f(a))}) for a map f given on A subset of U."""
    return len({(a, b) for a, b in f.items()} | {(perm[a], b) for a, b in f.items()})


def counting_bound_holds(perm, f):
    """The paired-image count is at least |A| + |f(A)| whenever A != U."""
    if len(f) == len(perm):
        return True
    return paired_images(perm, f) >= len(f) + len(set(f.values()))
