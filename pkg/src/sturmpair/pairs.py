"""Asymptotic pairs: occurrence balance, flip conditions, normalization,
projection, restriction and finite-scale orbit and limit experiments."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .exactreal import SlopeVector, SurdReal, dot, solve_combination
from .lattice import (AffineMap, GuardExceeded, Support, add, apply_affine, box,
                      canonical_difference_set, determinant, enumerate_connected_supports,
                      minkowski_diff, rational_rank, sub, unit, zero)
from .sturmian import LOWER, UPPER, Configuration, Patch, SturmianConfig

DEFAULT_GUARDS = {1: 12, 2: 6, 3: 4}
FINITE_EVIDENCE = "finite-window evidence only"


def default_guard(d):
    return DEFAULT_GUARDS.get(d, 3)


# configuration views


class ConstantConfig(Configuration):
    def __init__(self, dim, symbol=0, alphabet=None):
        self.dim = dim
        self.symbol = int(symbol)
        self.alphabet = tuple(alphabet) if alphabet is not None else (self.symbol,)

    def values(self, points):
        pts = np.asarray(points).reshape(-1, self.dim)
        return np.full(len(pts), self.symbol, dtype=np.int8)


class OverrideConfig(Configuration):
    """A background configuration with finitely many cells replaced."""

    def __init__(self, background, overrides):
        self.background = background
        self.dim = background.dim
        self.overrides = {tuple(int(c) for c in p): int(v) for p, v in dict(overrides).items()}
        self.alphabet = tuple(sorted(set(background.alphabet) | set(self.overrides.values())))

    def values(self, points):
        pts = np.asarray(points, dtype=np.int64).reshape(-1, self.dim)
        out = np.array(self.background.values(pts), dtype=np.int8)
        if self.overrides:
            for i, row in enumerate(pts.tolist()):
                v = self.overrides.get(tuple(row))
                if v is not None:
                    out[i] = v
        return out


class PullbackConfig(Configuration):
    """n -> symbols[base(offset + sum_i n_i * columns_i)].

    With square unimodular columns this is a lattice transport; with k < d
    independent columns it is the restriction to the sublattice they span.
    """

    def __init__(self, base, offset=None, columns=None, symbols=None):
        self.base = base
        d = base.dim
        self.offset = tuple(offset) if offset is not None else zero(d)
        cols = [tuple(c) for c in columns] if columns is not None else [unit(d, i) for i in range(1, d + 1)]
        self.columns = cols
        self.dim = len(cols)
        self._mat = np.array(cols, dtype=np.int64).reshape(self.dim, d).T
        self.symbols = dict(symbols) if symbols is not None else None
        if self.symbols is None:
            self.alphabet = tuple(base.alphabet)
            self._lut = None
        else:
            self.alphabet = tuple(sorted(set(self.symbols[a] for a in base.alphabet)))
            size = max(base.alphabet) + 1
            self._lut = np.array([self.symbols.get(a, 0) for a in range(size)], dtype=np.int8)

    def locate(self, n):
        return tuple(o + sum(ni * c[j] for ni, c in zip(n, self.columns)) for j, o in enumerate(self.offset))

    def values(self, points):
        pts = np.asarray(points, dtype=np.int64).reshape(-1, self.dim)
        base_pts = pts @ self._mat.T + np.array(self.offset, dtype=np.int64)
        vals = np.asarray(self.base.values(base_pts))
        if self._lut is None:
            return vals
        return self._lut[vals.astype(np.int64)]


def pi_symbol(a):
    return 0 if a == 0 else a - 1


# pairs


class AsymptoticPair:
    """Two configurations that differ exactly on a finite difference set."""

    def __init__(self, x, y, difference_set, certified=False, slope=None, note=None):
        if x.dim != y.dim or difference_set.dim != x.dim:
            raise ValueError("x, y and the difference set must share a dimension")
        self.x = x
        self.y = y
        self.difference_set = difference_set
        self.certified = certified
        self.slope = slope
        self.note = note

    @property
    def dim(self):
        return self.x.dim

    @property
    def alphabet(self):
        return tuple(sorted(set(self.x.alphabet) | set(self.y.alphabet)))

    def swapped(self):
        return AsymptoticPair(self.y, self.x, self.difference_set, self.certified, self.slope, self.note)

    def watermark(self):
        marks = []
        if self.slope is not None and self.slope.certificate.status == "asserted":
            marks.append("slope independence asserted")
        if not self.certified:
            marks.append("difference set declared")
        return marks

    def observed_difference(self, lo, hi):
        """Cells of the box [lo, hi] where x and y differ."""
        gx = self.x.window(lo, hi)
        gy = self.y.window(lo, hi)
        return Support([tuple(int(c) for c in add(tuple(p), lo)) for p in np.argwhere(gx != gy)], self.dim)

    def spot_check(self, margin=3):
        """Compare the declared difference set with x != y near it."""
        lo, hi = self.difference_set.bounds() if len(self.difference_set) else ((0,) * self.dim, (0,) * self.dim)
        lo = tuple(c - margin for c in lo)
        hi = tuple(c + margin for c in hi)
        inside = Support([p for p in self.difference_set], self.dim)
        return self.observed_difference(lo, hi) == inside


def sturmian_difference_set(alpha, intercept=0):
    """Exact set of n with n.alpha + rho on a window endpoint modulo 1."""
    alpha = alpha if isinstance(alpha, SlopeVector) else SlopeVector(alpha)
    rho = SurdReal.coerce(intercept)
    d = alpha.dim
    vectors = list(alpha.entries) + [SurdReal(1)]
    out = []
    for e in [SurdReal(0)] + [1 - a for a in alpha.entries]:
        sol = solve_combination(vectors, e - rho)
        if sol is None:
            continue
        if all(c.denominator == 1 for c in sol):
            n = tuple(int(c) for c in sol[:d])
            if dot(n, alpha.entries) + rho - e == SurdReal(-int(sol[d])):
                out.append(n)
    return Support(out, d)


def sturmian_pair(alpha, intercept=0):
    """(s_{alpha,rho}, s'_{alpha,rho}) with its exactly computed difference set."""
    alpha = alpha if isinstance(alpha, SlopeVector) else SlopeVector(alpha)
    if not alpha.usable():
        raise ValueError("slope is not totally irrational: " + alpha.certificate.describe())
    x = SturmianConfig(alpha, intercept, LOWER)
    y = SturmianConfig(alpha, intercept, UPPER)
    F = sturmian_difference_set(alpha, intercept)
    return AsymptoticPair(x, y, F, certified=alpha.certificate.status == "proven", slope=alpha)


def transport(pair, A, symbols=None):
    """(tau o x o A, tau o y o A) with difference set A^-1(F)."""
    x = PullbackConfig(pair.x, A.translation, _columns(A), symbols)
    y = PullbackConfig(pair.y, A.translation, _columns(A), symbols)
    F = apply_affine(A.inverse(), pair.difference_set)
    return AsymptoticPair(x, y, F, pair.certified, pair.slope, pair.note)


def _columns(A):
    return [tuple(A.matrix[i][j] for i in range(A.dim)) for j in range(A.dim)]


# occurrences


def _near_values(pair, S):
    """Anchors u in F - S with the patches of x and y read at u + S."""
    U = minkowski_diff(pair.difference_set, S)
    if len(U) == 0 or len(S) == 0:
        return U, [], []
    u_arr = U.array()
    pts = (u_arr[:, None, :] + S.array()[None, :, :]).reshape(-1, pair.dim)
    vx = np.asarray(pair.x.values(pts)).reshape(len(U), len(S)).tolist()
    vy = np.asarray(pair.y.values(pts)).reshape(len(U), len(S)).tolist()
    return U, [tuple(r) for r in vx], [tuple(r) for r in vy]


@dataclass
class OccurrenceSets:
    near_x: frozenset
    near_y: frozenset

    @property
    def only_x(self):
        """occ_p(x) minus occ_p(y), which lies inside F - S."""
        return self.near_x - self.near_y

    @property
    def only_y(self):
        return self.near_y - self.near_x


def occurrence_sets_near_F(pair, p):
    S = p.support
    if len(S) == 0:
        return OccurrenceSets(frozenset(), frozenset())
    U, vx, vy = _near_values(pair, S)
    ox = frozenset(u for u, r in zip(U, vx) if r == p.values)
    oy = frozenset(u for u, r in zip(U, vy) if r == p.values)
    return OccurrenceSets(ox, oy)


def delta_p(pair, p):
    """sum over u in F - S of [y matches p at u] - [x matches p at u]."""
    occ = occurrence_sets_near_F(pair, p)
    return len(occ.near_y) - len(occ.near_x)


@dataclass
class PatternRecord:
    support: Support
    pattern: Patch
    delta: int
    occ_x: tuple
    occ_y: tuple

    @property
    def singleton(self):
        ox, oy = set(self.occ_x), set(self.occ_y)
        return len(ox - oy) == 1 and len(oy - ox) == 1

    def as_row(self):
        return {
            "support": ";".join(",".join(map(str, p)) for p in self.support),
            "pattern": self.pattern.key(),
            "delta": self.delta,
            "occ_x": ";".join(",".join(map(str, u)) for u in self.occ_x),
            "occ_y": ";".join(",".join(map(str, u)) for u in self.occ_y),
        }


@dataclass
class VerificationReport:
    scope: str
    records: list
    verdict: str
    witness: object = None
    watermark: list = field(default_factory=list)
    clauses: dict = field(default_factory=dict)
    supports_checked: int = 0

    @property
    def passed(self):
        return self.verdict == "pass"

    def summary(self):
        lines = [f"scope: {self.scope}", f"supports checked: {self.supports_checked}",
                 f"patterns checked: {len(self.records)}"]
        for name, (ok, detail) in self.clauses.items():
            lines.append(f"{name}: {'holds' if ok else 'fails'}" + (f" ({detail})" if detail else ""))
        lines.append(f"verdict: {self.verdict}")
        if self.witness is not None:
            lines.append("witness support: " + " ".join(str(p) for p in self.witness.pattern.support))
            lines.append("witness pattern: " + self.witness.pattern.key()
                         + f"  delta={self.witness.delta}")
        for w in self.watermark:
            lines.append(f"note: {w}")
        return "\n".join(lines)


def supports_for(d, max_size, mode):
    if mode == "connected":
        return list(enumerate_connected_supports(d, max_size, guard=max(max_size, 1)))
    if mode == "boxes":
        out = []
        for m in product(range(1, max_size + 1), repeat=d):
            if int(np.prod(m)) <= max_size:
                out.append(box(m))
        return out
    raise ValueError(f"unknown support mode {mode!r}")


def pattern_records(pair, S):
    U, vx, vy = _near_values(pair, S)
    pats = sorted(set(vx) | set(vy))
    out = []
    for vals in pats:
        ox = tuple(u for u, r in zip(U, vx) if r == vals)
        oy = tuple(u for u, r in zip(U, vy) if r == vals)
        out.append(PatternRecord(S, Patch(S, vals), len(oy) - len(ox), ox, oy))
    return out


def verify_indistinguishable(pair, max_support_size, mode="connected", guard=None, language_source=None):
    """Check Delta_p = 0 for every pattern seen near F over every enumerated
    support.  Patterns never seen at F - S have Delta_p = 0 by definition."""
    guard = default_guard(pair.dim) if guard is None else guard
    if max_support_size > guard:
        raise GuardExceeded(f"support size {max_support_size} exceeds guard {guard}")
    supports = supports_for(pair.dim, max_support_size, mode)
    records = []
    witness = None
    singleton_ok, complexity_ok = True, True
    singleton_detail, complexity_detail = "", ""
    for S in supports:
        recs = pattern_records(pair, S)
        records.extend(recs)
        for r in recs:
            if r.delta != 0 and witness is None:
                witness = r
            if not r.singleton and singleton_ok:
                singleton_ok = False
                singleton_detail = f"pattern {r.pattern.key()} on {list(S)}"
        if language_source is not None:
            L = language_source.language(S)
            seen = {r.pattern for r in recs}
            nFS = len(minkowski_diff(pair.difference_set, S))
            if not L <= seen and singleton_ok:
                singleton_ok = False
                singleton_detail = f"a pattern on {list(S)} never meets F - S"
            if len(L) != nFS and complexity_ok:
                complexity_ok = False
                complexity_detail = f"|L_S| = {len(L)} but |F - S| = {nFS} on {list(S)}"
    clauses = {"occurrence singletons": (singleton_ok, singleton_detail),
               "occurrence balance": (witness is None, "")}
    if language_source is not None:
        grade = f"[{language_source.grade}]" if language_source.grade else ""
        clauses["complexity |L_S| = |F - S|"] = (complexity_ok, " ".join(filter(None, (complexity_detail, grade))))
    marks = pair.watermark()
    if language_source is not None and language_source.grade != "exact":
        marks.append(f"language source: {language_source.grade}")
    scope = f"{mode} supports with |S| <= {max_support_size} in dimension {pair.dim}"
    return VerificationReport(scope, records, "pass" if witness is None else "fail", witness, marks, clauses,
                              len(supports))


# flip conditions


@dataclass
class FlipCheck:
    ok: bool
    diagnosis: str

    def __bool__(self):
        return self.ok


def _values_on(pair, F):
    xs = {p: pair.x(p) for p in F}
    ys = {p: pair.y(p) for p in F}
    return xs, ys


def check_flip(pair):
    d = pair.dim
    F = pair.difference_set
    if F != canonical_difference_set(d):
        return FlipCheck(False, "difference set is not {0, -e_1, ..., -e_d}")
    xs, ys = _values_on(pair, F)
    if sorted(xs.values()) != list(range(d + 1)):
        return FlipCheck(False, "x restricted to F is not a bijection onto {0, ..., d}")
    if xs[zero(d)] != 0:
        return FlipCheck(False, "x at the origin is not 0")
    for p in F:
        if ys[p] != (xs[p] - 1) % (d + 1):
            return FlipCheck(False, f"y at {p} is not x - 1 mod {d + 1}")
    return FlipCheck(True, "flip condition holds")


def check_ordered_flip(pair):
    base = check_flip(pair)
    if not base:
        return base
    d = pair.dim
    for i in range(1, d + 1):
        p = unit(d, i, -1)
        if pair.x(p) != i:
            return FlipCheck(False, f"x at -e_{i} is not {i}")
        if pair.y(p) != i - 1:
            return FlipCheck(False, f"y at -e_{i} is not {i - 1}")
    return FlipCheck(True, "ordered flip condition holds")


def _basis_anchor(F, d):
    for m in F:
        vecs = [sub(f, m) for f in F if f != m]
        if abs(determinant(vecs)) == 1:
            return m
    return None


def symbol_cycle(pair):
    """The map x_n -> y_n on F as a dict, or None when not a permutation."""
    xs, ys = _values_on(pair, pair.difference_set)
    perm = {}
    for p in pair.difference_set:
        perm[xs[p]] = ys[p]
    if len(perm) != len(xs) or sorted(perm.values()) != sorted(perm):
        return None
    return perm


def _is_single_cycle(perm):
    if not perm:
        return False
    start = next(iter(perm))
    seen, cur = 0, start
    while True:
        cur = perm[cur]
        seen += 1
        if cur == start:
            break
    return seen == len(perm)


def check_affine_flip(pair):
    d = pair.dim
    F = pair.difference_set
    if len(F) != d + 1:
        return FlipCheck(False, f"|F| = {len(F)} is not d + 1 = {d + 1}")
    if _basis_anchor(F, d) is None:
        return FlipCheck(False, "no m in F makes (F - m) minus {0} a basis of Z^d")
    xs, ys = _values_on(pair, F)
    sigma = set(pair.alphabet)
    if len(set(xs.values())) != d + 1 or set(xs.values()) != sigma:
        return FlipCheck(False, "x restricted to F is not a bijection onto the alphabet")
    perm = symbol_cycle(pair)
    if perm is None or not _is_single_cycle(perm):
        return FlipCheck(False, "x_n -> y_n on F is not a cyclic permutation of the alphabet")
    return FlipCheck(True, "affine flip condition holds")


@dataclass
class Normalization:
    affine: AffineMap
    symbols: dict
    pair: AsymptoticPair


def normalize_affine(pair):
    """Find A and tau so that (tau^-1 o x o A^-1, tau^-1 o y o A^-1) satisfies
    the ordered flip condition.

    With c the cycle x_n -> y_n, tau(k) = c^-k(x_m) where m is the point of F
    carrying the least symbol, f_i is the point with tau^-1(x_{f_i}) = i, and
    A(n) = B^-1 (n - m) where B has columns m - f_i.
    """
    chk = check_affine_flip(pair)
    if not chk:
        raise ValueError("affine flip condition fails: " + chk.diagnosis)
    d = pair.dim
    F = pair.difference_set
    xs, _ = _values_on(pair, F)
    cyc = symbol_cycle(pair)
    inv = {v: k for k, v in cyc.items()}
    m = min(F, key=lambda p: (xs[p], p))
    tau = {0: xs[m]}
    for k in range(1, d + 1):
        tau[k] = inv[tau[k - 1]]
    tau_inv = {v: k for k, v in tau.items()}
    where = {tau_inv[xs[p]]: p for p in F}
    cols = [sub(m, where[i]) for i in range(1, d + 1)]
    B = [[cols[j][i] for j in range(d)] for i in range(d)]
    A_inv = AffineMap(B, m)
    A = A_inv.inverse()
    x = PullbackConfig(pair.x, m, cols, tau_inv)
    y = PullbackConfig(pair.y, m, cols, tau_inv)
    newF = apply_affine(A, F)
    out = AsymptoticPair(x, y, newF, pair.certified, pair.slope, pair.note)
    return Normalization(A, tau, out)


# projection and restriction


def project_pi(obj):
    """Apply 0 -> 0, j -> j - 1 cellwise to a configuration or a pair."""
    if isinstance(obj, AsymptoticPair):
        px, py = project_pi(obj.x), project_pi(obj.y)
        F = obj.difference_set
        keep = [p for p in F if px(p) != py(p)]
        return AsymptoticPair(px, py, Support(keep, obj.dim), obj.certified, obj.slope, obj.note)
    d = obj.dim
    if d < 2:
        raise ValueError("projection needs d >= 2")
    if tuple(obj.alphabet) != tuple(range(d + 1)):
        raise ValueError("projection needs the alphabet {0, ..., d}")
    return PullbackConfig(obj, symbols={a: pi_symbol(a) for a in range(d + 1)})


def restrict_sublattice(config, v, B):
    """n -> config(v + sum n_i b_i) as a configuration over Z^k."""
    B = [tuple(b) for b in B]
    if not B or rational_rank(B) != len(B):
        raise ValueError("restriction vectors must be linearly independent")
    return PullbackConfig(config, v, B)


def orthogonal_e1(d):
    return [unit(d, i) for i in range(2, d + 1)]


def restrict_pair(pair, v, B):
    B = [tuple(b) for b in B]
    x = restrict_sublattice(pair.x, v, B)
    y = restrict_sublattice(pair.y, v, B)
    pts = []
    for f in pair.difference_set:
        target = sub(f, v)
        sol = _integer_coords(B, target)
        if sol is not None:
            pts.append(sol)
    return AsymptoticPair(x, y, Support(pts, len(B)), pair.certified, pair.slope, pair.note)


def _integer_coords(B, target):
    k, d = len(B), len(target)
    aug = [[Fraction(B[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(d)]
    r = 0
    piv = []
    for c in range(k):
        p = next((i for i in range(r, d) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(d):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, d)):
        return None
    sol = [aug[i][k] for i in range(r)]
    if any(s.denominator != 1 for s in sol):
        return None
    return tuple(int(s) for s in sol)


def reduce_dimension(pair):
    """Project with pi, then restrict to the hyperplane spanned by e_2..e_d."""
    return restrict_pair(project_pi(pair), zero(pair.dim), orthogonal_e1(pair.dim))


# finite-scale experiments


def detect_shift_relation(pair, search_radius, window=None):
    """Some v with y = sigma^v(x) on the test window, nearest first.

    Finite-window heuristic; not a proof that x and y share an orbit.
    """
    d = pair.dim
    if window is None:
        if len(pair.difference_set):
            lo, hi = pair.difference_set.bounds()
        else:
            lo, hi = zero(d), zero(d)
        pad = search_radius + 8
        window = (tuple(c - pad for c in lo), tuple(c + pad for c in hi))
    lo, hi = window
    gy = pair.y.window(lo, hi)
    cands = sorted(product(range(-search_radius, search_radius + 1), repeat=d),
                   key=lambda v: (max(abs(c) for c in v), sum(abs(c) for c in v), v))
    for v in cands:
        gx = pair.x.window(add(lo, v), add(hi, v))
        if np.array_equal(gx, gy):
            return tuple(v)
    return None


@dataclass
class EtaleReport:
    stabilization_index: object
    limit_x: object
    limit_y: object
    uniform_difference_set: object
    difference_sets: list
    limit_difference: object
    watermark: str = FINITE_EVIDENCE
    framing: str = "stabilization index: first index after which window patches and difference sets stay constant"

    @property
    def stabilized(self):
        return self.stabilization_index is not None


def etale_consistency(pairs, window):
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty sequence")
    d = pairs[0].dim
    if any(p.dim != d for p in pairs):
        raise ValueError("pairs must share a dimension")
    lo, hi = window
    gx = [p.x.window(lo, hi) for p in pairs]
    gy = [p.y.window(lo, hi) for p in pairs]
    Fs = [p.difference_set for p in pairs]
    last = len(pairs) - 1
    k = last
    while k > 0 and np.array_equal(gx[k - 1], gx[last]) and np.array_equal(gy[k - 1], gy[last]) \
            and Fs[k - 1] == Fs[last]:
        k -= 1
    if len(pairs) > 1 and k == last:
        return EtaleReport(None, None, None, None, Fs, None)
    F = Fs[last]
    inside = all(all(l < c < h for c, l, h in zip(p, lo, hi)) for p in F)
    limit_diff = Support([tuple(int(c) + l for c, l in zip(q, lo)) for q in np.argwhere(gx[last] != gy[last])], d)
    return EtaleReport(k, gx[last], gy[last], F if inside else None, Fs, limit_diff)
