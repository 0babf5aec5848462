"""Exact arithmetic on Q-linear combinations of square roots.

A SurdReal is a0 + sum(a_k * sqrt(k)) with rational coefficients and
distinct square-free radicands k >= 2.  Equality is decided on the
normalized representation; order and floor are decided by interval
refinement with a doubling precision ladder.
"""

import math
import os
import re
from fractions import Fraction
from functools import lru_cache

PRECISION_START = 64
PRECISION_CAP_DEFAULT = 16384
PRECISION_ENV = "STURMPAIR_PRECISION_CAP"


class PrecisionCapExceeded(ArithmeticError):
    pass


class SurdParseError(ValueError):
    pass


def precision_cap():
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return PRECISION_CAP_DEFAULT
    return max(PRECISION_START, int(raw))


@lru_cache(maxsize=None)
def squarefree_split(n):
    """Return (s, k) with n = s*s*k and k square-free."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, k, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            k *= p
        p += 1
    return s, k * n


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} as an exact rational")


class SurdReal:
    """Immutable exact real in the surd class."""

    __slots__ = ("rational", "terms", "_hash")

    def __init__(self, rational=0, terms=None):
        self.rational = _as_fraction(rational)
        acc = {}
        for k, c in (terms or {}).items():
            c = _as_fraction(c)
            s, kk = squarefree_split(int(k))
            if kk == 1:
                self.rational += c * s
                continue
            acc[kk] = acc.get(kk, Fraction(0)) + c * s
        self.terms = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
        self._hash = hash((self.rational, self.terms))

    @classmethod
    def sqrt(cls, n, coeff=1):
        return cls(0, {n: coeff})

    @classmethod
    def coerce(cls, v):
        if isinstance(v, SurdReal):
            return v
        return cls(_as_fraction(v))

    # representation

    def is_rational(self):
        return not self.terms

    def is_zero(self):
        return not self.terms and self.rational == 0

    def radicands(self):
        return tuple(k for k, _ in self.terms)

    def coefficient(self, k):
        if k == 1:
            return self.rational
        for kk, c in self.terms:
            if kk == k:
                return c
        return Fraction(0)

    def __repr__(self):
        return f"SurdReal({format_surd(self)!r})"

    def __str__(self):
        return format_surd(self)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SurdReal(other)
        if not isinstance(other, SurdReal):
            return NotImplemented
        return self.rational == other.rational and self.terms == other.terms

    # arithmetic

    def __add__(self, other):
        other = SurdReal.coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms:
            terms[k] = terms.get(k, 0) + c
        return SurdReal(self.rational + other.rational, terms)

    __radd__ = __add__

    def __neg__(self):
        return SurdReal(-self.rational, {k: -c for k, c in self.terms})

    def __sub__(self, other):
        return self + (-SurdReal.coerce(other))

    def __rsub__(self, other):
        return SurdReal.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return SurdReal(self.rational * other, {k: c * other for k, c in self.terms})
        if not isinstance(other, SurdReal):
            return NotImplemented
        a = [(1, self.rational)] + list(self.terms)
        b = [(1, other.rational)] + list(other.terms)
        rat = Fraction(0)
        terms = {}
        for k1, c1 in a:
            for k2, c2 in b:
                if c1 == 0 or c2 == 0:
                    continue
                # sqrt(k1*k2) = g*sqrt(k1*k2/g^2) with g = gcd(k1, k2)
                g = math.gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                c = c1 * c2 * g
                if k == 1:
                    rat += c
                else:
                    terms[k] = terms.get(k, 0) + c
        return SurdReal(rat, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SurdReal):
            if not other.is_rational():
                raise ZeroDivisionError("division by an irrational surd is not supported")
            other = other.rational
        other = _as_fraction(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    # evaluation

    def enclosure(self, bits):
        """Rational bounds (lo, hi) with lo <= self <= hi and width O(2^-bits)."""
        scale = 1 << bits
        lo = hi = self.rational
        for k, c in self.terms:
            s = math.isqrt(k * scale * scale)
            a, b = Fraction(s, scale), Fraction(s + 1, scale)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def sign(self):
        if not self.terms:
            return (self.rational > 0) - (self.rational < 0)
        bits, cap = PRECISION_START, precision_cap()
        while bits <= cap:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise PrecisionCapExceeded(f"sign of {self} undecided at {cap} bits")

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def fixed_floor(self, bits):
        """Exact floor(self * 2**bits)."""
        return floor_of(self * (1 << bits))


def compare(x, y):
    """Exact trichotomy: -1, 0 or 1 as x <, =, > y."""
    return (SurdReal.coerce(x) - SurdReal.coerce(y)).sign()


def floor_of(x):
    x = SurdReal.coerce(x)
    if not x.terms:
        return math.floor(x.rational)
    bits, cap = PRECISION_START, precision_cap()
    while bits <= cap:
        lo, hi = x.enclosure(bits)
        f = math.floor(lo)
        if f == math.floor(hi):
            return f
        bits *= 2
    raise PrecisionCapExceeded(f"floor of {x} undecided at {cap} bits")


def ceil_of(x):
    return -floor_of(-SurdReal.coerce(x))


def frac_mod_1(x):
    x = SurdReal.coerce(x)
    return x - floor_of(x)


def dot(n, alpha):
    total = SurdReal(0)
    for ni, ai in zip(n, alpha):
        if ni:
            total = total + ai * ni
    return total


def star_map(n, alpha):
    """n -> n.alpha mod 1."""
    entries = alpha.entries if isinstance(alpha, SlopeVector) else tuple(alpha)
    if len(n) != len(entries):
        raise ValueError(f"dimension mismatch: point has {len(n)} coords, slope has {len(entries)}")
    return frac_mod_1(dot(n, entries))


# linear algebra over Q


def coefficient_matrix(values):
    """Rows of rational coordinates of each value in the basis {1} + {sqrt(k)}."""
    radicands = sorted({k for v in values for k in v.radicands()})
    basis = [1] + radicands
    return basis, [[v.coefficient(k) for k in basis] for v in values]


def left_kernel(rows):
    """A nonzero rational vector c with sum c_i rows_i = 0, or None."""
    n = len(rows)
    if n == 0:
        return None
    m = len(rows[0])
    # reduce the transpose augmented with the identity to track combinations
    aug = [list(rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivot_row = 0
    for col in range(m):
        piv = next((r for r in range(pivot_row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[pivot_row], aug[piv] = aug[piv], aug[pivot_row]
        p = aug[pivot_row][col]
        for r in range(n):
            if r != pivot_row and aug[r][col] != 0:
                f = aug[r][col] / p
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[pivot_row])]
        pivot_row += 1
    for r in range(pivot_row, n):
        if all(v == 0 for v in aug[r][:m]):
            return aug[r][m:]
    return None


def integer_relation(coeffs):
    """Scale a rational vector to coprime integers with a positive leading term."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


class IrrationalityCertificate:
    """Outcome of the total irrationality test.

    status is "proven", "refuted" or "asserted".  For "refuted", relation is
    an integer vector (c0, c1, ..., cd) with c0 + sum ci*alpha_i = 0.
    """

    def __init__(self, status, relation=None):
        self.status = status
        self.relation = relation

    def __bool__(self):
        return self.status == "proven"

    def __repr__(self):
        if self.relation is None:
            return f"IrrationalityCertificate({self.status!r})"
        return f"IrrationalityCertificate({self.status!r}, relation={self.relation})"

    def describe(self, entries=None):
        if self.status != "refuted":
            return self.status
        parts = []
        for i, c in enumerate(self.relation):
            if c == 0:
                continue
            name = "1" if i == 0 else f"alpha{i}"
            parts.append(f"{c}*{name}")
        return "refuted: " + " + ".join(parts) + " = 0"


def is_totally_irrational(alpha):
    entries = alpha.entries if isinstance(alpha, SlopeVector) else tuple(SurdReal.coerce(a) for a in alpha)
    _, rows = coefficient_matrix([SurdReal(1)] + list(entries))
    kernel = left_kernel(rows)
    if kernel is None:
        return IrrationalityCertificate("proven")
    return IrrationalityCertificate("refuted", integer_relation(kernel))


def relation_value(relation, alpha):
    entries = alpha.entries if isinstance(alpha, SlopeVector) else tuple(alpha)
    total = SurdReal(relation[0])
    for c, a in zip(relation[1:], entries):
        total = total + a * c
    return total


class SlopeVector:
    """Slope (alpha_1, ..., alpha_d) with its irrationality certificate."""

    def __init__(self, entries, assume_irrational=False):
        self.entries = tuple(SurdReal.coerce(a) for a in entries)
        if not self.entries:
            raise ValueError("slope must have at least one entry")
        for a in self.entries:
            if a.sign() < 0 or compare(a, 1) >= 0:
                raise ValueError(f"slope entry {a} outside [0,1)")
        cert = is_totally_irrational(self.entries)
        if not cert and assume_irrational:
            cert = IrrationalityCertificate("asserted", cert.relation)
        self.certificate = cert

    @property
    def dim(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, SlopeVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "SlopeVector(" + ", ".join(str(a) for a in self.entries) + ")"

    def usable(self):
        return self.certificate.status in ("proven", "asserted")

    def is_descending(self):
        return all(compare(a, b) > 0 for a, b in zip(self.entries, self.entries[1:]))

    def floats(self):
        return [float(a) for a in self.entries]


# parsing and formatting

_TOKEN = re.compile(r"\s*(sqrt|\d+|[-+*/(),])")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SurdParseError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise SurdParseError(f"expected {expected or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_rational():
                    raise SurdParseError("only division by rationals is supported")
                if rhs.rational == 0:
                    raise SurdParseError("division by zero")
                val = val / rhs.rational
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "sqrt":
            self.take()
            self.take("(")
            arg = self.expr()
            self.take(")")
            if not arg.is_rational() or arg.rational.denominator != 1 or arg.rational < 0:
                raise SurdParseError("sqrt takes a non-negative integer")
            n = int(arg.rational)
            if n == 0:
                return SurdReal(0)
            return SurdReal.sqrt(n)
        if tok is not None and tok.isdigit():
            self.take()
            return SurdReal(int(tok))
        raise SurdParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_surd(text):
    """Parse a literal such as '-4 + 1*sqrt(19)' or '(sqrt(5)-1)/2'."""
    p = _Parser(text)
    if not p.toks:
        raise SurdParseError("empty surd literal")
    val = p.expr()
    if p.peek() is not None:
        raise SurdParseError(f"trailing input in {text!r}")
    return val


def split_top_level(text, sep=","):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_slope(text, assume_irrational=False):
    return SlopeVector([parse_surd(p) for p in split_top_level(text)], assume_irrational)


def _format_fraction(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_surd(x):
    """Canonical literal, re-parseable by parse_surd."""
    parts = []
    if x.rational != 0 or not x.terms:
        parts.append(_format_fraction(x.rational))
    for k, c in x.terms:
        parts.append(f"{_format_fraction(c)}*sqrt({k})")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def solve_combination(vectors, target):
    """Rational c with sum c_i * vectors_i = target, or None.

    The solution is unique whenever the vectors are Q-linearly independent.
    """
    vals = [SurdReal.coerce(v) for v in vectors]
    target = SurdReal.coerce(target)
    basis, rows = coefficient_matrix(vals + [target])
    n = len(vals)
    m = len(basis)
    # augmented system: one equation per basis element
    aug = [[rows[j][i] for j in range(n)] + [rows[n][i]] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][c]
        aug[r] = [v / p for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][n] != 0 for i in range(r, m)):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][n]
    return sol
