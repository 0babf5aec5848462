from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmpair.exactreal import (PRECISION_ENV, PrecisionCapExceeded, SlopeVector, SurdParseError, SurdReal, ceil_of,
                                 compare, floor_of, format_surd, frac_mod_1, is_totally_irrational, parse_slope, star_map,
                                 parse_surd, relation_value, solve_combination, squarefree_split)

getcontext().prec = 120


def _decimal(x):
    """Independent 120-digit evaluation of a surd."""
    total = Decimal(x.rational.numerator) / Decimal(x.rational.denominator)
    for k, c in x.terms:
        total += Decimal(c.numerator) / Decimal(c.denominator) * Decimal(k).sqrt()
    return total


def _decimal_floor(x):
    return int(_decimal(x).to_integral_value(rounding="ROUND_FLOOR"))


def test_parse_and_normal_form():
    assert parse_surd("sqrt(8)") == SurdReal(0, {2: 2})
    assert parse_surd("(sqrt(5)-1)/2") == SurdReal(Fraction(-1, 2), {5: Fraction(1, 2)})
    assert parse_surd("sqrt(2)*sqrt(2)") == SurdReal(2)
    assert parse_surd("1/2*sqrt(2)") == SurdReal(0, {2: Fraction(1, 2)})
    assert squarefree_split(72) == (6, 2)
    for bad in ["sqrt(", "sqrt(2", "1/0", "2**3", "sqrt(-2)"]:
        with pytest.raises((SurdParseError, ZeroDivisionError, ValueError)):
            parse_surd(bad)


def test_products_of_distinct_radicands():
    a = parse_surd("sqrt(2)+sqrt(3)")
    assert a * a == parse_surd("5+2*sqrt(6)")
    assert (parse_surd("sqrt(6)") * parse_surd("sqrt(10)")) == parse_surd("2*sqrt(15)")


def test_floor_examples():
    assert floor_of(parse_surd("3+sqrt(2)+sqrt(3)")) == 6
    assert frac_mod_1(parse_surd("3*(sqrt(2)-1)")) == parse_surd("-4+3*sqrt(2)")
    assert floor_of(parse_surd("-1/2*sqrt(2)")) == -1
    assert ceil_of(parse_surd("sqrt(4)")) == 2
    assert floor_of(Fraction(-7, 3)) == -3


def test_certificates():
    good = SlopeVector([parse_surd("sqrt(3)-1"), parse_surd("sqrt(2)-1")])
    assert good.certificate.status == "proven" and good.usable()
    rat = parse_slope("1/2,1/3")
    assert rat.certificate.status == "refuted"
    assert relation_value(rat.certificate.relation, rat).is_zero()
    cert = is_totally_irrational([parse_surd("1/2"), parse_surd("sqrt(2)-1")])
    assert cert.status == "refuted" and cert.relation == (1, -2, 0)
    cert = is_totally_irrational([parse_surd("sqrt(2)-1"), parse_surd("2-sqrt(2)")])
    assert cert.relation == (1, -1, -1)
    forced = parse_slope("1/2,1/3", assume_irrational=True)
    assert forced.certificate.status == "asserted" and forced.usable() and not forced.certificate
    assert is_totally_irrational([parse_surd("1/2*sqrt(2)"), parse_surd("sqrt(19)-4")]).status == "proven"
    with pytest.raises(ValueError):
        SlopeVector([parse_surd("sqrt(2)")])


def test_precision_cap(monkeypatch):
    tiny = SurdReal(1)
    step = parse_surd("sqrt(2)-1")
    for _ in range(60):
        tiny = tiny * step
    assert tiny.sign() == 1
    monkeypatch.setenv(PRECISION_ENV, "64")
    with pytest.raises(PrecisionCapExceeded):
        tiny.sign()


def test_solve_combination():
    a, b = parse_surd("sqrt(2)"), parse_surd("sqrt(3)")
    assert solve_combination([a, b, SurdReal(1)], parse_surd("2*sqrt(2)-sqrt(3)+5")) == [2, -1, 5]
    assert solve_combination([a, SurdReal(1)], b) is None


def test_format_round_trip():
    for text in ["sqrt(3)-1", "1/2*sqrt(2)", "-4+sqrt(19)", "3/7", "(sqrt(5)-1)/2"]:
        x = parse_surd(text)
        assert parse_surd(format_surd(x)) == x


radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 19])
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)
surds = st.builds(lambda r, t: SurdReal(r, dict(t)), rationals,
                  st.dictionaries(radicands, rationals.filter(lambda q: q != 0), max_size=3))


@settings(max_examples=200, deadline=None)
@given(surds)
def test_floor_matches_decimal_oracle(x):
    assert floor_of(x) == _decimal_floor(x)


@settings(max_examples=100, deadline=None)
@given(surds, surds)
def test_field_laws_and_order(x, y):
    assert (x + y) - y == x
    assert x * y == y * x
    dx, dy = _decimal(x), _decimal(y)
    if abs(dx - dy) > Decimal(10) ** -80:
        assert compare(x, y) == (1 if dx > dy else -1)
    assert float(x * y) == pytest.approx(float(dx * dy), rel=1e-9, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(surds, st.integers(-50, 50))
def test_floor_shift_and_frac_range(x, k):
    assert floor_of(x + k) == floor_of(x) + k
    f = frac_mod_1(x)
    assert f.sign() >= 0 and compare(f, 1) < 0


def test_worked_values():
    a = SlopeVector([parse_surd("sqrt(3)-1"), parse_surd("sqrt(2)-1")])
    assert star_map((1, 0), SlopeVector([parse_surd("sqrt(2)/2"), parse_surd("sqrt(19)-4")])) == parse_surd("sqrt(2)/2")
    assert star_map((1, 1), a) == parse_surd("sqrt(3)+sqrt(2)-3")
    assert abs(float(star_map((1, 1), a)) - 0.1463) < 1e-4
    assert star_map((0, 0), a).is_zero()
    assert frac_mod_1(Fraction(5, 2)) == Fraction(1, 2)
    assert frac_mod_1(parse_surd("3*sqrt(2)-3")) == parse_surd("3*sqrt(2)-4")
    assert floor_of(parse_surd("sqrt(2)/2")) == 0
    assert floor_of(parse_surd("sqrt(19)-4")) == 0
    assert floor_of(parse_surd("-sqrt(2)")) == -2
    assert compare(parse_surd("sqrt(3)-1"), parse_surd("sqrt(2)-1")) == 1
    assert compare(parse_surd("sqrt(2)/2"), parse_surd("sqrt(19)-4")) == 1
    assert compare(parse_surd("sqrt(8)"), parse_surd("2*sqrt(2)")) == 0
