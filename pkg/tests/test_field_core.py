from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.errors import FieldMismatch, ParseError, ZeroConstantTerm
from mahlerkit.fields import GF, QQ, Mod, parse_field
from mahlerkit.poly import Polynomial
from mahlerkit.ratfunc import RationalFunction
from mahlerkit.series import TruncatedSeries, cartier_section, series_invert, substitute_power


def S(*c, field=QQ):
    return TruncatedSeries(field, list(c))


def P(*c, field=QQ):
    return Polynomial(field, list(c))


# fields


def test_prime_field_least_residue():
    F = GF(7)
    assert F(-1) == F(6) and int(F(-1)) == 6
    assert F(3) * F(5) == F(1)
    assert F(3).inverse() == F(5)
    assert F(Fraction(1, 3)) == F(5)


def test_prime_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(5)(Mod(1, 7))
    with pytest.raises(FieldMismatch):
        QQ(Mod(1, 7))


def test_rationals_are_reduced():
    assert QQ("6/4") == QQ(Fraction(3, 2))
    assert str(QQ("-6/4")) == "-3/2"


@pytest.mark.parametrize("text,p", [("Q", None), ("F 5", 5), ("GF(7)", 7), ("F_11", 11)])
def test_parse_field(text, p):
    assert parse_field(text).p == p


def test_parse_field_rejects():
    with pytest.raises(ParseError):
        parse_field("R")


# polynomials


def test_polynomial_trims_and_zero():
    assert P(1, 2, 0, 0).coeffs == P(1, 2).coeffs
    assert P(0, 0).is_zero() and P().degree() == -1


def test_polynomial_arithmetic():
    a, b = P(1, 1), P(-1, 1)
    assert a * b == P(-1, 0, 1)
    q, r = divmod(P(-1, 0, 1), a)
    assert q == b and r.is_zero()
    assert P(-1, 0, 1).gcd(P(-1, 0, 0, 1)) == P(-1, 1).monic()


def test_polynomial_parse():
    assert Polynomial.parse(QQ, "1 -3 1/2") == P(1, -3, QQ("1/2"))
    assert Polynomial.parse(QQ, "1,-3") == P(1, -3)


def test_compose_power_and_cartier():
    f = P(1, 2, 3)
    assert f.compose_power(2) == P(1, 0, 2, 0, 3)
    assert f.compose_power(2).cartier(2, 0) == f
    assert P(0, 1).cartier(2, 1) == P(1)


def test_rational_function_normalization():
    R = RationalFunction(P(2, -2), P(2, -4, 2))
    assert R.denominator == P(1, -1)
    assert R.numerator == P(1)


# series


def test_substitute_power_monomial():
    F = substitute_power(S(1, 1), 3)
    assert F.precision == 6 and F.coeffs == S(1, 0, 0, 1, 0, 0).coeffs


def test_substitute_power_indicator():
    F = TruncatedSeries(QQ, [int(n in (1, 2, 4)) for n in range(8)])
    G = substitute_power(F, 2)
    assert G.precision == 16
    assert [i for i, c in enumerate(G.coeffs) if c] == [2, 4, 8]


def test_substitute_power_identity():
    F = S(1, 2, 3)
    assert substitute_power(F, 1) == F


def test_invert_geometric():
    assert list(series_invert(S(1, -1, 0, 0, 0)).coeffs) == [1] * 5


def test_invert_square():
    G = series_invert(TruncatedSeries(QQ, [1, -2, 1] + [0] * 7))
    assert list(G.coeffs) == list(range(1, 11))


def test_invert_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        series_invert(S(0, 1, 1))


def test_cartier_power_indicator():
    F = TruncatedSeries(QQ, [int(n > 0 and n & (n - 1) == 0) for n in range(64)])
    odd = cartier_section(F, 2, 1)
    assert odd.precision == 32 and list(odd.coeffs) == [1] + [0] * 31
    even = cartier_section(F, 2, 0)
    assert even.coeffs == F.coeffs[:32]


@pytest.mark.parametrize("k", [2, 3, 5])
def test_cartier_of_one(k):
    one = TruncatedSeries.one(QQ, 10)
    assert cartier_section(one, k, 0).coeffs[0] == 1
    for b in range(1, k):
        assert cartier_section(one, k, b).is_zero()


def test_series_text_round_trip():
    F = TruncatedSeries(GF(7), [1, 3, 2, 6])
    assert TruncatedSeries.loads(F.dumps()) == F
    G = TruncatedSeries(QQ, [QQ("1/2"), -3])
    assert TruncatedSeries.loads(G.dumps()) == G


def test_series_parse_errors():
    with pytest.raises(ParseError):
        TruncatedSeries.loads("SERIES\nfield: Q\nprecision: 3\n1\n2\n")


# properties

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))


def series_st(min_size=1, max_size=30):
    return st.lists(rationals, min_size=min_size, max_size=max_size).map(lambda c: TruncatedSeries(QQ, c))


@settings(max_examples=60, deadline=None)
@given(series_st(), st.integers(2, 5))
def test_reconstruction_identity(F, k):
    total = TruncatedSeries.zero(QQ, F.precision)
    for b in range(k):
        part = substitute_power(cartier_section(F, k, b), k).shift(b).truncate(F.precision)
        part = TruncatedSeries(QQ, list(part.coeffs) + [0] * (F.precision - part.precision))
        total = total + part
    assert total == F


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(), st.integers(2, 4), st.data())
def test_twisted_multiplicativity(F, G, k, data):
    b = data.draw(st.integers(0, k - 1))
    lhs = cartier_section(F * substitute_power(G, k), k, b)
    rhs = cartier_section(F, k, b) * G
    n = min(lhs.precision, rhs.precision)
    assert lhs.truncate(n) == rhs.truncate(n)


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=25).filter(lambda c: c[0] != 0))
def test_inverse_times_series_is_one(c):
    F = TruncatedSeries(QQ, c)
    assert F * series_invert(F) == TruncatedSeries.one(QQ, F.precision)


@settings(max_examples=60, deadline=None)
@given(series_st(max_size=10), st.integers(1, 4), st.integers(1, 4))
def test_substitute_power_composes(F, e1, e2):
    assert substitute_power(F, e1 * e2) == substitute_power(substitute_power(F, e1), e2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=20), st.sampled_from([2, 3, 5, 7, 13]))
def test_prime_field_inverse_matches_pow(c, p):
    c = [x if i else (x % p or 1) for i, x in enumerate(c)]
    F = TruncatedSeries(GF(p), c)
    assert list((F * series_invert(F)).coeffs) == [1] + [0] * (len(c) - 1)
