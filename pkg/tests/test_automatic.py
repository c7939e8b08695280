import random

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.automatic import (
    DFAO,
    LinearRepresentation,
    becker_automatize_mod_p,
    cartier_orbit_dfao,
    eventual_periodicity,
    kernel_closure,
    periodic_from,
    representation_product,
    unit_product_automatize,
    unit_product_root_of_unity,
)
from mahlerkit.corpus import thue_morse_dfao
from mahlerkit.cyclotomic import reversed_cyclotomic
from mahlerkit.decompose import infinite_product
from mahlerkit.equation import MahlerEquation, solve_series
from mahlerkit.errors import BaseMismatch, PurelyPeriodicOrbit
from mahlerkit.fields import GF, QQ
from mahlerkit.poly import Polynomial
from mahlerkit.series import TruncatedSeries, cartier_section, series_invert

F2, F5 = GF(2), GF(5)


def becker(field, k, *B):
    """G(x) = sum B_i(x) G(x^(k^i)), stored as G - sum B_i G(x^(k^i)) = 0."""
    return MahlerEquation(field, k, (Polynomial.one(field),) + tuple(-Polynomial(field, list(b)) for b in B))


def ints(seq):
    return [int(v) for v in seq]


# DFAO evaluation


@pytest.mark.parametrize("n,value", [(7, 1), (0, 0), (3, 0), (13, 1), (12, 0)])
def test_thue_morse_eval(n, value):
    assert thue_morse_dfao().eval(n) == value


def test_dfao_text_round_trip():
    A = thue_morse_dfao()
    assert DFAO.loads(A.dumps()) == A


def test_reverse_round_trip():
    A = becker_automatize_mod_p(becker(F5, 2, [1, 3, 2]), 1, validate=0)
    R = A.reverse()
    assert R.digit_order == "lsb"
    assert [R(n) for n in range(300)] == A.sequence(300)


# kernel closure


def test_kernel_closure_thue_morse():
    rep = LinearRepresentation(F2, 2, [0, 1], [[[1, 0], [0, 1]], [[1, 0], [1, 1]]], [1, 0])
    A = kernel_closure(rep)
    assert A.states == 2
    assert ints(A.sequence(1024)) == thue_morse_dfao().sequence(1024)


def test_kernel_closure_zero():
    rep = LinearRepresentation(F5, 2, [0], [[[1]], [[1]]], [1])
    A = kernel_closure(rep)
    assert A.states == 1 and A.outputs[0] == 0


def test_kernel_closure_powers_of_three():
    rep = LinearRepresentation(F5, 2, [1], [[[3]], [[3]]], [1])
    A = kernel_closure(rep)
    assert A.states == 4
    assert [int(A(n)) for n in range(1, 40)] == [pow(3, n.bit_length(), 5) for n in range(1, 40)]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]), st.sampled_from([2, 3, 5]), st.integers(1, 3))
def test_kernel_closure_agrees_with_representation(seed, k, p, r):
    rng = random.Random(seed)
    F = GF(p)
    mats = [[[rng.randrange(p) for _ in range(r)] for _ in range(r)] for _ in range(k)]
    rep = LinearRepresentation(F, k, [rng.randrange(p) for _ in range(r)], mats, [rng.randrange(p) for _ in range(r)])
    A = kernel_closure(rep)
    N = 2 ** 16 if k == 2 else 3 ** 10
    assert A.sequence(N) == rep.sequence(N)


# Becker automata


def test_becker_all_ones_is_constant():
    A = becker_automatize_mod_p(becker(F2, 2, [1, 1]), 1)
    assert A.states == 1 and A.outputs[0] == 1


def test_becker_worked_example_mod_5():
    eq = becker(F5, 2, [1, 3, 2])
    A = becker_automatize_mod_p(eq, 1, validate=2048)
    assert A.sequence(2048) == list(solve_series(eq, [1], 2048).coeffs)


def test_becker_constant_coefficients_collapse():
    # G(x) = G(x^2) + 0 G(x^4) forces G constant: output g0 at n = 0, zero elsewhere
    eq = becker(F5, 2, [1], [0, 0, 0])
    A = becker_automatize_mod_p(eq, 3)
    assert ints(A.sequence(64)) == [3] + [0] * 63
    assert A.states <= 2


@pytest.mark.parametrize("p", [3, 7, 11])
def test_becker_stern_product(p):
    eq = becker(GF(p), 2, [1, 1, 1])
    A = becker_automatize_mod_p(eq, 1, validate=2048)
    assert A.sequence(2048) == list(solve_series(eq, [1], 2048).coeffs)


def test_cartier_compatibility():
    eq = becker(F5, 2, [1, 3, 2])
    G = solve_series(eq, [1], 2048)
    A = cartier_orbit_dfao(eq, F5.one, Polynomial.one(F5))
    for b in range(2):
        section = cartier_section(G, 2, b)
        B = A.rerooted(A.transitions[A.initial][b])
        assert [B(n) for n in range(section.precision)] == list(section.coeffs)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3]), st.sampled_from([3, 5, 7]), st.lists(st.integers(0, 6), min_size=0, max_size=4))
def test_becker_automaton_matches_series(k, p, tail):
    F = GF(p)
    eq = becker(F, k, [1] + tail)
    A = becker_automatize_mod_p(eq, 1, validate=0)
    assert A.sequence(2048) == list(solve_series(eq, [1], 2048).coeffs)


# unit products


def test_unit_product_mod_5():
    up = unit_product_automatize(F5(2), 2)
    assert up.N == 2
    assert up.Q == Polynomial(F5, [1, -1]) * Polynomial(F5, [1, 0, -1])
    assert up.S == Polynomial(F5, [1, 3, 2])
    target = series_invert(infinite_product(Polynomial(F5, [1, -2]), 2, 2048))
    assert up.dfao.sequence(2048) == list(target.coeffs)


def test_unit_product_fixed_point():
    with pytest.raises(PurelyPeriodicOrbit):
        unit_product_automatize(F5(1), 2)


def test_unit_product_minus_one():
    up = unit_product_root_of_unity(2, 2)
    assert up.N == 1
    assert up.Q == Polynomial(QQ, [1, -1])
    assert up.S == Polynomial.one(QQ)


@pytest.mark.parametrize("p,a,k", [(5, 2, 2), (7, 3, 3), (11, 2, 2), (13, 5, 3), (7, 2, 2)])
def test_unit_product_identity(p, a, k):
    F = GF(p)
    try:
        up = unit_product_automatize(F(a), k, validate=512)
    except PurelyPeriodicOrbit:
        pytest.skip("a lies on a cycle of y -> y^k")
    lhs = up.Q.compose_power(k)
    rhs = Polynomial(F, [1, -a]) * up.S * up.Q
    assert lhs == rhs


@pytest.mark.parametrize("n,k", [(2, 2), (4, 2), (6, 2), (3, 3), (6, 3), (9, 3)])
def test_root_of_unity_product_identity(n, k):
    up = unit_product_root_of_unity(n, k)
    assert up.Q.compose_power(k) == reversed_cyclotomic(n) * up.S * up.Q


# products of representations


def ones(field, k=2):
    return LinearRepresentation(field, k, [1], [[[1]]] * k, [1])


def test_product_ones_times_ones():
    r = representation_product(ones(QQ), ones(QQ))
    seq = r.sequence(1024)
    assert seq == list(range(1, 1025)) and r(5) == 6


def test_product_with_zero():
    zero = LinearRepresentation(QQ, 2, [0], [[[1]]] * 2, [1])
    assert not any(representation_product(ones(QQ), zero).sequence(200))


def test_product_telescopes():
    r = representation_product(LinearRepresentation.from_polynomial(Polynomial(QQ, [1, -1]), 2), ones(QQ))
    assert r.sequence(300) == [1] + [0] * 299


def test_product_base_mismatch():
    with pytest.raises(BaseMismatch):
        representation_product(ones(QQ, 2), ones(QQ, 3))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_product_matches_series_multiplication(seed):
    rng = random.Random(seed)
    F = GF(7)
    reps = []
    for _ in range(2):
        r = rng.randint(1, 2)
        mats = [[[rng.randrange(7) for _ in range(r)] for _ in range(r)] for _ in range(2)]
        reps.append(LinearRepresentation(F, 2, [rng.randrange(7) for _ in range(r)], mats,
                                         [rng.randrange(7) for _ in range(r)]))
    N = 1024
    a, b = (TruncatedSeries(F, rep.sequence(N)) for rep in reps)
    assert representation_product(*reps).sequence(N) == list((a * b).coeffs)


def test_linrep_text_round_trip():
    rep = LinearRepresentation(F5, 2, [1, 2], [[[1, 0], [3, 4]], [[0, 1], [2, 2]]], [4, 1])
    assert LinearRepresentation.loads(rep.dumps()) == rep


# eventual periodicity


def mod_counter(m, outputs):
    """MSB base-2 DFAO for n -> outputs[n mod m]."""
    return DFAO(2, [[(2 * s) % m, (2 * s + 1) % m] for s in range(m)], outputs, 0)


def test_powers_of_three_mod_five_periodic():
    A = mod_counter(4, [pow(3, s, 5) for s in range(4)])
    v = eventual_periodicity(A)
    assert (v.periodic, v.preperiod, v.period) == (True, 0, 4)


def test_constant_periodic():
    v = eventual_periodicity(DFAO(3, [[0, 0, 0]], [7], 0))
    assert (v.periodic, v.preperiod, v.period) == (True, 0, 1)


def test_thue_morse_aperiodic():
    v = eventual_periodicity(thue_morse_dfao(), 64, 1024)
    assert not v.periodic
    assert str(v) == "aperiodic-up-to(m<=64, t<=1024)"


def test_preperiod_detected():
    # states 0..2 track n mod 3; state 3 is n = 0 and state 4 is n = 1, both output 5
    A = DFAO(2, [[0, 1], [2, 0], [1, 2], [3, 4], [2, 0]], [0, 1, 2, 5, 5], 3)
    assert A.sequence(64) == [5, 5] + [n % 3 for n in range(2, 64)]
    v = eventual_periodicity(A)
    assert (v.preperiod, v.period) == (2, 3)
    assert periodic_from(A, 3, 2) and not periodic_from(A, 3, 1)
