import random
import warnings

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.errors import FactorVanishes
from mahlerkit.fields import QQ
from mahlerkit.poly import Polynomial
from mahlerkit.verifiers import (
    GroupInstance,
    HypothesisUnmet,
    check_sum_inequality,
    companion_nilpotent,
    divergence_probe,
    equispaced,
    group_search,
    power_sum,
    product_growth,
    random_group_instance,
)


# product growth


def test_product_growth_half():
    # 1 / (0.5 * 0.75 * 0.9375 * 0.99609375 * ...), frozen from a 100-bit evaluation
    assert abs(product_growth([1, -1], 2, 0.5) - mpmath.mpf("2.855642702854816723")) < 1e-15


def test_product_growth_small_t():
    assert abs(product_growth([1, -1], 2, 0.01) - mpmath.mpf("1.0102020404060810")) < 1e-12


def test_product_growth_accepts_polynomials():
    P = Polynomial(QQ, [1, -1])
    assert product_growth(P, 2, 0.5) == product_growth([1, -1], 2, 0.5)


def test_product_growth_at_root_of_unity():
    # at x = -t the first factor is 1 + t, then every later argument is positive
    direct = 1 / ((1 + mpmath.mpf("0.5")) / product_growth([1, -1], 2, 0.25))
    assert abs(product_growth([1, -1], 2, 0.5, alpha=(1, 2)) - direct) < 1e-14


def test_product_growth_factor_vanishes():
    with pytest.raises(FactorVanishes):
        product_growth([1, -2], 2, 0.5)


def test_product_growth_requires_unit_constant():
    with pytest.raises(ValueError):
        product_growth([2, -1], 2, 0.5)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 0.95), st.sampled_from([2, 3, 5]))
def test_product_growth_exceeds_one(t, k):
    # every factor 1 - t^(k^j) lies in (0, 1)
    assert product_growth([1, -1], k, t) > 1


def test_divergence_probe():
    j, t, v = divergence_probe(2, 1, 1000)
    assert v > 1000 and t == 1 - mpmath.mpf(2) ** -j


# sum inequality


def test_sum_inequality_half():
    rep = check_sum_inequality(2, [0.5])
    t, lhs, rhs, margin = rep.rows[0]
    assert abs(lhs - mpmath.log(2)) < 1e-15
    assert abs(rhs - mpmath.mpf("0.408203125")) < 1e-4
    assert rep.holds


@pytest.mark.parametrize("k", [2, 3, 5])
def test_sum_inequality_grid(k):
    rep = check_sum_inequality(k, equispaced(200))
    assert len(rep.rows) == 200 and rep.holds and rep.min_margin > 0


def test_sum_inequality_rejects_bad_samples():
    with pytest.raises(ValueError):
        check_sum_inequality(2, [1.5])


def test_power_sum_small():
    assert abs(power_sum(mpmath.mpf("0.1"), 2) - mpmath.mpf("0.1101000100000001")) < 1e-16


# companion matrices


@pytest.mark.parametrize("row,expected", [((0, 0, 0), True), ((0, 1, 0), False), ((5,), False), ((0,), True)])
def test_companion_examples(row, expected):
    assert companion_nilpotent(row, len(row)) is expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5))
def test_companion_paths_agree(row):
    # companion_nilpotent raises if the first-row test and A^d = 0 disagree
    assert companion_nilpotent(row, len(row)) is (not any(row))


def test_companion_rejects_mismatched_size():
    with pytest.raises(ValueError):
        companion_nilpotent((1, 2), 3)


# group search


def test_group_search_example():
    w = group_search(GroupInstance((4, 9), ((1, 3), (2, 1))))
    assert w.element == (3, 4) and w.coefficients == (1, 1)


def test_group_search_cyclic():
    w = group_search(GroupInstance((5,), ((2,),)))
    assert w.coefficients == (1,) and w.element == (2,)


def test_group_search_random_instances():
    rng = random.Random(20240601)
    for _ in range(100):
        inst = random_group_instance(rng)
        w = group_search(inst)
        assert w is not None
        total = [sum(x * h[i] for x, h in zip(w.coefficients, inst.generators)) % d
                 for i, d in enumerate(inst.moduli)]
        assert tuple(total) == w.element and all(total)


def test_group_search_warns_when_hypothesis_fails():
    # Z/2 x Z/2 with both orders 2: 1/2 + 1/2 = 1, although h1 + h2 = (1, 1) still works
    inst = GroupInstance((2, 2), ((1, 0), (0, 1)))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        w = group_search(inst)
    assert any(issubclass(c.category, HypothesisUnmet) for c in caught)
    assert w is not None and w.element == (1, 1)
