import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from webstrand.qlaurent import (InexactDivision, LaurentPoly, ONE, qbinom,
                                qfactorial, qint, rank_over_q, render_poly,
                                subst_neg_q, _rank_at_point, _rank_bareiss)


def lp(coeffs):
    return LaurentPoly(coeffs)


polys = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9),
                        max_size=6).map(LaurentPoly)


def test_qint_values():
    assert qint(0).is_zero()
    assert qint(2) == lp({1: 1, -1: 1})
    assert qint(-3) == -qint(3) == lp({2: -1, 0: -1, -2: -1})
    assert str(qint(2)) == "q + q^-1"


def test_qbinom_values():
    assert qbinom(5, 0) == ONE
    assert qbinom(4, 2) == lp({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    for n in range(1, 7):
        assert qbinom(n, 1) == qint(n)


def test_qbinom_division_exact_up_to_8():
    for k in range(0, 9):
        for l in range(0, k + 1):
            num = ONE
            for i in range(l):
                num = num * qint(k - i)
            assert qbinom(k, l) * qfactorial(l) == num


def test_subst_neg_q():
    assert subst_neg_q(qint(4)) == lp({3: -1, 1: -1, -1: -1, -3: -1})
    assert subst_neg_q(lp({0: 7})) == lp({0: 7})


def test_exact_division_error():
    with pytest.raises(InexactDivision):
        lp({1: 1, 0: 1}).exact_div(lp({0: 2}))
    with pytest.raises(InexactDivision):
        qint(3).exact_div(qint(2))


def test_render():
    assert render_poly(lp({4: 1, 0: 2, -2: -1})) == "q^4 + 2 - q^-2"
    assert render_poly(LaurentPoly()) == "0"
    assert render_poly(lp({1: -1, -1: -1})) == "-q - q^-1"
    assert render_poly(lp({2: 3})) == "3q^2"


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == LaurentPoly.zero()


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_subst_neg_q_is_ring_hom(a, b):
    assert subst_neg_q(a * b) == subst_neg_q(a) * subst_neg_q(b)
    assert subst_neg_q(a + b) == subst_neg_q(a) + subst_neg_q(b)
    assert subst_neg_q(subst_neg_q(a)) == a


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_exact_div_roundtrip(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


def test_rank_examples():
    q = LaurentPoly.q_power(1)
    qi = LaurentPoly.q_power(-1)
    assert rank_over_q([[ONE, LaurentPoly.zero()],
                        [LaurentPoly.zero(), ONE]]) == 2
    zero3 = [[LaurentPoly.zero()] * 3 for _ in range(3)]
    assert rank_over_q(zero3) == 0
    # second row is q^-1 times the first
    assert rank_over_q([[ONE, q], [qi, ONE]]) == 1


def test_rank_specialization_agreement():
    rng = random.Random(7)
    for _ in range(8):
        rows = [[LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)})
                 for _ in range(5)] for _ in range(5)]
        authoritative = _rank_bareiss(rows)
        specialized = max(
            _rank_at_point(rows, Fraction(rng.randint(2, 10 ** 6),
                                          rng.randint(2, 10 ** 6)))
            for _ in range(3))
        assert specialized == authoritative
        assert rank_over_q(rows) == authoritative
