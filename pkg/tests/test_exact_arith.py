import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from irrseries.exact_arith import (DomainError, InconclusiveError, Ordering, Precision, RatBall,
                                   ball_exp, ball_ln, ball_powr, ball_root, ball_sqrt,
                                   certified_le, cmp_certified, ilog2, iroot, log_power_crossover,
                                   round_down, round_up)

from conftest import encloses, mp

P30 = Precision(Fraction(1, 10**30))

fracs = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**9)
positive = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**9)


@st.composite
def balls(draw, elements=fracs):
    a, b = draw(elements), draw(elements)
    return RatBall(min(a, b), max(a, b))


def test_point_ball():
    b = RatBall.point(Fraction(1, 3))
    assert b.is_point and b.width == 0 and b.mid == Fraction(1, 3)
    assert Fraction(1, 3) in b


def test_inverted_endpoints_rejected():
    with pytest.raises(ValueError):
        RatBall(Fraction(1), Fraction(0))


@given(balls(), balls())
def test_arithmetic_contains_endpoint_combinations(x, y):
    for a in (x.lo, x.hi, x.mid):
        for b in (y.lo, y.hi):
            assert a + b in x + y
            assert a - b in x - y
            assert a * b in x * y
    if not y.contains_zero():
        assert x.mid / y.mid in x / y


def test_division_by_zero_ball():
    with pytest.raises(ZeroDivisionError):
        RatBall(Fraction(-1), Fraction(1)).reciprocal()


@given(balls(), st.integers(0, 7))
def test_integer_power(x, k):
    for a in (x.lo, x.hi, x.mid):
        assert a**k in x**k


def test_even_power_of_straddling_ball_starts_at_zero():
    assert (RatBall(Fraction(-1), Fraction(2)) ** 2) == RatBall(Fraction(0), Fraction(4))


@given(fracs.filter(lambda f: f != 0), st.integers(1, 200))
def test_directed_rounding(x, bits):
    lo, hi = round_down(x, bits), round_up(x, bits)
    assert lo <= x <= hi
    assert math.log2(lo.denominator or 1) <= max(bits + abs(ilog2(x)) + 2, 1)


@given(positive)
def test_ilog2(x):
    k = ilog2(x)
    assert Fraction(2) ** k <= x < Fraction(2) ** (k + 1)


@given(st.integers(0, 10**40), st.integers(2, 9))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r**k <= x < (r + 1) ** k


@settings(max_examples=200)
@given(positive)
def test_ln_matches_oracle(x):
    b = ball_ln(RatBall.point(x), P30)
    with mpmath.workdps(50):
        assert encloses(b, mpmath.log(mp(x)))
    assert b.width <= Fraction(1, 10**29) * max(1, abs(b.mid))


@settings(max_examples=200)
@given(st.fractions(min_value=-200, max_value=200, max_denominator=10**6))
def test_exp_matches_oracle(x):
    b = ball_exp(RatBall.point(x), P30)
    with mpmath.workdps(120):
        assert encloses(b, mpmath.exp(mp(x)), dps=120)


@given(st.fractions(min_value=0, max_value=10**8, max_denominator=10**6))
def test_sqrt_matches_oracle(x):
    b = ball_sqrt(RatBall.point(x), P30)
    with mpmath.workdps(50):
        assert encloses(b, mpmath.sqrt(mp(x)))


@given(st.integers(1, 10**30), st.integers(2, 64))
def test_root_matches_oracle(a, k):
    b = ball_root(a, k, P30)
    with mpmath.workdps(50):
        assert encloses(b, mpmath.root(a, k))


@given(positive, st.fractions(min_value=-5, max_value=5, max_denominator=100))
def test_powr_matches_oracle(x, y):
    b = ball_powr(RatBall.point(x), RatBall.point(y), P30)
    with mpmath.workdps(60):
        assert encloses(b, mpmath.power(mp(x), mp(y)))


def test_wide_ball_functions_are_monotone_hulls():
    x = RatBall(Fraction(1), Fraction(2))
    ln = ball_ln(x, P30)
    assert ln.lo <= 0 <= ln.hi and ln.hi >= Fraction(693, 1000)
    e = ball_exp(x, P30)
    assert e.lo <= Fraction(27183, 10000) and e.hi >= Fraction(7389, 1000)


@pytest.mark.parametrize("fn", [ball_ln, ball_sqrt])
def test_domain_errors(fn):
    with pytest.raises(DomainError):
        fn(RatBall.point(Fraction(-1)), P30)


def test_ln_of_zero_is_domain_error():
    with pytest.raises(DomainError):
        ball_ln(RatBall(Fraction(0), Fraction(1)), P30)


def test_certified_comparisons():
    a, b = RatBall(Fraction(0), Fraction(1)), RatBall(Fraction(2), Fraction(3))
    assert cmp_certified(a, b) is Ordering.LESS
    assert cmp_certified(b, a) is Ordering.GREATER
    assert cmp_certified(a, RatBall(Fraction(1, 2), Fraction(5))) is Ordering.OVERLAP
    assert certified_le(a, b) is True
    assert certified_le(b, a) is False
    assert certified_le(a, RatBall(Fraction(1, 2), Fraction(5))) is None


def test_precision_doubling_squares_width():
    p = Precision(Fraction(1, 10**10))
    assert p.doubled().target_width == Fraction(1, 10**20)
    assert p.doubled().bits > p.bits


def test_precision_rejects_nonpositive_width():
    with pytest.raises(ValueError):
        Precision(Fraction(0))


def test_crossover_certificate():
    cert = log_power_crossover(8, 1, Fraction(1, 4), Fraction(1, 2), P30)
    assert cert.verify()
    # the certificate's n0 is the least n from which the claim holds onward
    assert not cert.check_at(cert.n0 - 1)
    with mpmath.workdps(50):
        n = cert.n0
        assert 8 * mpmath.log(n) + 1 < mpmath.sqrt(n) / 4
        assert 8 * mpmath.log(n - 1) + 1 >= mpmath.sqrt(n - 1) / 4


def test_crossover_rejects_nonpositive_power():
    with pytest.raises((ValueError, InconclusiveError)):
        log_power_crossover(8, 1, Fraction(1, 4), Fraction(0), P30)
