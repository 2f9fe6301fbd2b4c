from fractions import Fraction
import math

import mpmath
import pytest

from irrseries.roth import (ROTH, approximants, check_hr_thm21, check_hr_thm22,
                            counterexample_sequence, thm22_exponent, transcendence_report)
from irrseries.seqdsl import MonotoneNondecreasing, RatioDominated, Window, check_fact_on_window
from irrseries.series import SeriesInstance
from irrseries.seqdsl import parse_sequence

from conftest import encloses

HALF = RatioDominated(c=Fraction(1, 2))


def plain(a, b="1"):
    return SeriesInstance(parse_sequence(a), parse_sequence(b), "plain", (HALF,))


def test_liouville_kappas():
    apps = approximants(plain("2^(n!)"), 6)
    assert [math.gcd(ap.p, ap.q) for ap in apps] == [1] * 6
    k4 = apps[3]
    assert Fraction(120, 33) in k4.kappa_product and k4.kappa_product.width < Fraction(1, 1000)
    # oracle for the reduced-denominator exponent
    with mpmath.workdps(80):
        tail = mpmath.nsum(lambda k: mpmath.mpf(2) ** (-mpmath.factorial(k)), [5, 9])
        assert encloses(k4.kappa, -mpmath.log(tail) / mpmath.log(k4.q), dps=80)
    assert [ap.exceeds_two for ap in apps] == [False, True, True, True, True, True]


def test_geometric_kappas_stay_at_one():
    apps = approximants(plain("2^n"), 12)
    assert all(ap.kappa is None or ap.kappa.lo <= 2 for ap in apps)
    assert all(ap.kappa is None or 1 in ap.kappa for ap in apps)


def test_transcendence_report_carries_roth():
    rep = transcendence_report(plain("2^(n!)"), 1, 6)
    assert rep.verdict.is_certified and ROTH in rep.verdict.assumed
    rep = transcendence_report(plain("2^n"), 1, 6)
    assert rep.verdict.is_inconclusive and ROTH in rep.verdict.assumed


def test_hr21():
    rep = check_hr_thm21(plain("2^(n!)"), 1, (1, 7))
    assert rep.verdict.is_certified and rep.values["ratio_min"] == 2
    rep = check_hr_thm21(plain("2^n"), 1, (1, 10))
    assert "no divergence observed" in rep.notes
    rep = check_hr_thm21(plain("5"), 1, (1, 5))
    assert rep.verdict.is_refuted and rep.verdict.index == 1
    with pytest.raises(ValueError):
        check_hr_thm21(plain("2^n"), 0, (1, 5))


def test_hr22():
    assert thm22_exponent(1, 1) == 5
    assert check_hr_thm22(plain("2^(n!)"), 1, 1, 2, (1, 6)).verdict.is_certified
    rep = check_hr_thm22(plain("2^(n!)"), 1, 1, 1, (1, 6))
    assert rep.verdict.is_refuted and rep.verdict.index == 1


def test_counterexample_failures_at_even_indices():
    s, rep = counterexample_sequence(1, 2, 12, A=3)
    assert rep.values["failures"] == list(range(2, 13, 2))
    assert rep.values["branch_identity"]
    _, rep = counterexample_sequence(1, 2, 12, A=Fraction(3, 2))
    assert rep.values["failures"] == [] and rep.verdict.is_certified


def test_counterexample_at_two_hits_equality():
    s, rep = counterexample_sequence(1, 2, 12, A=2)
    for k in rep.values["failures"]:
        assert s.a_term(k + 1) == 2 * s.a_term(k)


def test_counterexample_first_terms():
    s, rep = counterexample_sequence(1, 2, 4, A=3)
    # a(2) = 1 * a(1)^3, a(3) = 2 a(2), a(4) = 3 (a(1) a(2) a(3))^3
    assert [s.a_term(k) for k in range(1, 5)] == [2, 8, 16, 3 * (2 * 8 * 16) ** 3]


def test_counterexample_satisfies_hr21_and_is_monotone():
    s, _ = counterexample_sequence(1, 2, 12, A=3)
    assert check_hr_thm21(s, 1, (1, 10)).verdict.is_certified
    assert check_fact_on_window(s.a, MonotoneNondecreasing(on="a"), Window(1, 14)).is_certified


def test_counterexample_validation():
    with pytest.raises(ValueError):
        counterexample_sequence(0, 2, 5)
    with pytest.raises(ValueError):
        counterexample_sequence(1, 1, 5)
