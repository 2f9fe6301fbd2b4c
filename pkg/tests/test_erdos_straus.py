from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from irrseries.erdos_straus import (ESWitness, check_cor210, check_thm21_hypotheses,
                                    check_thm31_prime, construct_c, r_sequence, round_half_away,
                                    search_witness, verify_witness)
from irrseries.seqdsl import RatioDominated, Window, parse_sequence
from irrseries.series import SeriesInstance

HALF = RatioDominated(c=Fraction(1, 2))


def cantor(a, b, facts=(HALF,)):
    return SeriesInstance(parse_sequence(a), parse_sequence(b), "cantor", facts)


@pytest.mark.parametrize("x, expected", [(Fraction(1, 2), 1), (Fraction(-1, 2), -1),
                                         (Fraction(3, 2), 2), (Fraction(7, 5), 1),
                                         (Fraction(-7, 5), -1), (Fraction(0), 0)])
def test_round_half_away(x, expected):
    assert round_half_away(x) == expected


def test_telescoping_witness():
    s = cantor("n + 2", "n + 1")
    res = search_witness(s, 4, 10, 40)
    w = res.witness
    assert res.verdict.is_certified
    assert (w.B, w.N) == (1, 1) and set(w.c) == {1}
    assert verify_witness(s, construct_c(s, 1, 1, 100)).is_certified


def test_e_minus_2_has_no_small_witness():
    res = search_witness(cantor("n + 1", "1"), 16, 10, 40)
    assert res.witness is None and res.verdict.is_inconclusive


def test_parallel_search_agrees():
    s = cantor("n + 2", "n + 1")
    assert search_witness(s, 4, 4, 30, jobs=4).witness == search_witness(s, 4, 4, 30).witness


def test_tampered_witness_is_refuted():
    s = cantor("n + 2", "n + 1")
    w = construct_c(s, 1, 1, 10)
    bad = ESWitness(w.B, w.N, w.c[:5] + (w.c[5] + 1,) + w.c[6:])
    v = verify_witness(s, bad)
    assert v.is_refuted and v.index in (4, 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 30), st.data())
def test_witness_identities(k, data):
    # sum m / k^n = m / (k - 1): rational, so a witness with B = k - 1 exists
    m = data.draw(st.integers(1, (k - 1) // 2))
    s = cantor(str(k), str(m), ())
    res = search_witness(s, k - 1, 3, 30)
    assert res.witness is not None
    w = res.witness
    for i in range(w.length):
        n = w.N + i
        assert w.B * s.b_term(n) == w.c[i] * s.a_term(n) - w.c[i + 1]
        assert 2 * abs(w.c[i + 1]) < s.a_term(n)


def test_form_is_enforced():
    s = SeriesInstance(parse_sequence("n + 2"), parse_sequence("n + 1"), "plain")
    with pytest.raises(ValueError):
        search_witness(s, 4, 4, 10)


@pytest.mark.parametrize("a, b, B, N", [("n + 2", "n + 1", 1, 1), ("n + 1", "1", 1, 1)])
def test_r_sequence_residuals_contain_zero(a, b, B, N):
    rs = r_sequence(cantor(a, b), B, N, 20)
    assert all(r.contains_zero() for r in rs.residuals)
    assert rs.verdict.is_certified


def test_r_sequence_telescoping():
    rs = r_sequence(cantor("n + 2", "n + 1"), 1, 1, 20)
    # R(n) = 1/(n+2) for this series
    for i, v in enumerate(rs.values):
        assert Fraction(1, rs.start + i + 2) in v
    assert rs.small[:2] == (3, 4) and all(rs.consistent)


def test_hypotheses_reports():
    rep = check_thm21_hypotheses(cantor("n + 1", "1"), Window(2, 40))
    assert rep.verdict.is_certified and "decreasing on window" in rep.notes
    assert any("ASSUMED" in str(f.describe()) for f in rep.verdict.assumed)
    rep = check_cor210(cantor("n + 1", "1"), Window(1, 40))
    assert rep.verdict.is_inconclusive
    rep = check_cor210(cantor("10 - n", "1"), Window(1, 8))
    assert rep.verdict.is_refuted


def test_prime_series_report():
    rep = check_thm31_prime(parse_sequence("n + 1"), Window(1, 200))
    assert rep.verdict.is_inconclusive
    assert rep.values["p_over_a_squared"][1] == Fraction(2, 4)
