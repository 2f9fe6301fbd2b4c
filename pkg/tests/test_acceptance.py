"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest -v tests/test_acceptance.py`` or directly as a script.
"""

import contextlib
import math
import random
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from irrseries.cli import main as cli_main
from irrseries.erdos_straus import construct_c, r_sequence, search_witness, verify_witness
from irrseries.exact_arith import (Precision, RatBall, ball_exp, ball_ln, ball_powr, ball_root,
                                   ball_sqrt, log_power_crossover)
from irrseries.hancl import (alpha_quantity, check_hancl_cor2, margin_family,
                             refute_rational_candidates)
from irrseries.primes import PrimeCache, double_sqrt_check, nth_prime, prime_ratio_window
from irrseries.roth import approximants, counterexample_sequence
from irrseries.seqdsl import RatioDominated, Window, parse_sequence
from irrseries.series import SeriesInstance, denominator_refutation, partial_sum

from conftest import CRITERIA_LINES, SPECS, encloses, mp

pytestmark = pytest.mark.acceptance

HALF = RatioDominated(c=Fraction(1, 2))


@contextlib.contextmanager
def criterion(num, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        _line(num, "FAIL", title, time.perf_counter() - t0)
        raise
    _line(num, "PASS", title, time.perf_counter() - t0)


def _line(num, status, title, secs):
    CRITERIA_LINES.append((num, f"CRITERION {num:>2}: {status} - {title} ({secs:.2f} s)"))


def cantor(a, b):
    return SeriesInstance(parse_sequence(a), parse_sequence(b), "cantor", (HALF,))


def plain(a, b="1"):
    return SeriesInstance(parse_sequence(a), parse_sequence(b), "plain", (HALF,))


# ---------------------------------------------------------------------------

def _random_ball(rng, lo=-10**4, hi=10**4, positive=False):
    den = rng.randint(1, 10**6)
    a = Fraction(rng.randint(1 if positive else lo * den, hi * den), den)
    w = Fraction(rng.randint(0, 1000), 10 ** rng.randint(3, 30))
    return RatBall(a, a + w)


def _inside(rng, ball):
    return ball.lo + ball.width * Fraction(rng.randint(0, 1000), 1000)


def _one_op(rng, prec):
    """(ball result, oracle reference) for one random operation."""
    kind = rng.choice(["add", "sub", "mul", "div", "pow", "sqrt", "ln", "exp", "powr", "root"])
    x = _random_ball(rng, positive=kind in ("sqrt", "ln", "powr"))
    y = _random_ball(rng)
    px, py = _inside(rng, x), _inside(rng, y)
    if kind == "add":
        return x + y, mp(px) + mp(py)
    if kind == "sub":
        return x - y, mp(px) - mp(py)
    if kind == "mul":
        return x * y, mp(px) * mp(py)
    if kind == "div":
        if y.contains_zero():
            y, py = RatBall.point(py or 1), py or 1
        return x / y, mp(px) / mp(py)
    if kind == "pow":
        k = rng.randint(0, 6)
        return x**k, mp(px) ** k
    if kind == "sqrt":
        return ball_sqrt(x, prec), mpmath.sqrt(mp(px))
    if kind == "ln":
        return ball_ln(x, prec), mpmath.log(mp(px))
    if kind == "exp":
        e = RatBall(x.lo / 100, x.hi / 100)
        return ball_exp(e, prec), mpmath.exp(mp(px) / 100)
    if kind == "powr":
        e = RatBall(y.lo / 1000, y.hi / 1000)
        return ball_powr(x, e, prec), mpmath.power(mp(px), mp(py) / 1000)
    a, k = rng.randint(1, 10**40), rng.randint(2, 300)
    return ball_root(a, k, prec), mpmath.root(a, k)


def test_criterion_01_containment():
    with criterion(1, "10^4 random ball operations contain the 50-digit oracle"):
        rng = random.Random(20240601)
        prec = Precision(Fraction(1, 10**30))
        t0 = time.perf_counter()
        violations = []
        with mpmath.workdps(50):
            for i in range(10**4):
                ball, ref = _one_op(rng, prec)
                if not encloses(ball, ref, dps=50):
                    violations.append(i)
        assert violations == []
        assert time.perf_counter() - t0 < 60


def test_criterion_02_telescoping_witness():
    with criterion(2, "telescoping witness B=1, c=1, window [1,100], exact partial sum"):
        s = cantor("n + 2", "n + 1")
        res = search_witness(s, 4, 10, 40)
        w = res.witness
        assert w is not None and w.B == 1 and set(w.c) == {1}
        assert verify_witness(s, construct_c(s, w.B, 1, 100)).is_certified
        assert partial_sum(s, 30) == 1 - Fraction(2, math.factorial(32))


def test_criterion_03_e_minus_2():
    with criterion(3, "e-2: no witness, every q <= 50 refuted with n <= 60"):
        t0 = time.perf_counter()
        s = cantor("n + 1", "1")
        res = search_witness(s, 64, 10, 40)
        assert res.witness is None and res.verdict.is_inconclusive
        for q in range(1, 51):
            v = denominator_refutation(s, q, 60)
            assert v.is_refuted and v.index <= 60, q
        assert time.perf_counter() - t0 < 30


def test_criterion_04_r_sequence():
    with criterion(4, "R-sequence residuals contain 0; |R(n)| < 1/4 flagged for telescoping"):
        tele = r_sequence(cantor("n + 2", "n + 1"), 1, 1, 20)
        e2 = r_sequence(cantor("n + 1", "1"), 1, 1, 20)
        for rs in (tele, e2):
            assert len(rs.residuals) == 20
            assert all(r.contains_zero() for r in rs.residuals)
        assert tele.small


def test_criterion_05_alpha():
    with criterion(5, "ALPHA(3) < 1 for 2^(n!), all q <= 10^6 refuted at n <= 6"):
        t0 = time.perf_counter()
        s = plain("2^(n!)")
        a3 = alpha_quantity(s, 1, 3)
        assert 0 < a3.lo and a3.hi < 1
        # 2^(1!+2!+3!) times a tail starting at 2^-(4!): about 2^(9 - 24)
        assert Fraction(1, 2**16) < a3.lo and a3.hi < Fraction(1, 2**14)
        rep = refute_rational_candidates(s, 10**6)
        assert rep.verdict.is_certified
        assert rep.values["max_n"] <= 6
        assert time.perf_counter() - t0 < 30


def test_criterion_06_cor2():
    with criterion(6, "margin family passes on [6,12]; 2^(2^n) RefutedAt(6) on the a-bound"):
        rep = check_hancl_cor2(margin_family(12), 3, Window(6, 12))
        assert rep.values["a_bound"].is_certified and rep.values["b_bound"].is_certified
        assert rep.verdict.is_certified
        bad = check_hancl_cor2(plain("2^(2^n)"), 2, Window(6, 12))
        assert bad.values["a_bound"].is_refuted and bad.values["a_bound"].index == 6
        assert bad.verdict.is_refuted and bad.verdict.index == 6


def test_criterion_07_kappa():
    with criterion(7, "kappa_4 ball contains 120/33; geometric kappa never certified > 2"):
        k4 = approximants(plain("2^(n!)"), 4)[3]
        assert Fraction(120, 33) in k4.kappa_product
        assert k4.kappa_product.width < Fraction(1, 1000)
        geo = approximants(plain("2^n"), 20)
        assert all(ap.kappa is None or not ap.kappa.lo > 2 for ap in geo)


def test_criterion_08_counterexample():
    with criterion(8, "counterexample fails at even k for A=3 and nowhere for A=2"):
        _, rep3 = counterexample_sequence(1, 2, 12, A=3)
        assert rep3.values["failures"] == [k for k in range(1, 13) if k % 2 == 0]
        _, rep2 = counterexample_sequence(1, 2, 12, A=2)
        assert rep2.values["failures"] == []


def test_criterion_09_crossover():
    with criterion(9, "log-power crossover certificate re-verified, [N0, N0+10^4] exhaustive"):
        t0 = time.perf_counter()
        cert = log_power_crossover(8, 1, Fraction(1, 4), Fraction(1, 2))
        assert cert.verify()
        bad = [n for n in range(cert.n0, cert.n0 + 10**4 + 1) if not cert.check_at(n)]
        assert bad == []
        with mpmath.workdps(40):
            assert 8 * mpmath.log(cert.n0) + 1 < mpmath.sqrt(cert.n0) / 4
        assert time.perf_counter() - t0 < 10


def _sieve_primes(count):
    limit = 30
    while True:
        flags = bytearray([1]) * (limit + 1)
        flags[0:2] = b"\x00\x00"
        for i in range(2, int(limit**0.5) + 1):
            if flags[i]:
                flags[i * i::i] = bytearray(len(flags[i * i::i]))
        ps = [i for i in range(limit + 1) if flags[i]]
        if len(ps) >= count:
            return ps[:count]
        limit *= 2


def _trial_division(count):
    out, k = [], 2
    while len(out) < count:
        if all(k % p for p in out if p * p <= k):
            out.append(k)
        k += 1
    return out


def test_criterion_10_primes():
    with criterion(10, "primes match trial division, ratio window, double-index bound vs oracle"):
        assert PrimeCache().first(10**4).tolist() == _trial_division(10**4)
        assert nth_prime(1000) == 7919
        stats = prime_ratio_window(10**4, 2 * 10**4)
        assert stats.max_ratio <= Fraction(105, 100)
        ref = _sieve_primes(2 * 10**4)
        eps = Fraction(1, 10)
        for n in (1000, 10**4):
            with mpmath.workdps(40):
                lhs = (ref[2 * n - 1] - ref[n - 1]) / mpmath.sqrt(ref[n - 1])
                rhs = mpmath.power(n, mpmath.mpf(1) / 2 + mpmath.mpf(1) / 10)
            v = double_sqrt_check(n, eps).verdict
            assert v.is_certified == bool(lhs < rhs) and v.is_refuted == bool(lhs > rhs)


CLI_COMMANDS = [
    ["eval", "telescoping.json", "--depth", "12", "--prec", "1e-15"],
    ["check", "erdos-straus", "telescoping.json", "--Bmax", "4"],
    ["check", "erdos-straus-cor", "e_minus_2.json"],
    ["check", "prime-series", "prime_cantor.json"],
    ["check", "hancl", "liouville.json", "--A", "2", "--Qmax", "1000000"],
    ["check", "hancl-cor2", "double_exp.json", "--A", "2"],
    ["check", "hancl-rucki-1", "liouville.json", "--delta", "1"],
    ["check", "hancl-rucki-2", "liouville.json", "--t", "2"],
    ["counterexample", "--delta", "1", "--A", "3", "--kmax", "12"],
    ["primes", "--nmin", "10000", "--nmax", "20000", "--N", "1000", "--N", "10000"],
    ["roth", "liouville.json", "--kmax", "6"],
]


def test_criterion_11_cli(tmp_path):
    import json

    import jsonschema

    from irrseries.specfile import load_schema

    with criterion(11, "every CLI command validates against the schema and is byte-deterministic"):
        schema = load_schema("report")
        for i, cmd in enumerate(CLI_COMMANDS):
            argv = [str(SPECS / a) if a.endswith(".json") else a for a in cmd]
            texts = []
            for run in range(2):
                out = tmp_path / f"{i}-{run}.json"
                assert cli_main(argv + ["--output", str(out)]) == 0, cmd
                doc = json.loads(out.read_text())
                jsonschema.validate(doc, schema)
                doc["runtime_ms"] = 0
                texts.append(json.dumps(doc, sort_keys=True, indent=2))
            assert texts[0] == texts[1], cmd


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
