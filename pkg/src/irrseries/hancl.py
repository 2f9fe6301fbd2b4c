"""Irrationality of rapidly convergent series sum b(n)/a(n) through infinite
products of numbers d(n) > 1.

Hypotheses checked here, for a real A > 1:

* a(n)**(1/2**n) -> A                                      (assumed limit)
* A / a(n)**(1/2**n) > prod_{j >= n} d(j)   for n >= s      (certified on a window)
* d(n)**(2**n) / b(n) -> infinity                          (assumed limit, log-space trend)

The specialization d(n) = 1 + (2/3)**n turns these into two explicit bounds
on a and b, valid from n = 6 on.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import (DEFAULT_PRECISION, InconclusiveError, Ordering, Precision, RatBall,
                          ball_exp, ball_ln, ball_powr, ball_root, certified_le, cmp_certified)
from .seqdsl import (AsymptoticClaim, EventuallyPositive, LogTailDominated, SequenceDef, Window,
                     check_fact_on_window, parse_sequence)
from .series import SeriesInstance, positive_b_fact, tail_enclosure
from .verdict import Report, Verdict, conjunction

COR2_D = "1 + (2/3)^n"


@dataclass(eq=False)
class ProductSeq:
    """Rational factors d(n); ``facts`` should include a LogTailDominated fact."""

    d: SequenceDef
    facts: tuple = ()
    _prefix: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.facts = tuple(self.facts) + tuple(self.d.facts)

    def factor(self, n: int) -> Fraction:
        return self.d.value(n)

    def finite(self, n: int, m: int) -> Fraction:
        """Exact product of d(j) for n <= j <= m."""
        key = (n, m)
        if key in self._prefix:
            return self._prefix[key]
        prev = self._prefix.get((n, m - 1))
        if prev is None:
            prev = Fraction(1)
            for j in range(n, m):
                prev *= self.factor(j)
        val = prev * self.factor(m) if m >= n else Fraction(1)
        self._prefix[key] = val
        return val


@dataclass(frozen=True)
class TailProduct:
    start: int
    ball: RatBall
    depth: int
    converges_to_zero: bool = False
    nonzero_tail: RatBall | None = None
    assumed: tuple = ()

    def to_json(self) -> dict:
        out = {"from": self.start, "ball": self.ball, "depth": self.depth}
        if self.converges_to_zero:
            out["converges_to_zero"] = True
            out["nonzero_tail"] = self.nonzero_tail
        return out


def _log_tail_fact(p: ProductSeq) -> LogTailDominated | None:
    facts = [f for f in p.facts if isinstance(f, LogTailDominated) and f.on in ("d", "terms")]
    return min(facts, key=lambda f: f.start) if facts else None


def tail_product(p: ProductSeq, n: int, prec: Precision | None = None) -> TailProduct:
    """Ball for prod_{j >= n} d(j).

    Exact factors up to some M >= n, times exp([0, C r**(M+1) / (1 - r)]) for
    the rest.  A zero factor makes the whole product zero (it "diverges to
    zero"); the product after the last zero is then enclosed separately.
    """
    prec = prec or DEFAULT_PRECISION
    const = p.d.constant_beyond()
    if const is not None and const[1] == 1:
        last = max(const[0], n - 1)
        return _with_zeros(p, n, last, RatBall.point(1), (), prec)
    fact = _log_tail_fact(p)
    if fact is None:
        raise InconclusiveError("no log_tail_dominated fact for the product")
    M = max(n, fact.start - 1)
    for _ in range(prec.max_work):
        head = p.finite(n, M)
        rest = fact.C * fact.r ** (M + 1) / (1 - fact.r)
        if abs(head) * rest * 2 <= prec.target_width or head == 0:
            break
        M += 1
    else:
        raise InconclusiveError("tail product did not reach the target width")
    audit = check_fact_on_window(p.d, fact, Window(fact.start, max(M, fact.start)), prec)
    if not audit.is_certified:
        raise InconclusiveError(f"fact audit failed: {fact.describe()}: {audit}")
    rest = fact.C * fact.r ** (M + 1) / (1 - fact.r)
    return _with_zeros(p, n, M, ball_exp(RatBall(0, rest), prec), (fact,), prec)


def _with_zeros(p: ProductSeq, n: int, M: int, rest: RatBall, assumed: tuple,
                prec: Precision) -> TailProduct:
    zeros = [j for j in range(n, M + 1) if p.factor(j) == 0]
    if zeros:
        inner = tail_product(p, zeros[-1] + 1, prec)
        return TailProduct(n, RatBall.point(0), M, True, inner.ball, assumed)
    ball = (rest * p.finite(n, M)).rounded(prec.bits + 8)
    return TailProduct(n, ball, M, False, None, assumed)


def _root_ball(a: int, n: int, prec: Precision) -> RatBall:
    return ball_root(a, 1 << n, prec)


def _compare(lhs_fn, rhs_fn, prec: Precision, tries: int = 3) -> tuple[Ordering, RatBall, RatBall]:
    for _ in range(tries):
        lhs, rhs = lhs_fn(prec), rhs_fn(prec)
        order = cmp_certified(lhs, rhs)
        if order is not Ordering.OVERLAP:
            return order, lhs, rhs
        prec = prec.doubled()
    return Ordering.OVERLAP, lhs, rhs


def _positivity(s: SeriesInstance, window: Window) -> Verdict:
    va = check_fact_on_window(s.a, EventuallyPositive(start=window.start, on="a"), window)
    vb = check_fact_on_window(s.b, EventuallyPositive(start=window.start, on="b"), window)
    return conjunction([va, vb])


def check_hancl_thm3(s: SeriesInstance, p: ProductSeq, A, start: int, window: Window,
                     prec: Precision | None = None) -> Report:
    """Window report for the three hypotheses; limits are listed as assumed."""
    if s.form != "plain":
        raise ValueError("the product criterion needs a plain-form series")
    A = Fraction(A)
    if A <= 1 or start < 1:
        raise ValueError("need A > 1 and s >= 1")
    prec = prec or DEFAULT_PRECISION
    parts = [_positivity(s, window)]
    roots, gaps, running = {}, {}, {}
    best = None
    for n in window:
        r = _root_ball(s.a_term(n), n, prec)
        roots[n], gaps[n] = r, RatBall.point(A) - r
        best = r if best is None else RatBall(max(best.lo, r.lo), max(best.hi, r.hi))
        running[n] = best
    for n in window:
        if p.factor(n) <= 1:
            parts.append(Verdict.refuted(n, f"d({n}) = {p.factor(n)} is not > 1"))
            break
    ineq = {}
    sub2 = Verdict.certified(f"A / a(n)^(1/2^n) > tail product on [{max(start, window.start)}, {window.stop}]")
    try:
        for n in range(max(start, window.start), window.stop + 1):
            a = s.a_term(n)
            order, lhs, rhs = _compare(lambda pr: RatBall.point(A) / _root_ball(a, n, pr),
                                       lambda pr: tail_product(p, n, pr).ball, prec)
            ineq[n] = {"lhs": lhs, "rhs": rhs}
            if order is Ordering.LESS:
                sub2 = Verdict.refuted(n, f"A / a({n})^(1/2^{n}) < prod_(j>={n}) d(j)")
                break
            if order is Ordering.OVERLAP:
                sub2 = Verdict.inconclusive(f"balls overlap at n={n}")
                break
        sub2 = sub2.with_assumed(tail_product(p, max(start, window.start), prec).assumed)
    except InconclusiveError as exc:
        sub2 = Verdict.inconclusive(exc.reason)
    parts.append(sub2)
    growth = {}
    for n in window:
        d, b = p.factor(n), s.b_term(n)
        if d > 0 and b > 0:
            growth[n] = ball_ln(RatBall.point(d), prec.with_bits(n)) * (1 << n) - ball_ln(RatBall.point(b), prec)
    notes = []
    g = list(growth.values())
    if g and not all(y.lo > x.hi for x, y in zip(g, g[1:])):
        notes.append("2^n ln d(n) - ln b(n) not strictly increasing on window")
    claims = (AsymptoticClaim(start=window.start, on="a", statement=f"a(n)^(1/2^n) -> {A}"),
              AsymptoticClaim(start=window.start, on="d", statement="d(n)^(2^n) / b(n) -> infinity"))
    verdict = conjunction(parts).with_assumed(claims)
    values = {"root": roots, "A_minus_root": gaps, "running_max_root": running,
              "inequality": ineq, "log_growth": growth}
    return Report("hancl", verdict, values, window.as_tuple(), notes)


def cor2_product(first_index: int = 1) -> ProductSeq:
    d = parse_sequence(COR2_D, name="d", first_index=first_index)
    return ProductSeq(d, (LogTailDominated(start=1, on="d", C=Fraction(1), r=Fraction(2, 3)),))


def _b_bound(b: int, n: int, prec: Precision) -> tuple[bool | None, RatBall | None]:
    e = Fraction(4, 3) ** (n - 1)
    lo_e = math.floor(e)
    if b <= 1 << lo_e:
        return True, None
    if e.denominator == 1 or b > 1 << (lo_e + 1):
        return False, None
    for _ in range(3):
        rhs = ball_powr(RatBall.point(2), RatBall.point(e), prec)
        ok = certified_le(RatBall.point(b), rhs)
        if ok is not None:
            return ok, rhs
        prec = prec.doubled()
    return None, rhs


def check_hancl_cor2(s: SeriesInstance, A, window: Window, prec: Precision | None = None,
                     start: int = 6) -> Report:
    """a(n)^(1/2^n) (1 + 4 (2/3)^n) <= A and b(n) <= 2^((4/3)^(n-1)) for n >= start.

    Also checks, for d(n) = 1 + (2/3)^n, the reduction step
    prod_{j >= n} d(j) < 1 + 4 (2/3)^n that turns these bounds into the
    product hypothesis.
    """
    if s.form != "plain":
        raise ValueError("the corollary needs a plain-form series")
    A = Fraction(A)
    prec = prec or DEFAULT_PRECISION
    p = cor2_product(s.first_index)
    lo = max(start, window.start)
    rows = {}
    a_v = b_v = red_v = None
    for n in range(lo, window.stop + 1):
        factor = 1 + 4 * Fraction(2, 3) ** n
        a = s.a_term(n)
        order, lhs, _ = _compare(lambda pr: _root_ball(a, n, pr) * factor,
                                 lambda pr: RatBall.point(A), prec)
        row = {"a_lhs": lhs}
        if a_v is None and order is Ordering.GREATER:
            a_v = Verdict.refuted(n, f"a({n})^(1/2^{n}) (1 + 4 (2/3)^{n}) > {A}")
        elif a_v is None and order is Ordering.OVERLAP and lhs.lo != A:
            a_v = Verdict.inconclusive(f"a-bound undecided at n={n}")
        ok, rhs = _b_bound(s.b_term(n), n, prec)
        row["b_ok"] = ok
        if rhs is not None:
            row["b_rhs"] = rhs
        if b_v is None and ok is False:
            b_v = Verdict.refuted(n, f"b({n}) > 2^((4/3)^{n - 1})")
        elif b_v is None and ok is None:
            b_v = Verdict.inconclusive(f"b-bound undecided at n={n}")
        try:
            tp = tail_product(p, n, prec)
            row["tail_product"] = tp.ball
            if red_v is None and not tp.ball.hi < factor:
                red_v = Verdict.inconclusive(f"reduction inequality not certified at n={n}")
        except InconclusiveError as exc:
            red_v = red_v or Verdict.inconclusive(exc.reason)
        rows[n] = row
    span = f"[{lo}, {window.stop}]"
    a_v = a_v or Verdict.certified(f"a-bound holds on {span}")
    b_v = b_v or Verdict.certified(f"b-bound holds on {span}")
    red_v = red_v or Verdict.certified(f"reduction holds on {span}", (p.facts[0],))
    claims = (AsymptoticClaim(start=lo, on="a", statement=f"a(n)^(1/2^n) -> {A}"),)
    verdict = conjunction([_positivity(s, Window(lo, window.stop)) if lo <= window.stop
                           else Verdict.certified(), a_v, b_v, red_v]).with_assumed(claims)
    values = {"rows": rows, "a_bound": a_v, "b_bound": b_v, "reduction": red_v}
    return Report("hancl-cor2", verdict, values, (lo, window.stop))


def certified_floor(make_ball, prec: Precision | None = None, tries: int = 8) -> int:
    """floor of a real given by ``make_ball(prec)``, refining until unambiguous."""
    prec = prec or DEFAULT_PRECISION
    for _ in range(tries):
        ball = make_ball(prec)
        lo, hi = math.floor(ball.lo), math.floor(ball.hi)
        if lo == hi:
            return lo
        prec = prec.doubled()
    raise InconclusiveError("floor undecided at maximum precision")


def margin_term(n: int) -> int:
    """floor(3^(2^n) * exp(-4 (4/3)^n))."""
    big = 3 ** (1 << n)
    x = RatBall.point(-4 * Fraction(4, 3) ** n)
    digits = len(str(big)) + 10
    return certified_floor(lambda pr: ball_exp(x, pr) * big, Precision(Fraction(1, 10 ** digits)))


def margin_family(nmax: int = 12) -> SeriesInstance:
    """Table-defined plain series whose a-terms meet the corollary bound with A = 3.

    The floor is 0 for n <= 3; those terms are raised to 1 so that every a(n)
    is a positive integer.  The bound itself is only claimed from n = 6 on.
    """
    a = SequenceDef.table([max(1, margin_term(n)) for n in range(1, nmax + 1)], name="a")
    b = SequenceDef.table([1] * nmax, name="b")
    return SeriesInstance(a, b, "plain")


# ---------------------------------------------------------------------------
# ALPHA(n) = q * a(1)...a(n) * sum_{k > n} b(k)/a(k)

def _unit_alpha(s: SeriesInstance, n: int, prec: Precision, facts) -> tuple[RatBall, tuple]:
    scale = s.partial_product(n)
    enc = tail_enclosure(s, n, facts, width=prec.target_width, relative=True)
    return (enc.ball * scale).rounded(prec.bits + 16), enc.assumed


def alpha_quantity(s: SeriesInstance, q: int, n: int, prec: Precision | None = None,
                   facts=None) -> RatBall:
    """Ball for ALPHA(n); exactly linear in q."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    prec = prec or DEFAULT_PRECISION
    facts = tuple(facts or ()) + positive_b_fact(s, n + 1)
    return _unit_alpha(s, n, prec, facts)[0] * q


@dataclass(frozen=True)
class RefutedRange:
    q_from: int
    q_to: int
    n: int

    def to_json(self) -> dict:
        return {"q_from": self.q_from, "q_to": self.q_to, "n": self.n}


MAX_PRODUCT_BITS = 1 << 18


def refute_rational_candidates(s: SeriesInstance, Qmax: int, nmax: int = 64,
                               prec: Precision | None = None, facts=None,
                               jobs: int = 1, max_bits: int = MAX_PRODUCT_BITS) -> Report:
    """Least n with ALPHA(n) certified in (0, 1), for every q <= Qmax.

    ALPHA is linear in q, so q is refuted at n exactly when q * hi(n) < 1;
    the per-n thresholds give the answer for all q at once as ranges.
    The sweep stops early once a(1)...a(n+1) exceeds ``max_bits`` bits.
    """
    prec = prec or DEFAULT_PRECISION
    if Qmax < 1:
        return Report("refute-rational", Verdict.certified("no candidate denominators"),
                      {"ranges": [], "unrefuted_from": None})
    notes = []
    last = s.first_index - 1
    while last < nmax and s.partial_product(last + 2).bit_length() <= max_bits:
        last += 1
    if last < nmax:
        notes.append(f"stopped after n={last}: a(1)...a({last + 2}) exceeds {max_bits} bits")
        nmax = last
    facts = tuple(facts or ()) + positive_b_fact(s, nmax + 1)
    ns = list(range(s.first_index, nmax + 1))

    def unit(n):
        try:
            return _unit_alpha(s, n, prec, facts)
        except InconclusiveError:
            return None, ()

    if jobs > 1:
        for n in range(s.first_index, nmax + 2):
            s.a_term(n), s.b_term(n)
        s.partial_product(nmax)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            units = list(pool.map(unit, ns))
    else:
        units = []
        covered = 0
        for n in ns:
            units.append(unit(n))
            ball = units[-1][0]
            if ball is not None and ball.lo > 0 and ball.hi > 0:
                covered = max(covered, _threshold(ball.hi))
            if covered >= Qmax:
                break
    ranges, covered, assumed = [], 0, []
    for n, (ball, used) in zip(ns, units):
        if ball is None or ball.lo <= 0:
            continue
        thr = min(_threshold(ball.hi), Qmax)
        if thr > covered:
            ranges.append(RefutedRange(covered + 1, thr, n))
            covered = thr
            assumed.extend(used)
        if covered >= Qmax:
            break
    values = {"ranges": ranges, "max_n": max((r.n for r in ranges), default=None),
              "unrefuted_from": None if covered >= Qmax else covered + 1,
              "alpha_unit": {n: u[0] for n, u in zip(ns, units) if u[0] is not None}}
    if covered >= Qmax:
        verdict = Verdict.certified(f"every denominator q <= {Qmax} refuted", assumed)
    else:
        verdict = Verdict.inconclusive(f"denominators {covered + 1}..{Qmax} not refuted "
                                       f"for n <= {nmax}", assumed)
    return Report("refute-rational", verdict, values, (s.first_index, nmax), notes)


def _threshold(hi: Fraction) -> int:
    """Largest q with q * hi < 1."""
    inv = 1 / hi
    return math.ceil(inv) - 1
