"""Series of the two shapes handled here.

``cantor``:  sum b(n) / (a(1) a(2) ... a(n))
``plain``:   sum b(n) / a(n)

Tails are only ever bounded through declared, window-audited
:class:`~irrseries.seqdsl.RatioDominated` facts; nothing is inferred from
observed trends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import (DEFAULT_PRECISION, InconclusiveError, Ordering, Precision, RatBall,
                          cmp_certified)
from .seqdsl import (DeclaredFact, EventuallyGe, EventuallyPositive, RatioDominated,
                     SequenceDef, Window, check_fact_on_window)
from .verdict import Verdict

FORMS = ("cantor", "plain")
MAX_EXTRA_TERMS = 400


@dataclass(frozen=True)
class TailBound:
    """``bound.hi`` is an upper bound for |sum_{k > n} term(k)|."""

    start: int
    bound: RatBall
    justification: tuple = ()

    @property
    def upper(self) -> Fraction:
        return self.bound.hi


@dataclass(frozen=True)
class Enclosure:
    ball: RatBall
    depth: int
    assumed: tuple = ()


@dataclass(eq=False)
class SeriesInstance:
    a: SequenceDef
    b: SequenceDef
    form: str = "cantor"
    facts: tuple = ()
    _products: list = field(default_factory=list, repr=False)
    _numerators: list = field(default_factory=list, repr=False)
    _sums: list = field(default_factory=list, repr=False)
    _audits: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}, got {self.form!r}")
        if self.a.first_index != self.b.first_index:
            raise ValueError("a and b must share a first index")
        self.facts = tuple(self.facts)

    @property
    def first_index(self) -> int:
        return self.a.first_index

    def a_term(self, n: int) -> int:
        v = self.a.term(n)
        if v < 1:
            raise ValueError(f"a({n}) = {v} is not a positive integer")
        return v

    def b_term(self, n: int) -> int:
        return self.b.term(n)

    def _grow(self, n: int) -> None:
        f = self.first_index
        while len(self._products) <= n - f:
            i = f + len(self._products)
            a = self.a_term(i)
            prev_p = self._products[-1] if self._products else 1
            p = prev_p * a
            self._products.append(p)
            if self.form == "cantor":
                prev_num = self._numerators[-1] if self._numerators else 0
                num = prev_num * a + self.b_term(i)
                self._numerators.append(num)
                self._sums.append(Fraction(num, p))
            else:
                prev_s = self._sums[-1] if self._sums else Fraction(0)
                self._sums.append(prev_s + Fraction(self.b_term(i), a))

    def partial_product(self, n: int) -> int:
        """a(first) * ... * a(n); 1 for n below the first index."""
        if n < self.first_index:
            return 1
        self._grow(n)
        return self._products[n - self.first_index]

    def partial_sum(self, n: int) -> Fraction:
        if n < self.first_index:
            return Fraction(0)
        self._grow(n)
        return self._sums[n - self.first_index]

    def term(self, n: int) -> Fraction:
        if self.form == "cantor":
            return Fraction(self.b_term(n), self.partial_product(n))
        return Fraction(self.b_term(n), self.a_term(n))

    def source(self, on: str):
        """Value function a fact with ``on=...`` refers to."""
        if on == "terms":
            return self.term
        if on == "a":
            return self.a.value
        if on == "b":
            return self.b.value
        raise ValueError(f"series facts cannot refer to {on!r}")

    def audit(self, fact: DeclaredFact, stop: int) -> Verdict:
        """Window audit of ``fact`` on [fact.start, stop], extended incrementally."""
        done, verdict = self._audits.get(fact, (fact.start - 1, None))
        if verdict is not None and not verdict.is_certified:
            return verdict
        if stop <= done:
            return verdict
        lo = max(done, fact.start) if fact.pairwise else max(done + 1, fact.start)
        v = check_fact_on_window(self.source(fact.on), fact, Window(lo, stop))
        if v.is_certified:
            v = Verdict.certified(f"holds on [{fact.start}, {stop}]", (fact,))
        self._audits[fact] = (stop, v)
        return v


def partial_product(s: SeriesInstance, n: int) -> int:
    return s.partial_product(n)


def partial_sum(s: SeriesInstance, n: int) -> Fraction:
    return s.partial_sum(n)


def _all_facts(s: SeriesInstance, facts) -> tuple:
    return tuple(s.facts) + tuple(facts or ())


def _zero_beyond(s: SeriesInstance) -> int | None:
    return s.b.zero_beyond()


def tail_bound(s: SeriesInstance, n: int, facts=None) -> TailBound:
    """Upper bound |term(n+1)| / (1 - c) from the smallest usable ratio constant."""
    z = _zero_beyond(s)
    if z is not None and z <= n:
        return TailBound(n, RatBall.point(0), ())
    if z is not None and z - n <= MAX_EXTRA_TERMS:
        # finitely many nonzero terms left: bound by their absolute sum
        return TailBound(n, RatBall.point(sum(abs(s.term(k)) for k in range(n + 1, z + 1))), ())
    best = None
    reasons = []
    for fact in _all_facts(s, facts):
        if not isinstance(fact, RatioDominated) or fact.on != "terms":
            continue
        if fact.start > n:
            reasons.append(f"{fact.describe()} starts after {n}")
            continue
        v = s.audit(fact, n + 1)
        if not v.is_certified:
            reasons.append(f"{fact.describe()}: {v}")
            continue
        if best is None or fact.c < best.c:
            best = fact
    if best is None:
        raise InconclusiveError("no usable ratio_dominated fact for the tail after "
                                f"n={n}" + (f" ({'; '.join(reasons)})" if reasons else ""))
    bound = abs(s.term(n + 1)) / (1 - best.c)
    return TailBound(n, RatBall.point(bound), (best,))


def positivity_from(s: SeriesInstance, n: int, facts=None) -> DeclaredFact | None:
    """A window-audited fact making every term after index n nonnegative."""
    for fact in _all_facts(s, facts):
        if fact.on not in ("b", "terms") or fact.start > n + 1:
            continue
        ok = isinstance(fact, EventuallyPositive) or (
            isinstance(fact, EventuallyGe) and not isinstance(fact.bound, str) and fact.bound >= 0)
        if ok and s.audit(fact, max(n + 1, fact.start)).is_certified:
            return fact
    return None


def positive_b_fact(s: SeriesInstance, stop: int) -> tuple:
    """An assumed b > 0 fact when b is positive on [first_index, stop], else ()."""
    if all(s.b_term(k) > 0 for k in range(s.first_index, stop + 1)):
        return (EventuallyPositive(start=s.first_index, on="b"),)
    return ()


def tail_enclosure(s: SeriesInstance, n: int, facts=None, width: Fraction | None = None,
                   relative: bool = False, max_extra: int = MAX_EXTRA_TERMS) -> Enclosure:
    """Ball containing sum_{k > n} term(k).

    Exact terms are summed up to some m > n and the remainder after m is
    bounded by :func:`tail_bound`.  ``m`` grows until the width is at most
    ``width`` (relative to the lower end when ``relative``) or ``max_extra``
    terms have been added.
    """
    z = _zero_beyond(s)
    if z is not None and z <= n:
        return Enclosure(RatBall.point(0), n)
    pos = positivity_from(s, n, facts)
    base = s.partial_sum(n)
    starts = [f.start for f in _all_facts(s, facts) if isinstance(f, RatioDominated) and f.on == "terms"]
    m = max(n, min(starts, default=n))
    if z is not None and not starts:
        m = z
    while True:
        if z is not None and z <= m:
            ball, just = RatBall.point(s.partial_sum(m) - base), ()
        else:
            tb = tail_bound(s, m, facts)
            head = s.partial_sum(m) - base
            t = tb.upper
            ball = RatBall(head if pos else head - t, head + t)
            just = tb.justification
        done = width is None and m > n
        if width is not None and m > n:
            if relative and ball.lo <= 0:
                done = True  # no relative accuracy available for a signed tail
            else:
                done = ball.width <= (width * ball.lo if relative else width)
        if done or m - n >= max_extra or ball.width == 0:
            assumed = just + ((pos,) if pos is not None else ())
            return Enclosure(ball, m, assumed)
        m += 1


def enclosure_at(s: SeriesInstance, n: int, facts=None) -> Enclosure:
    """[S(n) - T(n), S(n) + T(n)], or [S(n), S(n) + T(n)] under positivity."""
    tb = tail_bound(s, n, facts)
    sn = s.partial_sum(n)
    pos = positivity_from(s, n, facts) if tb.upper else None
    lo = sn if (pos is not None or tb.upper == 0) else sn - tb.upper
    assumed = tb.justification + ((pos,) if pos is not None else ())
    return Enclosure(RatBall(lo, sn + tb.upper), n, assumed)


def refine_enclosure(s: SeriesInstance, prec: Precision | None = None, facts=None,
                     depth: int | None = None) -> Enclosure:
    """First depth >= ``depth`` whose enclosure is narrower than the target width."""
    prec = prec or DEFAULT_PRECISION
    n = s.first_index if depth is None else max(depth, s.first_index)
    for _ in range(prec.max_work):
        enc = enclosure_at(s, n, facts)
        if enc.ball.width <= prec.target_width:
            return enc
        n += 1
    raise InconclusiveError(f"enclosure still wider than {prec.target_width} at depth {n}")


def value_enclosure(s: SeriesInstance, prec: Precision | None = None, facts=None,
                    depth: int | None = None) -> RatBall:
    return refine_enclosure(s, prec, facts, depth).ball


def ratio_test_tendsto(s: SeriesInstance, c, facts=None, window: Window | None = None) -> Verdict:
    """Summability from |term(n+1)/term(n)| -> c < 1.

    The limit itself cannot be checked; what is certified is the reduction
    to domination by (1 + c)/2 on the window, with that fact assumed beyond.
    """
    c = Fraction(c)
    if not c < 1:
        raise ValueError("ratio limit must be below 1")
    window = window or Window(s.first_index, s.first_index + 50)
    dom = (1 + c) / 2
    for n in window:
        if s.term(n) == 0:
            return Verdict.inconclusive(f"zero term at n={n}; ratio undefined")
    declared = [f for f in _all_facts(s, facts)
                if isinstance(f, RatioDominated) and f.on == "terms" and f.c <= dom]
    refuted = []
    for fact in sorted(declared, key=lambda f: (f.start, f.c)):
        v = check_fact_on_window(s.term, fact, window)
        if v.is_certified:
            return Verdict.certified(f"dominated by {fact.c} <= (1+c)/2 = {dom} on "
                                     f"[{max(window.start, fact.start)}, {window.stop}]", v.assumed)
        if v.is_refuted:
            refuted.append(v)
    if refuted:
        return min(refuted, key=lambda v: v.index)
    implied = RatioDominated(start=window.start, c=dom)
    v = check_fact_on_window(s.term, implied, window)
    if v.is_refuted:
        return Verdict.refuted(v.index, f"ratio exceeds (1+c)/2 = {dom} at n={v.index}")
    tail = [abs(s.term(n + 1) / s.term(n)) for n in range(max(window.start, window.stop - 4),
                                                        window.stop)]
    trend = ", ".join(f"{float(r):.4g}" for r in tail)
    return Verdict.inconclusive(f"no ratio_dominated fact declared; observed ratios near the "
                                f"window end: {trend}")


def e_quantity(s: SeriesInstance, q: int, n: int, facts=None, width: Fraction = Fraction(1, 16)
               ) -> Enclosure:
    """Ball for E(n) = q * a(first)...a(n) * sum_{k > n} term(k)."""
    scale = q * s.partial_product(n)
    enc = tail_enclosure(s, n, facts, width=Fraction(width) / scale)
    return Enclosure(enc.ball * scale, enc.depth, enc.assumed)


def denominator_refutation(s: SeriesInstance, q: int, nmax: int = 64,
                           prec: Precision | None = None, facts=None) -> Verdict:
    """RefutedAt(n) when E(n) is certified strictly between 0 and 1.

    If the sum were p/q, E(n) would be a positive integer for every n, so one
    such n rules out denominator q.  Needs b > 0; positivity beyond the window
    is assumed and listed.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    first = s.first_index
    if nmax < first:
        return Verdict.inconclusive("empty index range")
    stop = nmax + 1
    for n in range(first, stop + 1):
        if s.b_term(n) <= 0:
            return Verdict.inconclusive(f"b({n}) <= 0; refutation needs positive b")
    pos = EventuallyPositive(start=first, on="b")
    facts = tuple(facts or ()) + (pos,)
    width = Fraction(1, 16) if prec is None else min(Fraction(1, 16), prec.target_width)
    one = RatBall.point(1)
    last_reason = ""
    for n in range(first, nmax + 1):
        try:
            enc = e_quantity(s, q, n, facts, width)
        except InconclusiveError as exc:
            last_reason = exc.reason
            continue
        if enc.ball.lo > 0 and cmp_certified(enc.ball, one) is Ordering.LESS:
            return Verdict.refuted(n, f"E({n}) in [{float(enc.ball.lo):.3g}, {float(enc.ball.hi):.3g}]"
                                   f" for q={q}", enc.assumed + (pos,))
    return Verdict.inconclusive(f"E(n) not certified below 1 for n <= {nmax}"
                                + (f" ({last_reason})" if last_reason else ""), (pos,))
