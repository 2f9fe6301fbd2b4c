"""Rationality witnesses for Cantor-type series sum b(n) / (a(1)...a(n)).

The sum is rational exactly when some B >= 1 and integers c(n) satisfy, for
all large n,

    B b(n) = c(n) a(n) - c(n+1)   and   |c(n+1)| < a(n) / 2.

Given B and a start N, c is forced: c(N) is the nearest integer to
B b(N) / a(N) and every later value follows from the linear relation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import DEFAULT_PRECISION, InconclusiveError, Precision, RatBall
from .primes import prime_ratio_window
from .seqdsl import (AsymptoticClaim, EventuallyGe, EventuallyPositive, MonotoneNondecreasing,
                     SequenceDef, Window, check_fact_on_window)
from .series import SeriesInstance, tail_enclosure
from .verdict import Report, Verdict, conjunction, int_str


def round_half_away(x: Fraction) -> int:
    """Nearest integer; halves go away from zero."""
    n, d = x.numerator, x.denominator
    q = (2 * abs(n) + d) // (2 * d)
    return q if n >= 0 else -q


@dataclass(frozen=True)
class ESWitness:
    B: int
    N: int
    c: tuple  # c(N), ..., c(N + len)

    @property
    def length(self) -> int:
        return len(self.c) - 1

    def at(self, n: int) -> int:
        return self.c[n - self.N]

    def to_json(self) -> dict:
        return {"B": self.B, "N": self.N, "c": [int_str(v) for v in self.c]}


def _require_cantor(s: SeriesInstance) -> None:
    if s.form != "cantor":
        raise ValueError("the witness criterion needs a cantor-form series")


def construct_c(s: SeriesInstance, B: int, N: int, length: int) -> ESWitness:
    _require_cantor(s)
    if B < 1:
        raise ValueError("B must be >= 1")
    c = [round_half_away(Fraction(B * s.b_term(N), s.a_term(N)))]
    for n in range(N, N + length):
        a, b = s.a_term(n), s.b_term(n)
        nxt = c[-1] * a - B * b
        assert B * b == c[-1] * a - nxt
        c.append(nxt)
    return ESWitness(B, N, tuple(c))


def verify_witness(s: SeriesInstance, w: ESWitness) -> Verdict:
    """Re-check both conditions from the raw integers at n = N .. N+len-1."""
    for i in range(w.length):
        n = w.N + i
        a, b = s.a_term(n), s.b_term(n)
        cn, cnext = w.c[i], w.c[i + 1]
        if w.B * b != cn * a - cnext:
            return Verdict.refuted(n, f"linear relation fails at n={n}")
        if not 2 * abs(cnext) < a:
            return Verdict.refuted(n, f"|c({n + 1})| = {abs(cnext)} is not below a({n})/2")
    return Verdict.certified(f"criterion holds for n in [{w.N}, {w.N + w.length - 1}]")


@dataclass(frozen=True)
class SearchResult:
    witness: ESWitness | None
    verdict: Verdict
    Bmax: int
    Nmax: int
    length: int

    def to_json(self) -> dict:
        return {"witness": None if self.witness is None else self.witness.to_json(),
                "verdict": self.verdict.to_json(),
                "bounds": {"Bmax": self.Bmax, "Nmax": self.Nmax, "len": self.length}}


def _first_for_B(s: SeriesInstance, B: int, Ns: range, length: int):
    for N in Ns:
        w = construct_c(s, B, N, length)
        if verify_witness(s, w).is_certified:
            return w
    return None


def search_witness(s: SeriesInstance, Bmax: int, Nmax: int, length: int,
                   jobs: int = 1) -> SearchResult:
    """Least (B, N) in lexicographic order whose witness verifies on the window.

    No witness within the bounds is reported as Inconclusive, never as a
    proof of irrationality.
    """
    _require_cantor(s)
    if min(Bmax, Nmax, length) < 1:
        raise ValueError("Bmax, Nmax and len must be >= 1")
    Ns = range(s.first_index, max(Nmax, s.first_index) + 1)
    # warm the memo so worker threads only read
    for n in range(s.first_index, Ns.stop + length + 1):
        s.a_term(n), s.b_term(n)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(lambda B: _first_for_B(s, B, Ns, length), range(1, Bmax + 1)))
    else:
        found = []
        for B in range(1, Bmax + 1):
            found.append(_first_for_B(s, B, Ns, length))
            if found[-1] is not None:
                break
    for w in found:
        if w is not None:
            return SearchResult(w, Verdict.certified(f"witness B={w.B}, N={w.N}"), Bmax, Nmax, length)
    return SearchResult(None, Verdict.inconclusive(
        f"no witness with B <= {Bmax}, N <= {Nmax} on windows of length {length}"), Bmax, Nmax, length)


@dataclass(frozen=True)
class RSequence:
    """R(n) = B a(1)...a(n-1) sum_{k > n} b(k)/(a(1)...a(k)) as balls.

    ``residuals[i]`` is R(n+1) - (a(n) R(n) - B b(n+1)/a(n+1)) for n = start+i;
    every residual ball must contain 0.
    """

    start: int
    B: int
    values: tuple
    residuals: tuple
    consistent: tuple
    small: tuple
    assumed: tuple = ()

    @property
    def verdict(self) -> Verdict:
        for i, r in enumerate(self.residuals):
            if not r.contains_zero():
                return Verdict.refuted(self.start + i, "recursion residual excludes 0")
        return Verdict.certified("recursion residuals contain 0", self.assumed)

    def to_json(self) -> dict:
        return {"start": self.start, "B": self.B,
                "values": list(self.values), "residuals": list(self.residuals),
                "consistent_with_c": list(self.consistent), "abs_below_quarter": list(self.small)}


def r_sequence(s: SeriesInstance, B: int, N: int, length: int, prec: Precision | None = None,
               facts=None) -> RSequence:
    _require_cantor(s)
    prec = prec or DEFAULT_PRECISION
    vals, assumed = [], []
    for n in range(N, N + length + 1):
        scale = B * s.partial_product(n - 1)
        enc = tail_enclosure(s, n, facts, width=prec.target_width / scale)
        if enc.ball.width > prec.target_width / scale:
            raise InconclusiveError(f"tail enclosure too wide at n={n}")
        vals.append(enc.ball * scale)
        assumed.extend(enc.assumed)
    residuals = []
    for i in range(length):
        n = N + i
        pred = vals[i] * s.a_term(n) - Fraction(B * s.b_term(n + 1), s.a_term(n + 1))
        residuals.append(vals[i + 1] - pred)
    w = construct_c(s, B, N, length)
    consistent = tuple(RatBall.point(w.at(n) - Fraction(B * s.b_term(n), s.a_term(n))).overlaps(vals[n - N])
                       for n in range(N, N + length + 1))
    quarter = Fraction(1, 4)
    small = tuple(N + i for i, v in enumerate(vals) if abs(v).hi < quarter)
    return RSequence(N, B, tuple(vals), tuple(residuals), consistent, small, tuple(dict.fromkeys(assumed)))


def _ratio_values(s: SeriesInstance, window: Window):
    out = {}
    for n in window:
        if n - 1 < s.first_index:
            continue
        out[n] = Fraction(abs(s.b_term(n)), s.a_term(n - 1) * s.a_term(n))
    return out


def check_thm21_hypotheses(s: SeriesInstance, window: Window) -> Report:
    """a(n) > 1 on the window, plus the decay of |b(n)|/(a(n-1) a(n))."""
    _require_cantor(s)
    gt1 = check_fact_on_window(s.a, EventuallyGe(start=window.start, on="a", bound=2), window)
    ratios = _ratio_values(s, window)
    notes = []
    seq = list(ratios.values())
    if seq and seq[-1] >= seq[0]:
        notes.append("no decay observed")
    elif seq and all(x >= y for x, y in zip(seq, seq[1:])):
        notes.append("decreasing on window")
    limit = AsymptoticClaim(start=window.start, on="terms",
                            statement="|b(n)|/(a(n-1) a(n)) -> 0")
    verdict = gt1.with_assumed([limit])
    return Report("erdos-straus-hypotheses", verdict, {"ratio": ratios}, window.as_tuple(), notes)


def check_cor210(s: SeriesInstance, window: Window) -> Report:
    """Window diagnostics for the extra hypotheses giving irrationality.

    b(n) > 0 and a(n+1) >= a(n) are checked exactly; the two limit conditions
    are reported through their per-index values and assumed.
    """
    _require_cantor(s)
    pos = check_fact_on_window(s.b, EventuallyPositive(start=window.start, on="b"), window)
    mono = check_fact_on_window(s.a, MonotoneNondecreasing(start=window.start, on="a"), window)
    running_min, mins = None, {}
    diffs = {}
    for n in window:
        b = s.b_term(n)
        if b > 0:
            r = Fraction(s.a_term(n), b)
            running_min = r if running_min is None else min(running_min, r)
            mins[n] = running_min
        diffs[n] = Fraction(s.b_term(n + 1) - b, s.a_term(n))
    notes = []
    signs = [d for d in diffs.values()]
    if all(d <= 0 for d in signs[len(signs) // 2:]):
        notes.append("(b(n+1)-b(n))/a(n) nonpositive on the second half of the window")
    if mins:
        first, last = mins[min(mins)], mins[max(mins)]
        notes.append("running min of a(n)/b(n) " + ("decreasing" if last < first else "flat"))
    claims = (AsymptoticClaim(start=window.start, on="terms", statement="lim (b(n+1)-b(n))/a(n) <= 0"),
              AsymptoticClaim(start=window.start, on="terms", statement="liminf a(n)/b(n) = 0"))
    base = conjunction([pos, mono])
    verdict = Verdict.inconclusive("limit hypotheses cannot be decided on a window"
                                   + ("" if base.is_certified else f"; {base}"),
                                   (*base.assumed, *claims))
    if base.is_refuted:
        verdict = Verdict.refuted(base.index, base.reason, (*base.assumed, *claims))
    values = {"running_min_a_over_b": mins, "b_diff_over_a": diffs,
              "b_positive": pos.to_json(), "a_nondecreasing": mono.to_json()}
    return Report("erdos-straus-corollary", verdict, values, window.as_tuple(), notes)


def check_thm31_prime(a: SequenceDef, window: Window) -> Report:
    """Hypotheses for sum p(n)/(a(1)...a(n)) with p(n) the n-th prime."""
    mono = check_fact_on_window(a, MonotoneNondecreasing(start=window.start, on="a"), window)
    pos = check_fact_on_window(a, EventuallyGe(start=window.start, on="a", bound=1), window)
    b = SequenceDef.primes(first_index=a.first_index, name="b")
    s = SeriesInstance(a, b, "cantor")
    p_over_a2, a_over_p = {}, {}
    run = None
    for n in window:
        an, pn = s.a_term(n), s.b_term(n)
        p_over_a2[n] = Fraction(pn, an * an)
        r = Fraction(an, pn)
        run = r if run is None else min(run, r)
        a_over_p[n] = run
    notes = []
    seq = list(p_over_a2.values())
    if all(x >= y for x, y in zip(seq, seq[1:])):
        notes.append("p(n)/a(n)^2 decreasing on window")
    elif seq and seq[-1] < seq[0]:
        notes.append("p(n)/a(n)^2 lower at the window end, not monotone")
    mins = list(a_over_p.values())
    if mins and mins[-1] >= mins[0]:
        notes.append("running min of a(n)/p(n) shows no decrease")
    first = max(window.start, 1)
    stats = prime_ratio_window(first, window.stop + 1)
    claims = (AsymptoticClaim(start=window.start, statement="p(n)/a(n)^2 -> 0"),
              AsymptoticClaim(start=window.start, statement="liminf a(n)/p(n) = 0"),
              AsymptoticClaim(start=window.start, statement="p(n+1)/p(n) -> 1"))
    base = conjunction([mono, pos])
    if base.is_refuted:
        verdict = Verdict.refuted(base.index, base.reason, claims)
    else:
        verdict = Verdict.inconclusive("limit hypotheses cannot be decided on a window",
                                       (*base.assumed, *claims))
    values = {"p_over_a_squared": p_over_a2, "running_min_a_over_p": a_over_p,
              "prime_ratio_max": stats.max_ratio, "prime_ratio_argmax": stats.argmax}
    return Report("prime-series", verdict, values, window.as_tuple(), notes)
