"""Effective irrationality exponents from partial sums of plain series.

For each k the partial sum p/q (lowest terms) approximates the sum alpha with
|alpha - p/q| = tail(k).  The exponent kappa = -ln(tail) / ln(q) exceeding 2
infinitely often rules out alpha algebraic irrational, *given* Roth's theorem,
which is carried as an explicit assumption and never applied silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import (DEFAULT_PRECISION, InconclusiveError, Ordering, Precision, RatBall,
                          ball_ln, ball_powr, cmp_certified)
from .seqdsl import AsymptoticClaim, SequenceDef, parse_sequence
from .series import SeriesInstance, positive_b_fact, tail_enclosure
from .verdict import Report, Verdict, conjunction, int_str

ROTH = AsymptoticClaim(start=1, on="terms", statement=(
    "Roth's theorem: an algebraic irrational has only finitely many coprime "
    "approximations |x - p/q| < q^-kappa with kappa > 2"))


@dataclass(frozen=True)
class Approximant:
    k: int
    p: int
    q: int
    q_product: int
    gap: RatBall
    kappa: RatBall | None = None
    kappa_lower: Fraction | None = None  # for gap = [0, x]: kappa >= this
    kappa_product: RatBall | None = None
    note: str = ""

    @property
    def exceeds_two(self) -> bool:
        """Certified kappa > 2 for the reduced denominator."""
        if self.kappa is not None:
            return self.kappa.lo > 2
        return self.kappa_lower is not None and self.kappa_lower > 2

    def to_json(self) -> dict:
        out = {"k": self.k, "p": int_str(self.p), "q": int_str(self.q), "gap": self.gap}
        for key in ("kappa", "kappa_lower", "kappa_product"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.note:
            out["note"] = self.note
        return out


def _kappa(gap: RatBall, q: int, prec: Precision) -> tuple[RatBall | None, Fraction | None, str]:
    if q == 1:
        return None, None, "q = 1: ln q is zero"
    if gap.hi == 0:
        return None, None, "tail is exactly zero: kappa is infinite"
    lnq = ball_ln(RatBall.point(q), prec)
    if gap.lo == 0:
        return None, (-ball_ln(RatBall.point(gap.hi), prec) / lnq).lo, "gap ball touches 0"
    return -ball_ln(gap, prec) / lnq, None, ""


def approximants(s: SeriesInstance, kmax: int, prec: Precision | None = None,
                 facts=None) -> list[Approximant]:
    if s.form != "plain":
        raise ValueError("approximants are taken from plain-form series")
    prec = prec or DEFAULT_PRECISION
    facts = tuple(facts or ()) + positive_b_fact(s, kmax + 1)
    out = []
    for k in range(s.first_index, kmax + 1):
        ps = s.partial_sum(k)
        enc = tail_enclosure(s, k, facts, width=prec.target_width, relative=True)
        gap = abs(enc.ball)
        kappa, lower, note = _kappa(gap, ps.denominator, prec)
        kp = None
        Q = s.partial_product(k)
        if Q > 1 and gap.lo > 0:
            kp = -ball_ln(gap, prec) / ball_ln(RatBall.point(Q), prec)
        out.append(Approximant(k, ps.numerator, ps.denominator, Q, gap, kappa, lower, kp, note))
    return out


def _log_int(x: int, prec: Precision) -> RatBall:
    return ball_ln(RatBall.point(x), prec)


def _limsup_diagnostic(s: SeriesInstance, exponent: Fraction, window, prec: Precision) -> dict:
    """ln of a(k+1) / (a(1)...a(k))^exponent / b(k+1), with new-maximum indices."""
    logs, new_max = {}, []
    best = None
    for k in window:
        v = (_log_int(s.a_term(k + 1), prec) - _log_int(s.partial_product(k), prec) * exponent
             - _log_int(s.b_term(k + 1), prec))
        logs[k] = v
        if best is None or v.lo > best.hi:
            new_max.append(k)
            best = v
        elif v.hi > best.hi:
            best = RatBall(max(best.lo, v.lo), v.hi)
    ks = list(window)
    late = [k for k in new_max if k > ks[len(ks) // 2]] if ks else []
    return {"log_quantity": logs, "new_maxima": new_max, "growing_late": bool(late)}


def _window(s: SeriesInstance, window) -> range:
    start, stop = window
    return range(max(start, s.first_index), stop + 1)


def check_hr_thm21(s: SeriesInstance, delta, window: tuple[int, int],
                   prec: Precision | None = None) -> Report:
    """limsup a(k+1) / (prod a)^(2+delta) / b(k+1) = oo and
    liminf (a(k+1)/a(k)) (b(k)/b(k+1)) > 1, on a window."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    prec = prec or DEFAULT_PRECISION
    ks = _window(s, window)
    diag = _limsup_diagnostic(s, 2 + delta, ks, prec)
    notes = [] if diag["growing_late"] else ["no divergence observed"]
    ratios = {k: Fraction(s.a_term(k + 1) * s.b_term(k), s.a_term(k) * s.b_term(k + 1)) for k in ks}
    if ratios:
        kmin = min(ratios, key=lambda k: (ratios[k], k))
        low = ratios[kmin]
        part = (Verdict.certified(f"ratio > 1 on window, min {low} at k={kmin}") if low > 1
                else Verdict.refuted(min(k for k in ratios if ratios[k] <= 1),
                                     "ratio (a(k+1)/a(k)) (b(k)/b(k+1)) <= 1"))
    else:
        kmin = low = None
        part = Verdict.inconclusive("empty window")
    claims = (AsymptoticClaim(start=ks.start, statement=f"limsup a(k+1)/(prod a)^{2 + delta}/b(k+1) = oo"),
              AsymptoticClaim(start=ks.start, statement="liminf (a(k+1)/a(k)) (b(k)/b(k+1)) > 1"))
    values = {**diag, "ratio": ratios, "ratio_min": low, "ratio_argmin": kmin,
              "ratio_margin": None if low is None else low - 1}
    return Report("hancl-rucki-1", part.with_assumed(claims), values, (ks.start, ks.stop - 1), notes)


def thm22_exponent(delta, eps) -> Fraction:
    return 2 + 2 / Fraction(eps) + Fraction(delta)


def check_hr_thm22(s: SeriesInstance, delta, eps, t: int, window: tuple[int, int],
                   prec: Precision | None = None) -> Report:
    """Same limsup with exponent 2 + 2/eps + delta, and the root gap
    (a(k+1)/b(k+1))^(1/(1+eps)) >= (a(k)/b(k))^(1/(1+eps)) + 1 for k >= t."""
    delta, eps = Fraction(delta), Fraction(eps)
    if delta <= 0 or eps <= 0:
        raise ValueError("delta and eps must be positive")
    prec = prec or DEFAULT_PRECISION
    ks = _window(s, window)
    expo = thm22_exponent(delta, eps)
    diag = _limsup_diagnostic(s, expo, ks, prec)
    notes = [] if diag["growing_late"] else ["no divergence observed"]
    y = RatBall.point(1 / (1 + eps))
    gaps = {}
    part = Verdict.certified(f"root gap holds on [{max(t, ks.start)}, {ks.stop - 1}]")
    for k in range(max(t, ks.start), ks.stop):
        x1 = RatBall.point(Fraction(s.a_term(k + 1), s.b_term(k + 1)))
        x0 = RatBall.point(Fraction(s.a_term(k), s.b_term(k)))
        pr = prec
        for _ in range(3):
            lhs, rhs = ball_powr(x1, y, pr), ball_powr(x0, y, pr) + 1
            if lhs.lo >= rhs.hi or lhs.hi < rhs.lo:
                break
            pr = pr.doubled()
        gaps[k] = {"lhs": lhs, "rhs": rhs}
        if lhs.hi < rhs.lo:
            part = Verdict.refuted(k, f"root gap fails at k={k}")
            break
        if not lhs.lo >= rhs.hi:
            part = Verdict.inconclusive(f"root gap undecided at k={k}")
            break
    claims = (AsymptoticClaim(start=ks.start, statement=f"limsup a(k+1)/(prod a)^{expo}/b(k+1) = oo"),)
    values = {**diag, "exponent": expo, "root_gap": gaps}
    return Report("hancl-rucki-2", part.with_assumed(claims), values, (ks.start, ks.stop - 1), notes)


def transcendence_report(s: SeriesInstance, delta, kmax: int, prec: Precision | None = None,
                         facts=None) -> Report:
    """Approximants plus hypothesis checks; any transcendence reading rests on Roth."""
    prec = prec or DEFAULT_PRECISION
    if kmax < s.first_index:
        return Report("roth", Verdict.inconclusive("empty window", (ROTH,)),
                      {"approximants": [], "count_kappa_above_2": 0})
    apps = approximants(s, kmax, prec, facts)
    good = [ap.k for ap in apps if ap.exceeds_two]
    trend = {ap.k: ap.kappa.mid if ap.kappa is not None else ap.kappa_lower for ap in apps}
    hyp = check_hr_thm21(s, delta, (s.first_index, kmax - 1), prec) if kmax > s.first_index else None
    parts = [hyp.verdict] if hyp else []
    if not good:
        parts.append(Verdict.inconclusive("no approximant with certified kappa > 2"))
    verdict = conjunction(parts, f"{len(good)} approximants with kappa > 2").with_assumed((ROTH,))
    notes = ["a transcendence conclusion depends on Roth's theorem, assumed and not verified"]
    values = {"approximants": apps, "count_kappa_above_2": len(good), "kappa_above_2_at": good,
              "kappa_trend": trend}
    if hyp:
        values["hypotheses"] = hyp.to_json()
    return Report("roth", verdict, values, (s.first_index, kmax), notes)


# ---------------------------------------------------------------------------
# a(k+1) = k (a(1)...a(k))^ceil(2+delta) for odd k, 2 a(k) for even k; b = 1

def counterexample_def(delta, a1: int = 2) -> SequenceDef:
    e = math.ceil(2 + Fraction(delta))
    odd = "((n-1) - 2*floor_div(n-1, 2))"
    text = f"{odd}*(n-1)*prodprefix(t, n-1)^{e} + (1 - {odd})*2*t(n-1)"
    return parse_sequence(text, name="a", base=[a1])


def counterexample_sequence(delta, a1: int = 2, kmax: int = 12, A=2) -> tuple[SeriesInstance, Report]:
    """Terms a(1)..a(kmax+1) and the k in [1, kmax] where a(k+1) <= A a(k),
    i.e. where (1/A)(b(k)/a(k)) > b(k+1)/a(k+1) fails."""
    delta, A = Fraction(delta), Fraction(A)
    if delta <= 0 or a1 < 2 or A <= 1 or kmax < 1:
        raise ValueError("need delta > 0, a1 >= 2, A > 1 and kmax >= 1")
    a = counterexample_def(delta, a1)
    s = SeriesInstance(a, parse_sequence("1", name="b"), "plain")
    terms = [s.a_term(k) for k in range(1, kmax + 2)]
    e = math.ceil(2 + delta)
    failures = [k for k in range(1, kmax + 1) if terms[k] <= A * terms[k - 1]]
    branch_ok = all(terms[k] == 2 * terms[k - 1] if k % 2 == 0
                    else terms[k] % s.partial_product(k) ** e == 0 for k in range(1, kmax + 1))
    if failures:
        verdict = Verdict.refuted(failures[0], f"a(k+1) <= {A} a(k) at k={failures}")
    else:
        verdict = Verdict.certified(f"a(k+1) > {A} a(k) for every k in [1, {kmax}]")
    values = {"terms": [int_str(v) for v in terms], "failures": failures, "exponent": e,
              "A": A, "branch_identity": branch_ok}
    return s, Report("counterexample", verdict, values, (1, kmax))
