"""Command-line front end.

Every command prints one JSON report.  Exit status: 0 when the analysis ran
(whatever the verdict), 1 for bad input, 2 when a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .erdos_straus import (check_cor210, check_thm21_hypotheses, check_thm31_prime, r_sequence,
                           search_witness)
from .exact_arith import DEFAULT_PRECISION, InconclusiveError, Precision, RatBall
from .hancl import (check_hancl_cor2, check_hancl_thm3, cor2_product,
                    refute_rational_candidates)
from .primes import PrimeCapError, double_sqrt_check, prime_ratio_window
from .roth import (approximants, check_hr_thm21, check_hr_thm22, counterexample_sequence,
                   transcendence_report)
from .seqdsl import ResourceCapError, SeqError, Window
from .series import denominator_refutation, refine_enclosure
from .specfile import SpecError, load_spec, validate
from .verdict import Report, Verdict, conjunction, jsonable, rat_str

PREC_ENV = "IRRSERIES_PREC"

# which series form each spec-taking command accepts
FORM_OF = {
    "eval": None,
    "erdos-straus": "cantor",
    "erdos-straus-cor": "cantor",
    "prime-series": "cantor",
    "hancl": "plain",
    "hancl-cor2": "plain",
    "hancl-rucki-1": "plain",
    "hancl-rucki-2": "plain",
    "roth": "plain",
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # bad flags are input errors: exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive_frac(text: str) -> Fraction:
    v = _frac(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _precision(text: str | None) -> Precision:
    if text is None:
        text = os.environ.get(PREC_ENV)
    if text is None:
        return DEFAULT_PRECISION
    try:
        return Precision(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid precision {text!r}; expected a positive width like 1e-30") from None


def decimal_text(x: Fraction, digits: int = 30) -> str:
    """x rounded to ``digits`` decimals, written exactly."""
    scaled = round(abs(x) * 10**digits)
    sign = "-" if x < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).rjust(digits, '0')}"


# ---------------------------------------------------------------------------
# commands; each returns a Report

def cmd_eval(args, spec, prec):
    try:
        enc = refine_enclosure(spec.series, prec, depth=args.depth)
    except InconclusiveError as exc:
        return Report("eval", Verdict.inconclusive(exc.reason))
    ball = enc.ball
    values = {"enclosure": ball, "width": ball.width, "depth": enc.depth,
              "partial_sum": spec.series.partial_sum(enc.depth),
              "decimal": f"{decimal_text(ball.mid)} +/- {decimal_text(ball.width / 2 + Fraction(1, 10**30))}"}
    verdict = Verdict.certified(f"value enclosed with width <= {rat_str(prec.target_width)}",
                                enc.assumed)
    return Report("eval", verdict, values, (spec.series.first_index, enc.depth))


def cmd_erdos_straus(args, spec, prec):
    s = spec.series
    res = search_witness(s, args.Bmax, args.Nmax, args.len, jobs=args.jobs)
    values = {"search": res}
    parts = [res.verdict]
    notes = []
    if res.witness is not None:
        try:
            rs = r_sequence(s, res.witness.B, res.witness.N, args.rlen, prec)
            values["r_sequence"] = rs
            parts.append(rs.verdict)
        except InconclusiveError as exc:
            notes.append(f"R sequence not computed: {exc.reason}")
    hyp = check_thm21_hypotheses(s, Window(max(s.first_index + 1, 2), s.first_index + args.len))
    values["hypotheses"] = hyp
    if args.qmax:
        refs = {q: denominator_refutation(s, q, args.nmax, prec) for q in range(1, args.qmax + 1)}
        values["denominators"] = refs
        left = [q for q, v in refs.items() if not v.is_refuted]
        values["unrefuted_denominators"] = left
        notes.append(f"{args.qmax - len(left)} of {args.qmax} denominators refuted")
    verdict = conjunction(parts, res.verdict.reason)
    if not res.verdict.is_certified:
        verdict = res.verdict
    return Report("erdos-straus", verdict, values, None, notes)


def cmd_erdos_straus_cor(args, spec, prec):
    rep = check_cor210(spec.series, Window(args.from_, args.to))
    rep.values["hypotheses"] = check_thm21_hypotheses(spec.series, Window(max(args.from_, 2), args.to))
    return rep


def cmd_prime_series(args, spec, prec):
    if spec.series.b.kind != "primes":
        raise UsageError("prime-series needs b of kind 'primes'")
    return check_thm31_prime(spec.series.a, Window(args.from_, args.to))


def cmd_hancl(args, spec, prec):
    s = spec.series
    product = spec.product or cor2_product(s.first_index)
    rep = check_hancl_thm3(s, product, args.A, args.s, Window(args.from_, args.to), prec)
    if args.Qmax is not None:
        ref = refute_rational_candidates(s, args.Qmax, args.nmax, prec, jobs=args.jobs)
        rep.values["refutation"] = ref
        rep.notes.append(f"rational candidates: {ref.verdict}")
    if spec.product is None:
        rep.notes.append("no d sequence in spec; using d(n) = 1 + (2/3)^n")
    return rep


def cmd_hancl_cor2(args, spec, prec):
    return check_hancl_cor2(spec.series, args.A, Window(args.from_, args.to), prec, args.start)


def cmd_hancl_rucki_1(args, spec, prec):
    rep = check_hr_thm21(spec.series, args.delta, (args.from_, args.to), prec)
    try:
        rep.values["kappa"] = approximants(spec.series, args.kmax, prec)
    except InconclusiveError as exc:
        rep.notes.append(f"kappa table not computed: {exc.reason}")
    return rep


def cmd_hancl_rucki_2(args, spec, prec):
    return check_hr_thm22(spec.series, args.delta, args.eps, args.t, (args.from_, args.to), prec)


def cmd_roth(args, spec, prec):
    return transcendence_report(spec.series, args.delta, args.kmax, prec)


def cmd_counterexample(args, spec, prec):
    if args.delta <= 0 or args.a1 < 2 or args.A <= 1 or args.kmax < 1:
        raise UsageError("need --delta > 0, --a1 >= 2, --A > 1 and --kmax >= 1")
    return counterexample_sequence(args.delta, args.a1, args.kmax, args.A)[1]


def cmd_primes(args, spec, prec):
    if args.nmin < 1 or args.nmax < args.nmin:
        raise UsageError("need 1 <= --nmin <= --nmax")
    stats = prime_ratio_window(args.nmin, args.nmax)
    parts = []
    values = {"ratio_window": stats}
    if args.ratio_bound is not None and not stats.empty:
        ok = stats.max_ratio <= args.ratio_bound
        parts.append(Verdict.certified(f"max p(n+1)/p(n) <= {args.ratio_bound}") if ok
                     else Verdict.refuted(stats.argmax, f"p(n+1)/p(n) > {args.ratio_bound}"))
    checks = {}
    for n in args.N or ():
        c = double_sqrt_check(n, args.epsilon, prec)
        checks[n] = c
        parts.append(c.verdict)
    values["double_sqrt"] = checks
    if not parts:
        verdict = Verdict.inconclusive("no inequality requested; values only")
    else:
        verdict = conjunction(parts)
    return Report("primes", verdict, values, (args.nmin, args.nmax))


COMMANDS = {
    "eval": cmd_eval,
    "erdos-straus": cmd_erdos_straus,
    "erdos-straus-cor": cmd_erdos_straus_cor,
    "prime-series": cmd_prime_series,
    "hancl": cmd_hancl,
    "hancl-cor2": cmd_hancl_cor2,
    "hancl-rucki-1": cmd_hancl_rucki_1,
    "hancl-rucki-2": cmd_hancl_rucki_2,
    "roth": cmd_roth,
    "counterexample": cmd_counterexample,
    "primes": cmd_primes,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec", help=f"target width, e.g. 1e-30 (default from ${PREC_ENV})")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    def window(p, lo, hi):
        p.add_argument("--from", dest="from_", type=int, default=lo)
        p.add_argument("--to", type=int, default=hi)

    parser = _Parser(prog="irrseries", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="enclose the value of a series")
    p.add_argument("spec")
    p.add_argument("--depth", type=int)
    p.set_defaults(name="eval")

    check = sub.add_parser("check", help="criterion checks").add_subparsers(dest="check",
                                                                             required=True)
    p = check.add_parser("erdos-straus", parents=[common])
    p.add_argument("spec")
    p.add_argument("--Bmax", type=int, default=16)
    p.add_argument("--Nmax", type=int, default=10)
    p.add_argument("--len", type=int, default=40)
    p.add_argument("--rlen", type=int, default=20)
    p.add_argument("--qmax", type=int, default=0)
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(name="erdos-straus")

    p = check.add_parser("erdos-straus-cor", parents=[common])
    p.add_argument("spec")
    window(p, 1, 40)
    p.set_defaults(name="erdos-straus-cor")

    p = check.add_parser("prime-series", parents=[common])
    p.add_argument("spec")
    window(p, 1, 200)
    p.set_defaults(name="prime-series")

    p = check.add_parser("hancl", parents=[common])
    p.add_argument("spec")
    p.add_argument("--A", type=_positive_frac, required=True)
    p.add_argument("--s", type=int, default=1)
    window(p, 1, 8)
    p.add_argument("--Qmax", type=int)
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(name="hancl")

    p = check.add_parser("hancl-cor2", parents=[common])
    p.add_argument("spec")
    p.add_argument("--A", type=_positive_frac, required=True)
    p.add_argument("--start", type=int, default=6)
    window(p, 6, 12)
    p.set_defaults(name="hancl-cor2")

    p = check.add_parser("hancl-rucki-1", parents=[common])
    p.add_argument("spec")
    p.add_argument("--delta", type=_positive_frac, default=Fraction(1))
    p.add_argument("--kmax", type=int, default=6)
    window(p, 1, 6)
    p.set_defaults(name="hancl-rucki-1")

    p = check.add_parser("hancl-rucki-2", parents=[common])
    p.add_argument("spec")
    p.add_argument("--delta", type=_positive_frac, default=Fraction(1))
    p.add_argument("--eps", type=_positive_frac, default=Fraction(1))
    p.add_argument("--t", type=int, default=1)
    window(p, 1, 6)
    p.set_defaults(name="hancl-rucki-2")

    p = sub.add_parser("counterexample", parents=[common], help="the even-index counterexample")
    p.add_argument("--delta", type=_frac, default=Fraction(1))
    p.add_argument("--a1", type=int, default=2)
    p.add_argument("--A", type=_frac, default=Fraction(3))
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(name="counterexample")

    p = sub.add_parser("primes", parents=[common], help="prime gap diagnostics")
    p.add_argument("--nmin", type=int, default=1)
    p.add_argument("--nmax", type=int, default=1000)
    p.add_argument("--epsilon", type=_positive_frac, default=Fraction(1, 10))
    p.add_argument("--N", type=int, action="append", help="check the double-index bound at N")
    p.add_argument("--ratio-bound", type=_positive_frac)
    p.set_defaults(name="primes")

    p = sub.add_parser("roth", parents=[common], help="effective irrationality exponents")
    p.add_argument("spec")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--delta", type=_positive_frac, default=Fraction(1))
    p.set_defaults(name="roth")
    return parser


def _inputs(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("output", "command", "check", "name") or v is None:
            continue
        out[k.rstrip("_")] = jsonable(v)
    return out


def run(args) -> tuple[int, dict | None, str]:
    """Run parsed arguments; returns (exit code, report, error message)."""
    t0 = time.perf_counter()
    try:
        prec = _precision(args.prec)
        spec = None
        if hasattr(args, "spec"):
            spec = load_spec(args.spec)
            need = FORM_OF[args.name]
            if need is not None and spec.form != need:
                raise UsageError(f"{args.name} requires a {need}-form series; "
                                 f"the spec is {spec.form}-form")
        try:
            report = COMMANDS[args.name](args, spec, prec)
        except InconclusiveError as exc:
            report = Report(args.name, Verdict.inconclusive(exc.reason))
        doc = report.to_json()
    except (ResourceCapError, PrimeCapError, MemoryError) as exc:
        return 2, None, f"resource cap: {exc}"
    except (SpecError, UsageError, SeqError, ValueError, ArithmeticError) as exc:
        return 1, None, str(exc)
    inputs = _inputs(args)
    if spec is not None:
        inputs["spec_document"] = spec.doc
    doc.update({"inputs": inputs, "precision": rat_str(prec.target_width), "version": __version__,
                "runtime_ms": int((time.perf_counter() - t0) * 1000)})
    validate(doc, "report")
    return 0, doc, ""


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, doc, err = run(args)
    if err:
        print(f"irrseries: error: {err}", file=sys.stderr)
    if doc is not None:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
