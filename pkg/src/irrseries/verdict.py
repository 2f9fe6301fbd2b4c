"""Three-valued verdicts and analysis reports."""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .exact_arith import RatBall


class Status(enum.Enum):
    CERTIFIED_TRUE = "CertifiedTrue"
    REFUTED = "RefutedAt"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a finite check.

    ``assumed`` lists the declared facts (and asymptotic claims) that were
    only audited on the analysis window and are taken on trust beyond it.
    A refutation carries a concrete index that can be re-checked in isolation.
    """

    status: Status
    index: int | None = None
    reason: str = ""
    assumed: tuple = ()

    @classmethod
    def certified(cls, reason: str = "", assumed: Iterable = ()) -> Verdict:
        return cls(Status.CERTIFIED_TRUE, None, reason, _dedupe(assumed))

    @classmethod
    def refuted(cls, index: int, reason: str = "", assumed: Iterable = ()) -> Verdict:
        return cls(Status.REFUTED, index, reason, _dedupe(assumed))

    @classmethod
    def inconclusive(cls, reason: str, assumed: Iterable = ()) -> Verdict:
        return cls(Status.INCONCLUSIVE, None, reason, _dedupe(assumed))

    @property
    def is_certified(self) -> bool:
        return self.status is Status.CERTIFIED_TRUE

    @property
    def is_refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def is_inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    def with_assumed(self, facts: Iterable) -> Verdict:
        return dataclasses.replace(self, assumed=_dedupe((*self.assumed, *facts)))

    def __str__(self) -> str:
        if self.is_refuted:
            return f"RefutedAt({self.index})"
        if self.is_inconclusive:
            return f"Inconclusive({self.reason})"
        return "CertifiedTrue"

    def to_json(self) -> dict:
        out = {"status": self.status.value}
        if self.index is not None:
            out["index"] = self.index
        if self.reason:
            out["reason"] = self.reason
        return out


def _dedupe(items: Iterable) -> tuple:
    seen = []
    for it in items:
        if it not in seen:
            seen.append(it)
    return tuple(seen)


def conjunction(verdicts: Iterable[Verdict], reason: str = "") -> Verdict:
    """Refuted if any part is refuted (least index), else inconclusive if any
    part is, else certified.  Assumptions are unioned."""
    verdicts = list(verdicts)
    assumed = [f for v in verdicts for f in v.assumed]
    refuted = [v for v in verdicts if v.is_refuted]
    if refuted:
        first = min(refuted, key=lambda v: v.index)
        return Verdict.refuted(first.index, first.reason or reason, assumed)
    pending = [v for v in verdicts if v.is_inconclusive]
    if pending:
        return Verdict.inconclusive("; ".join(v.reason for v in pending), assumed)
    return Verdict.certified(reason, assumed)


@dataclass
class Report:
    """Result of a named analysis: a verdict plus per-index values."""

    analysis: str
    verdict: Verdict
    values: dict[str, Any] = field(default_factory=dict)
    window: tuple[int, int] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def assumed(self) -> tuple:
        return self.verdict.assumed

    def to_json(self) -> dict:
        out = {
            "analysis": self.analysis,
            "verdict": self.verdict.to_json(),
            "assumed_facts": [describe(f) for f in self.assumed],
            "values": jsonable(self.values),
        }
        if self.window is not None:
            out["window"] = {"from": self.window[0], "to": self.window[1]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def describe(fact) -> str:
    d = getattr(fact, "describe", None)
    return d() if d else str(fact)


def int_str(n: int) -> str:
    """Decimal text of any int, regardless of the interpreter's digit limit."""
    if n < 0:
        return "-" + int_str(-n)
    if n.bit_length() < 8000:
        return str(n)
    k = int(n.bit_length() * 0.30103) // 2
    hi, lo = divmod(n, 10 ** k)
    return int_str(hi) + int_str(lo).rjust(k, "0")


def rat_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return int_str(x.numerator)
    return f"{int_str(x.numerator)}/{int_str(x.denominator)}"


def jsonable(obj):
    """Convert values to JSON-ready data; numbers become exact strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < 2**53 else int_str(obj)
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, RatBall):
        return {"lo": rat_str(obj.lo), "hi": rat_str(obj.hi)}
    if isinstance(obj, Verdict):
        return obj.to_json()
    if isinstance(obj, Report):
        return obj.to_json()
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if not f.name.startswith("_")}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"not JSON-able: {type(obj).__name__}")
