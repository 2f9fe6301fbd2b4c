"""Rigorous enclosures of real numbers by pairs of exact rationals.

Integers and rationals are Python's ``int`` and ``fractions.Fraction``.  A
:class:`RatBall` ``[lo, hi]`` is a closed interval with rational endpoints;
every operation here returns a ball that contains the exact mathematical
result for every point of its inputs.  Transcendental functions are evaluated
with integer fixed-point arithmetic under directed rounding, so the enclosure
endpoints are dyadic rationals.

Precision semantics: on point inputs the returned ball has width at most
``prec.target_width * max(1, |value|)``, i.e. absolute for values of
magnitude below one and relative above.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

GUARD_BITS = 12
# 1/ln 2, only used to pick a reduction integer (any integer is valid)
_INV_LN2_APPROX = Fraction(14426950408889634074, 10**19)


class DomainError(ValueError):
    """Argument outside the domain of a real function."""


class InconclusiveError(ArithmeticError):
    """A certified answer could not be produced within the work budget."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class Precision:
    """Requested absolute width of results plus an iteration/term cap."""

    target_width: Fraction = Fraction(1, 10**30)
    max_work: int = 10**6

    def __post_init__(self):
        tw = _frac(self.target_width)
        object.__setattr__(self, "target_width", tw)
        if tw <= 0:
            raise ValueError("target_width must be positive")
        if self.max_work < 1:
            raise ValueError("max_work must be a positive integer")

    @property
    def bits(self) -> int:
        """Working bits: enough that 2**-bits is below the target width."""
        inv = 1 / self.target_width
        return (-(-inv.numerator // inv.denominator)).bit_length() + GUARD_BITS

    def doubled(self) -> Precision:
        """Twice as many correct bits (target width squared)."""
        tw = self.target_width
        return Precision(tw * tw if tw < 1 else tw / 2**64, self.max_work * 2)

    def with_bits(self, extra: int) -> Precision:
        return Precision(self.target_width / 2**extra, self.max_work)


DEFAULT_PRECISION = Precision()


def ilog2(x: Rational) -> int:
    """floor(log2 |x|) for a nonzero rational."""
    x = _frac(x)
    if x == 0:
        raise DomainError("log2 of zero")
    p, q = abs(x.numerator), x.denominator
    e = p.bit_length() - q.bit_length()
    if (p << max(0, -e)) < (q << max(0, e)):
        e -= 1
    return e


def _scale_floor(x: Fraction, k: int) -> int:
    """floor(x * 2**k)."""
    if k >= 0:
        return (x.numerator << k) // x.denominator
    return x.numerator // (x.denominator << -k)


def _scale_ceil(x: Fraction, k: int) -> int:
    return -_scale_floor(-x, k)


def _grid(x: Fraction, bits: int) -> int:
    # keeps `bits` bits after the leading bit for small values, `bits`
    # fractional bits otherwise
    if x == 0:
        return bits
    return bits + max(0, -ilog2(x))


def round_down(x: Rational, bits: int) -> Fraction:
    x = _frac(x)
    if x == 0 or x.denominator == 1:
        return x
    k = _grid(x, bits)
    if x.denominator.bit_length() <= k + 1:
        return x
    return Fraction(_scale_floor(x, k), 1 << k)


def round_up(x: Rational, bits: int) -> Fraction:
    return -round_down(-_frac(x), bits)


@functools.total_ordering
class Ordering(enum.Enum):
    """Outcome of a certified comparison."""

    LESS = "Less"
    OVERLAP = "Overlap"
    GREATER = "Greater"

    def __lt__(self, other):  # pragma: no cover - ordering for sorting only
        order = ["Less", "Overlap", "Greater"]
        return order.index(self.value) < order.index(other.value)


@dataclass(frozen=True)
class RatBall:
    """Closed interval ``[lo, hi]`` with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _frac(self.lo), _frac(self.hi)
        if lo > hi:
            raise ValueError(f"empty ball: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: Rational) -> RatBall:
        x = _frac(x)
        return cls(x, x)

    @classmethod
    def coerce(cls, x) -> RatBall:
        return x if isinstance(x, RatBall) else cls.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x) -> bool:
        if isinstance(x, RatBall):
            return self.lo <= x.lo and x.hi <= self.hi
        x = _frac(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def overlaps(self, other: RatBall) -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def hull(self, other: RatBall) -> RatBall:
        return RatBall(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: RatBall) -> RatBall:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint balls")
        return RatBall(lo, hi)

    def rounded(self, bits: int) -> RatBall:
        """Outward rounding to dyadic endpoints (never shrinks the ball)."""
        return RatBall(round_down(self.lo, bits), round_up(self.hi, bits))

    def __neg__(self) -> RatBall:
        return RatBall(-self.hi, -self.lo)

    def __abs__(self) -> RatBall:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatBall(Fraction(0), max(-self.lo, self.hi))

    def __add__(self, other) -> RatBall:
        o = RatBall.coerce(other)
        return RatBall(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> RatBall:
        o = RatBall.coerce(other)
        return RatBall(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> RatBall:
        return RatBall.coerce(other) - self

    def __mul__(self, other) -> RatBall:
        o = RatBall.coerce(other)
        if o.is_point:
            c = o.lo
            return RatBall(self.lo * c, self.hi * c) if c >= 0 else RatBall(self.hi * c, self.lo * c)
        if self.is_point:
            return o * self
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatBall(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> RatBall:
        if self.contains_zero():
            raise ZeroDivisionError("division by a ball containing zero")
        return RatBall(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> RatBall:
        return self * RatBall.coerce(other).reciprocal()

    def __rtruediv__(self, other) -> RatBall:
        return RatBall.coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> RatBall:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self ** -k).reciprocal()
        if k == 0:
            return RatBall.point(1)
        if k % 2 == 1 or self.lo >= 0:
            lo, hi = self.lo ** k, self.hi ** k
            return RatBall(min(lo, hi), max(lo, hi))
        if self.hi <= 0:
            return RatBall(self.hi ** k, self.lo ** k)
        return RatBall(Fraction(0), max(self.lo ** k, self.hi ** k))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def cmp_certified(x: RatBall, y: RatBall) -> Ordering:
    """Less iff x.hi < y.lo, Greater iff x.lo > y.hi, Overlap otherwise."""
    x, y = RatBall.coerce(x), RatBall.coerce(y)
    if x.hi < y.lo:
        return Ordering.LESS
    if x.lo > y.hi:
        return Ordering.GREATER
    return Ordering.OVERLAP


def certified_le(x: RatBall, y: RatBall) -> bool | None:
    """True if x <= y for all points, False if x > y for all points."""
    x, y = RatBall.coerce(x), RatBall.coerce(y)
    if x.hi <= y.lo:
        return True
    if x.lo > y.hi:
        return False
    return None


# ---------------------------------------------------------------------------
# fixed-point kernels (integers scaled by 2**w, directed rounding)

def _atanh_fixed(z: Fraction, w: int) -> tuple[int, int]:
    """Bounds (L, U) with L <= atanh(z) * 2**w <= U for 0 <= z <= 1/2."""
    if z == 0:
        return 0, 0
    one = 1 << w
    zl = _scale_floor(z, w)
    total = 0
    p = zl
    i = 0
    while p:
        total += p // (2 * i + 1)
        p = (p * zl * zl) >> (2 * w)
        i += 1
    lower = total

    zu = _scale_ceil(z, w)
    total = 0
    p = zu
    i = 0
    while p > 1:
        d = 2 * i + 1
        total += -(-p // d)
        p = -(-(p * zu * zu) // (one * one))
        i += 1
    # remaining terms: sum_{j>=i} z^(2j+1)/(2j+1) <= p/(2i+1) / (1 - z^2)
    rem = Fraction(p, 2 * i + 1) / (1 - Fraction(zu, one) ** 2)
    upper = total + math.ceil(rem) + 1
    return lower, upper


@functools.lru_cache(maxsize=64)
def _ln2_fixed(w: int) -> tuple[int, int]:
    lo, hi = _atanh_fixed(Fraction(1, 3), w)
    return 2 * lo, 2 * hi


def _ln_bounds(t: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """L <= ln t <= U for rational t > 0."""
    if t <= 0:
        raise DomainError(f"ln of nonpositive value {t}")
    if t == 1:
        return Fraction(0), Fraction(0)
    e = ilog2(t)
    m = t / Fraction(2) ** e if e >= 0 else t * Fraction(2) ** (-e)
    flip = False
    if m >= Fraction(4, 3):
        m = 2 / m  # ln m_orig = ln 2 - ln(2/m_orig) with 2/m in (1, 3/2]
        flip = True
    w = bits + 8 + abs(e).bit_length() + 2 * flip
    z = (m - 1) / (m + 1)
    ml, mu = _atanh_fixed(z, w)
    ml, mu = 2 * ml, 2 * mu
    l2l, l2u = _ln2_fixed(w)
    if flip:
        e += 1
        ml, mu = -mu, -ml
    if e >= 0:
        lo, hi = e * l2l + ml, e * l2u + mu
    else:
        lo, hi = e * l2u + ml, e * l2l + mu
    return Fraction(lo, 1 << w), Fraction(hi, 1 << w)


_SQUARINGS = 8


def _exp_small_fixed(y: Fraction, w: int, upper: bool) -> int:
    """Directed bound on exp(y) * 2**w for 0 <= y <= 1/128."""
    one = 1 << w
    if upper:
        yi = _scale_ceil(y, w)
        total = one
        t = one
        i = 1
        while t > 1:
            t = -(-(t * yi) // (i * one))
            total += t
            i += 1
        # tail after the last computed term is below that term (y < 1/2)
        return total + t + 1
    yi = _scale_floor(y, w)
    total = one
    t = one
    i = 1
    while t:
        t = (t * yi) // (i * one)
        total += t
        i += 1
    return total


def _exp_point_bound(r: Fraction, w: int, upper: bool) -> Fraction:
    """Directed bound on exp(r) for |r| <= 2."""
    neg = r < 0
    y = -r if neg else r
    y = y / (1 << _SQUARINGS)
    one = 1 << w
    # a lower bound of exp(-y) is 1/(upper bound of exp(y)) and vice versa
    e = _exp_small_fixed(y, w, upper != neg)
    for _ in range(_SQUARINGS):
        if upper != neg:
            e = -(-(e * e) // one)
        else:
            e = (e * e) // one
    if not neg:
        return Fraction(e, one)
    if upper:
        return Fraction(-(-(one * one) // e), one)
    return Fraction((one * one) // e, one)


def _exp_bound(x: Fraction, bits: int, upper: bool) -> Fraction:
    if x == 0:
        return Fraction(1)
    k = math.floor(x * _INV_LN2_APPROX)
    w = bits + 2 * _SQUARINGS + 16 + abs(k).bit_length()
    l2l, l2u = _ln2_fixed(w)
    # r = x - k ln2; bound r in the direction that bounds exp(r)
    if (k >= 0) == upper:
        r = x - Fraction(k * l2l, 1 << w)
    else:
        r = x - Fraction(k * l2u, 1 << w)
    if abs(r) > 2:  # approximate 1/ln2 far off; cannot happen for sane x
        raise InconclusiveError("exp argument reduction failed")
    v = _exp_point_bound(r, bits + 2 * _SQUARINGS + 16, upper)
    return v * Fraction(2) ** k


def _isqrt_bounds(t: Fraction, k: int) -> tuple[Fraction, Fraction]:
    lo_i = math.isqrt(_scale_floor(t, 2 * k))
    c = _scale_ceil(t, 2 * k)
    hi_i = math.isqrt(c)
    if hi_i * hi_i < c:
        hi_i += 1
    return Fraction(lo_i, 1 << k), Fraction(hi_i, 1 << k)


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for integers x >= 0, k >= 1."""
    if x < 0 or k < 1:
        raise DomainError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    if k == 2:
        return math.isqrt(x)
    r = 1 << -(-x.bit_length() // k)
    while True:
        y = ((k - 1) * r + x // r ** (k - 1)) // k
        if y >= r:
            return r
        r = y


# ---------------------------------------------------------------------------
# ball operations

def _prec(prec: Precision | None) -> Precision:
    return DEFAULT_PRECISION if prec is None else prec


def ball_sqrt(x: RatBall, prec: Precision | None = None) -> RatBall:
    x = RatBall.coerce(x)
    if x.lo < 0:
        raise DomainError(f"sqrt of ball with negative part {x}")
    bits = _prec(prec).bits

    def k_for(t):
        return bits + max(0, -ilog2(t) // 2 + 1) if t else bits

    lo = _isqrt_bounds(x.lo, k_for(x.lo))[0]
    hi = _isqrt_bounds(x.hi, k_for(x.hi))[1]
    return RatBall(lo, hi)


def ball_ln(x: RatBall, prec: Precision | None = None) -> RatBall:
    x = RatBall.coerce(x)
    if x.lo <= 0:
        raise DomainError(f"ln of ball with nonpositive part {x}")
    bits = _prec(prec).bits
    lo, hi = _ln_bounds(x.lo, bits)
    if not x.is_point:
        hi = _ln_bounds(x.hi, bits)[1]
    return RatBall(lo, hi)


def ball_exp(x: RatBall, prec: Precision | None = None) -> RatBall:
    x = RatBall.coerce(x)
    bits = _prec(prec).bits
    return RatBall(_exp_bound(x.lo, bits, False), _exp_bound(x.hi, bits, True)).rounded(bits + 4)


def ball_root(x: int, k: int, prec: Precision | None = None) -> RatBall:
    """Enclosure of the real k-th root of the integer x >= 1."""
    if isinstance(x, bool) or not isinstance(x, int) or not isinstance(k, int):
        raise TypeError("ball_root takes integers")
    if x < 1 or k < 1:
        raise DomainError("ball_root needs x >= 1 and k >= 1")
    if k == 1:
        return RatBall.point(x)
    r = iroot(x, k)
    if r ** k == x:
        return RatBall.point(r)
    p = _prec(prec)
    m = p.bits + 4
    if k * m + x.bit_length() <= 1 << 17:
        lo_i = iroot(x << (k * m), k)
        return RatBall(Fraction(lo_i, 1 << m), Fraction(lo_i + 1, 1 << m))
    # large k: exp(ln(x) / k), with the logarithm carrying extra bits
    lx = ball_ln(RatBall.point(x), p.with_bits(8))
    return ball_exp(lx / k, p.with_bits(4)).intersect(RatBall(r, r + 1))


def ball_powr(x: RatBall, y: RatBall, prec: Precision | None = None) -> RatBall:
    """Enclosure of x**y = exp(y ln x) over the box x * y, for x > 0."""
    x, y = RatBall.coerce(x), RatBall.coerce(y)
    if x.lo <= 0:
        raise DomainError(f"powr with nonpositive base {x}")
    if y.is_point and y.lo.denominator == 1:
        return x ** int(y.lo)
    p = _prec(prec)
    extra = max(ilog2(y.magnitude()), 0) + 8 if y.magnitude() else 8
    lx = ball_ln(x, p.with_bits(extra))
    return ball_exp(lx * y, p.with_bits(4))


# ---------------------------------------------------------------------------
# log-vs-power crossover certificates

@dataclass(frozen=True)
class CrossoverCertificate:
    """Certificate that cln*ln(n) + c0 < cpow * n**e for every n >= n0.

    Holds because the inequality is verified at ``n0`` and the derivative of
    ``cpow*n**e - cln*ln(n)`` is ``(e*cpow*n**e - cln)/n``, nonnegative once
    ``e*cpow*n**e >= cln``, a condition monotone in n.
    """

    cln: Fraction
    c0: Fraction
    cpow: Fraction
    e: Fraction
    n0: int
    lhs: RatBall
    rhs: RatBall
    slope: RatBall

    def check_at(self, n: int, prec: Precision | None = None) -> bool:
        lhs, rhs = _crossover_sides(self.cln, self.c0, self.cpow, self.e, n, prec)
        return cmp_certified(lhs, rhs) is Ordering.LESS

    def verify(self, prec: Precision | None = None) -> bool:
        slope_ok = _slope_ok(self.cln, self.cpow, self.e, self.n0, prec)
        points = (self.n0, self.n0 + 1, 2 * self.n0)
        return slope_ok and all(self.check_at(n, prec) for n in points)


def _power_ball(n: int, e: Fraction, prec) -> RatBall:
    if e.denominator == 1:
        return RatBall.point(Fraction(n) ** int(e))
    if e.denominator == 2 and e.numerator == 1:
        return ball_sqrt(RatBall.point(n), prec)
    return ball_root(n ** e.numerator, e.denominator, prec)


def _crossover_sides(cln, c0, cpow, e, n, prec):
    lhs = cln * ball_ln(RatBall.point(n), prec) + c0 if cln else RatBall.point(c0)
    rhs = cpow * _power_ball(n, e, prec)
    return lhs, rhs


def _slope_ok(cln, cpow, e, n, prec) -> bool:
    slope = e * cpow * _power_ball(n, e, prec)
    return slope.lo >= cln


def log_power_crossover(cln: Rational, c0: Rational, cpow: Rational, e: Rational,
                        prec: Precision | None = None) -> CrossoverCertificate:
    """Least n0 (up to certification) such that the claim holds for all n >= n0.

    Raises InconclusiveError when no n0 <= prec.max_work is found.
    """
    cln, c0, cpow, e = (_frac(v) for v in (cln, c0, cpow, e))
    if cln < 0 or cpow <= 0 or not (0 < e <= 1):
        raise DomainError("need cln >= 0, cpow > 0 and 0 < e <= 1")
    p = _prec(prec)
    cap = p.max_work

    def first_true(pred, lo: int) -> int:
        if pred(lo):
            return lo
        hi = lo
        while not pred(hi):
            lo = hi
            hi *= 2
            if hi > cap:
                if pred(cap):
                    hi = cap
                    break
                raise InconclusiveError(f"no crossover below max_work={cap}")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pred(mid):
                hi = mid
            else:
                lo = mid
        return hi

    n_slope = first_true(lambda n: _slope_ok(cln, cpow, e, n, p), 1)

    def claim(n):
        lhs, rhs = _crossover_sides(cln, c0, cpow, e, n, p)
        return cmp_certified(lhs, rhs) is Ordering.LESS

    n0 = first_true(claim, n_slope)
    lhs, rhs = _crossover_sides(cln, c0, cpow, e, n0, p)
    slope = e * cpow * _power_ball(n0, e, p)
    return CrossoverCertificate(cln, c0, cpow, e, n0, lhs, rhs, slope)
