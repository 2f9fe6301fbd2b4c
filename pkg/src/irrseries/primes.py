"""Deterministic n-th prime generation by a segmented sieve, and the empirical
prime-gap checks used by the prime-series criterion.

Indexing is 1-based (``nth_prime(1) == 2``); :func:`nth_prime0` is the
0-based accessor (``nth_prime0(0) == 2``).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_arith import (DEFAULT_PRECISION, Ordering, Precision, RatBall, ball_powr,
                          ball_sqrt, cmp_certified)
from .verdict import Verdict


class PrimeCapError(RuntimeError):
    """The sieve would exceed its configured resource cap."""


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= 3_317_044_064_679_887_385_961_981:
        raise ValueError("deterministic bases only cover n < 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeCache:
    """Primes materialized segment by segment.

    Readers and the (single) extending writer are serialized by a lock, so a
    cache may be shared between threads.
    """

    def __init__(self, segment_size: int = 1 << 20, max_limit: int = 10**10):
        if segment_size < 16:
            raise ValueError("segment_size too small")
        self.segment_size = segment_size
        self.max_limit = max_limit
        self._lock = threading.Lock()
        self._chunks: list[np.ndarray] = [np.array([2], dtype=np.int64)]
        self._flat = self._chunks[0]
        self._sieved_to = 3  # every prime < _sieved_to is stored
        self._base = np.array([2], dtype=np.int64)
        self._base_limit = 2

    def __len__(self) -> int:
        return len(self._flat)

    @property
    def largest_index(self) -> int:
        return len(self._flat)

    def _ensure_base(self, limit: int) -> None:
        if limit > self._base_limit:
            self._base_limit = max(limit, 2 * self._base_limit)
            self._base = simple_sieve(self._base_limit)

    def _sieve_segment(self) -> None:
        low = self._sieved_to
        high = low + self.segment_size
        if high > self.max_limit:
            raise PrimeCapError(f"sieve limit {self.max_limit} exceeded")
        self._ensure_base(math.isqrt(high) + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in self._base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low::p] = False
        found = np.flatnonzero(mask).astype(np.int64) + low
        if found.size:
            self._chunks.append(found)
            self._flat = np.concatenate(self._chunks) if len(self._chunks) > 1 else self._chunks[0]
            self._chunks = [self._flat]
        self._sieved_to = high

    def _extend_count(self, n: int) -> None:
        while len(self._flat) < n:
            self._sieve_segment()

    def _extend_value(self, x: int) -> None:
        while self._sieved_to <= x:
            self._sieve_segment()

    def nth(self, n: int) -> int:
        """The n-th prime, 1-based."""
        if n < 1:
            raise ValueError("prime index must be >= 1")
        with self._lock:
            self._extend_count(n)
            return int(self._flat[n - 1])

    def nth0(self, i: int) -> int:
        return self.nth(i + 1)

    def first(self, n: int) -> np.ndarray:
        """Array of the first n primes."""
        with self._lock:
            self._extend_count(n)
            return self._flat[:n].copy()

    def upto(self, x: int) -> np.ndarray:
        with self._lock:
            self._extend_value(x)
            return self._flat[: np.searchsorted(self._flat, x, side="right")].copy()


_CACHE = PrimeCache()


def default_cache() -> PrimeCache:
    return _CACHE


def nth_prime(n: int, cache: PrimeCache | None = None) -> int:
    return (cache or _CACHE).nth(n)


def nth_prime0(i: int, cache: PrimeCache | None = None) -> int:
    return (cache or _CACHE).nth0(i)


@dataclass(frozen=True)
class PrimeRatioStats:
    """Exact extremes of p(n+1)/p(n) for n in [nmin, nmax - 1]."""

    nmin: int
    nmax: int
    count: int
    max_ratio: Fraction | None
    argmax: int | None
    min_ratio: Fraction | None
    argmin: int | None

    @property
    def empty(self) -> bool:
        return self.count == 0


def prime_ratio_window(nmin: int, nmax: int, cache: PrimeCache | None = None) -> PrimeRatioStats:
    if nmin < 1 or nmax < nmin:
        raise ValueError("need 1 <= nmin <= nmax")
    if nmax == nmin:
        return PrimeRatioStats(nmin, nmax, 0, None, None, None, None)
    ps = (cache or _CACHE).first(nmax)[nmin - 1:].tolist()
    best_hi = best_lo = None
    arg_hi = arg_lo = None
    for i in range(len(ps) - 1):
        r = Fraction(ps[i + 1], ps[i])
        if best_hi is None or r > best_hi:
            best_hi, arg_hi = r, nmin + i
        if best_lo is None or r < best_lo:
            best_lo, arg_lo = r, nmin + i
    return PrimeRatioStats(nmin, nmax, len(ps) - 1, best_hi, arg_hi, best_lo, arg_lo)


@dataclass(frozen=True)
class DoubleSqrtCheck:
    n: int
    epsilon: Fraction
    p_n: int
    p_2n: int
    lhs: RatBall
    rhs: RatBall
    verdict: Verdict


def double_sqrt_check(n: int, epsilon, prec: Precision | None = None,
                      cache: PrimeCache | None = None) -> DoubleSqrtCheck:
    """Certified test of (p(2n) - p(n)) / sqrt(p(n)) < n**(1/2 + epsilon) at one n.

    The claim is asserted for all large n only; this certifies or refutes it
    at the given n.
    """
    epsilon = Fraction(epsilon)
    if n < 1 or epsilon <= 0:
        raise ValueError("need n >= 1 and epsilon > 0")
    prec = prec or DEFAULT_PRECISION
    pn, p2n = nth_prime(n, cache), nth_prime(2 * n, cache)
    verdict = None
    for _ in range(4):
        lhs = (p2n - pn) / ball_sqrt(RatBall.point(pn), prec)
        rhs = ball_powr(RatBall.point(n), RatBall.point(Fraction(1, 2) + epsilon), prec)
        order = cmp_certified(lhs, rhs)
        if order is Ordering.LESS:
            verdict = Verdict.certified(f"holds at N={n}")
            break
        if order is Ordering.GREATER:
            verdict = Verdict.refuted(n, f"fails at N={n}")
            break
        prec = prec.doubled()
    if verdict is None:
        verdict = Verdict.inconclusive("balls overlap at maximum precision")
    return DoubleSqrtCheck(n, epsilon, pn, p2n, lhs, rhs, verdict)
