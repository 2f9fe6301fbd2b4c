# coding: utf-8

# # Primes: ratios, the double-index bound and a log/power crossover

# %%

from fractions import Fraction

import numpy as np

from irrseries.exact_arith import log_power_crossover
from irrseries.primes import PrimeCache, double_sqrt_check, nth_prime, prime_ratio_window

cache = PrimeCache()
ps = cache.first(10**6)
print(ps[:10], ps[-1], nth_prime(1000))

# %%
# p(n+1)/p(n) tends to 1; on a window the extremes are exact fractions.

for lo, hi in [(1, 100), (10**4, 2 * 10**4), (10**5, 10**6)]:
    st = prime_ratio_window(lo, hi)
    print(lo, hi, st.max_ratio, "at", st.argmax)

gaps = np.diff(ps[:10**5])
print("mean gap", gaps.mean().round(2), "max gap", gaps.max())

# %%
# (p(2N) - p(N)) / sqrt(p(N)) < N^(1/2 + eps) is only claimed for large N.
# With eps = 1/10 it still fails at N = 1000, 10^4 and 10^5.

for n in (1000, 10**4, 10**5):
    c = double_sqrt_check(n, Fraction(1, 10))
    print(n, c.verdict, float(c.lhs.mid), float(c.rhs.mid))

# %%
# 8 ln n + 1 < sqrt(n)/4 holds from n0 on: a check at n0 plus a monotone
# derivative condition.

cert = log_power_crossover(8, 1, Fraction(1, 4), Fraction(1, 2))
print(cert.n0, cert.verify(), cert.check_at(cert.n0 - 1))
