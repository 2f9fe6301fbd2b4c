# coding: utf-8

# # Rationality witnesses for Cantor series
#
# A Cantor series sum b(n)/(a(1)...a(n)) is rational exactly when an integer
# sequence c(n) and some B satisfy B b(n) = c(n) a(n) - c(n+1) with
# |c(n+1)| < a(n)/2 from some point on.

# %%

from fractions import Fraction

import numpy as np

from irrseries.erdos_straus import r_sequence, search_witness, verify_witness, construct_c
from irrseries.seqdsl import RatioDominated, parse_sequence
from irrseries.series import SeriesInstance, denominator_refutation

half = RatioDominated(c=Fraction(1, 2))


def cantor(a, b):
    return SeriesInstance(parse_sequence(a), parse_sequence(b), "cantor", (half,))


# %%
# The telescoping series has sum 1 and the simplest possible witness.

tele = cantor("n + 2", "n + 1")
res = search_witness(tele, Bmax=4, Nmax=10, length=40)
print(res.verdict, res.witness.B, res.witness.N, res.witness.c[:8])
print(verify_witness(tele, construct_c(tele, 1, 1, 100)))

# %%
# R(n) = B a(1)...a(n-1) * (tail after n) obeys a linear recursion; here it
# equals 1/(n+2), so it drops below 1/4 from n = 3 on.

rs = r_sequence(tele, 1, 1, 12)
print(np.array([float(v.mid) for v in rs.values]).round(4))
print("|R(n)| < 1/4 at", rs.small)

# %%
# ## e - 2
#
# No witness turns up.  That is evidence, never proof, so the verdict stays
# Inconclusive.

e2 = cantor("n + 1", "1")
print(search_witness(e2, 64, 10, 40).verdict)

# %%
# What can be certified: no denominator q <= 50 works.  If the sum were p/q,
# q (n+1)! times the tail would be a positive integer; a ball strictly inside
# (0, 1) rules q out.

first = [denominator_refutation(e2, q, 60).index for q in range(1, 51)]
print(first)
