# coding: utf-8

# # Irrationality through infinite products
#
# For a plain series sum b(n)/a(n) the criterion compares A / a(n)^(1/2^n)
# with the tail product of numbers d(n) > 1.  With d(n) = 1 + (2/3)^n it
# reduces to two explicit bounds on a and b, checked below from n = 6.

# %%

import math
from fractions import Fraction

from irrseries.hancl import (alpha_quantity, check_hancl_cor2, check_hancl_thm3, cor2_product,
                             margin_family, refute_rational_candidates, tail_product)
from irrseries.seqdsl import RatioDominated, Window, parse_sequence
from irrseries.series import SeriesInstance

p = cor2_product()
for n in (1, 4, 6, 10):
    tp = tail_product(p, n)
    print(n, float(tp.ball.mid), "bound", float(1 + 4 * Fraction(2, 3) ** n))

# The reduction bound prod < 1 + 4 (2/3)^n only starts at n = 4.

# %%
# ## A family sitting right at the bound
#
# a(n) = floor(3^(2^n) exp(-4 (4/3)^n)), computed with a certified floor.

fam = margin_family(12)
rep = check_hancl_cor2(fam, 3, Window(6, 12))
print(rep.verdict)
print(check_hancl_thm3(fam, p, 3, 6, Window(6, 12)).verdict)

# %%
# a(n) = 2^(2^n) misses the a-bound by the margin factor at once.

dbl = SeriesInstance(parse_sequence("2^(2^n)"), parse_sequence("1"), "plain")
print(check_hancl_cor2(dbl, 2, Window(6, 12)).verdict)

# %%
# ## Refuting rational candidates
#
# ALPHA(n) = q a(1)...a(n) * (tail after n) must be a positive integer when
# the sum is p/q.  It is linear in q, so one ball per n settles every q.

liou = SeriesInstance(parse_sequence("2^(n!)"), parse_sequence("1"), "plain",
                      (RatioDominated(c=Fraction(1, 2)),))
a3 = alpha_quantity(liou, 1, 3)
print("ALPHA(3) ~ 2^%.2f" % math.log2(a3.mid))

rep = refute_rational_candidates(liou, 10**6)
print(rep.verdict)
for r in rep.values["ranges"]:
    print(f"  q in [{r.q_from}, {r.q_to}] refuted at n = {r.n}")
