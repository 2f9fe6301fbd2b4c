# coding: utf-8

# # Effective irrationality exponents
#
# kappa(k) = -ln|alpha - p/q| / ln q for the partial sums p/q.  Values above
# 2 infinitely often mean transcendence, *if* Roth's theorem is granted; the
# reports list it as an assumption.

# %%

from fractions import Fraction

import numpy as np

from irrseries.roth import (approximants, check_hr_thm21, check_hr_thm22,
                            counterexample_sequence, transcendence_report)
from irrseries.seqdsl import RatioDominated, parse_sequence
from irrseries.series import SeriesInstance

half = (RatioDominated(c=Fraction(1, 2)),)
liou = SeriesInstance(parse_sequence("2^(n!)"), parse_sequence("1"), "plain", half)
geo = SeriesInstance(parse_sequence("2^n"), parse_sequence("1"), "plain", half)

# %%

table = np.array([[ap.k, float(ap.kappa.mid) if ap.kappa else np.nan,
                   float(ap.kappa_product.mid)] for ap in approximants(liou, 6)])
print(table.round(3))
print("120/33 =", round(120 / 33, 3))

# %%
# The geometric series sums to 1, so its exponents never exceed 1.

print([ap.kappa for ap in approximants(geo, 6)][:3])
print(transcendence_report(geo, 1, 6).verdict)

# %%

rep = transcendence_report(liou, 1, 6)
print(rep.verdict)
print(rep.verdict.assumed[-1].describe())

# %%
# ## Hypothesis checks on a window

print(check_hr_thm21(liou, 1, (1, 7)).verdict)
print(check_hr_thm22(liou, 1, 1, 2, (1, 6)).verdict)
print(check_hr_thm22(liou, 1, 1, 1, (1, 6)).verdict)   # sqrt 4 < sqrt 2 + 1

# %%
# ## The even-index counterexample
#
# a(k+1) = k (a(1)...a(k))^3 for odd k and 2 a(k) for even k.  The ratio
# a(k+1)/a(k) is exactly 2 at every even k, so a(k+1) > A a(k) fails for
# A >= 2 there and holds for any A < 2.

for A in (3, 2, Fraction(3, 2)):
    _, r = counterexample_sequence(1, 2, 12, A=A)
    print(f"A = {A}: failures at {r.values['failures']}")
