# coding: utf-8

# # Certified enclosures of series values
#
# Every number here is a ball [lo, hi] with exact rational endpoints.
# Nothing is ever rounded inward, so the true value is always inside.

# %%

from fractions import Fraction

import numpy as np

from irrseries import Precision, RatBall
from irrseries.exact_arith import ball_exp, ball_ln, ball_sqrt
from irrseries.seqdsl import RatioDominated, parse_sequence
from irrseries.series import SeriesInstance, enclosure_at, value_enclosure

# %%
# Arithmetic on balls. sqrt(2) at 30 digits, then squared again.

prec = Precision(Fraction(1, 10**30))
r2 = ball_sqrt(RatBall.point(2), prec)
print("sqrt(2) in", r2)
print("its square still contains 2:", 2 in r2 * r2)

# ln and exp are inverse on balls only up to widening
x = ball_exp(ball_ln(RatBall.point(3), prec), prec)
print("exp(ln 3) contains 3:", 3 in x, " width", float(x.width))

# %%
# ## A telescoping series
#
# sum (n+1)/(n+2)! over n >= 1 equals 1.  The tail after n is bounded with a
# declared ratio fact, which is audited on the indices actually used.

half = RatioDominated(c=Fraction(1, 2))
tele = SeriesInstance(parse_sequence("n + 2"), parse_sequence("n + 1"), "cantor", (half,))

widths = np.array([float(enclosure_at(tele, n).ball.width) for n in range(1, 21)])
print(np.log10(widths).round(1))

# %%

ball = value_enclosure(tele, Precision(Fraction(1, 10**15)), depth=12)
print("value in", ball, " contains 1:", 1 in ball)

# %%
# ## e - 2 as a Cantor series: sum 1/(n+1)!

e2 = SeriesInstance(parse_sequence("n + 1"), parse_sequence("1"), "cantor", (half,))
b = value_enclosure(e2, prec)
print(float(b.lo), float(b.hi))
print("assumed beyond the window:", [f.describe() for f in enclosure_at(e2, 30).assumed])

# %%
# Without a declared fact there is no tail bound, and the library says so
# instead of guessing from the partial sums.

bare = SeriesInstance(parse_sequence("n + 1"), parse_sequence("1"), "cantor")
try:
    value_enclosure(bare, prec)
except ArithmeticError as exc:
    print("inconclusive:", exc)
