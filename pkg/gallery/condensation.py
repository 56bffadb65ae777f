"""Graphical condensation on one castle, term by term.

The weight of a castle times the weight of its sigma-shifted inner castle,
multiplied by ``x0 ... x5``, splits as a sum of two products of smaller
castles. The six weights are evaluated at a rational point so the numbers
stay readable.
"""

from fractions import Fraction

from dp3 import castle as cs
from dp3.matching import fingerprint
from dp3.verify import kuo_terms, verify_kuo

point = tuple(Fraction(k + 2, k + 1) for k in range(6))
i, j = 2, 3
g, c, (a1, a2), (b1, b2) = kuo_terms("NE", i, j)


def w(term):
    ti, tj, sigma = term
    return fingerprint(cs.ne_castle(ti, tj, sigma=sigma), point)


prod = 1
for v in point:
    prod *= v
lhs = w(g) * w(c) * prod
rhs = w(a1) * w(a2) + w(b1) * w(b2)
print(f"left  {lhs}")
print(f"right {rhs}")
print("equal:", lhs == rhs)

frame = cs.kuo_frame_ne(i, j)
print("frame problems:", frame.check() or "none")
print(verify_kuo("NE", i, j).dumps())
