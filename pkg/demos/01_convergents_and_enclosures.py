"""
Convergents and guaranteed enclosures
=====================================

A continued fraction b0 + a1/(b1 + a2/(b2 + ...)) is driven by two
three-term recurrences.  Consecutive convergents bracket the limit, so
every enclosure below is a proof, not an estimate.
"""
from fractions import Fraction

from gcfx import cfcore
from gcfx.cfcore import CoefficientStream

# all-ones fraction: the denominators are Fibonacci numbers
golden = CoefficientStream.constant(1, 1, label="K 1/1")
print([str(c.value) for c in cfcore.convergents(golden, 8)])

# consecutive convergents give an interval holding (sqrt 5 - 1)/2
print(cfcore.enclosure(golden, 2))

# ask for a width instead of an index
enc = cfcore.evaluate(golden, Fraction(1, 10**30))
print(enc.n_used, "terms:", enc.decimal(30))

# the determinant identity A_{n-1}B_n - A_nB_{n-1} = (-1)^n a_1...a_n is exact
state = cfcore.state_at(CoefficientStream(lambda n: (n * n, 2 * n + 1)), 200)
print("identity holds at n = 200:", cfcore.determinant_holds(state))

# residual sandwich: b_{n+2} Pi_{n+1}/B_{n+2} < |B_n tau - A_n| < Pi_{n+1}/B_{n+1}
lo, hi = cfcore.residual_bounds(CoefficientStream.constant(2, 3), 5)
print(f"{float(lo):.3e} < R_5 < {float(hi):.3e}")

# a fraction whose partial numerators grow too fast never settles
wild = CoefficientStream(lambda n: (4**n, 1))
try:
    cfcore.evaluate(wild, Fraction(1, 10**30), max_terms=100)
except cfcore.NonConvergenceError as exc:
    print("gave up:", exc)
