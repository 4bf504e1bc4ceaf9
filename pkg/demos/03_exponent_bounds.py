"""
Upper bounds for the irrationality exponent
===========================================

Three growth classes for the partial coefficients, each with a closed-form
bound, plus the empirical route through nu = limsup log Pi_n / log B_n.
"""
from gcfx import bounds
from gcfx.bounds import BoundedGrowth, ExponentialGrowth, PolynomialGrowth
from gcfx.cfcore import CoefficientStream

# bounded coefficients 1 <= a_n <= 2, 2 <= b_n <= 2
print(bounds.bounded_bound(BoundedGrowth(1, 2, 2, 2)).mu_upper)

# the condition gamma_1 > alpha_2 fails here: the report says so
report = bounds.bounded_bound(BoundedGrowth(1, 2, 1, 1))
print(report.condition_ok, report.conditions[0].detail)

# polynomial growth: a_n <= n^l, b_n ~ n^k
print(bounds.poly_bound(PolynomialGrowth(1, 1, 1, 2, 1, 3)).mu_upper)

# exponential growth, the Rogers-Ramanujan shape with q = 2/5
print(bounds.exp_bound(ExponentialGrowth(1, 2, 1, 1, 5**0.5, 1, 2, 5**0.5, 1)).mu_upper)

# empirical nu for a constant fraction, against log 2 / log gamma_1
trace = bounds.nu_estimate(CoefficientStream.constant(2, 3), 5000)
print(trace.summary())
print("lemma bound:", bounds.lemma_bound(trace.nu))
