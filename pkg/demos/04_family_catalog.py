"""
The family catalog
==================

Named fractions from the literature with their growth parameters and the
bound each one earns.
"""
from fractions import Fraction

from gcfx import catalog
from gcfx.catalog import FamilySpec

for row in catalog.list_families():
    print(f"{row['family']:16} {row['description']}")

print(catalog.word_prefix(catalog.THUE_MORSE, 24))
print(catalog.word_prefix(catalog.FIBONACCI, 24))
print("Fibonacci density:", float(catalog.density(catalog.FIBONACCI, 10**5)))

e = catalog.family_stream(FamilySpec("exp_point", {"x": 1, "y": 1}))
print("e =", e.evaluate(Fraction(1, 10**40)).decimal(40))

for spec, route in [(FamilySpec("thue_morse_cf"), "bounded"), (FamilySpec("thue_morse_cf"), None),
                    (FamilySpec("fibonacci_cf"), None), (FamilySpec("ft_mixed_cf"), None),
                    (FamilySpec("rogers_ramanujan", dict(a=2, b=5, r=1, s=1)), None),
                    (FamilySpec("tasoev1", dict(u=1, v=1, x=5, y=2)), None),
                    (FamilySpec("rational_19_7"), None)]:
    r = catalog.family_bound(spec, route)
    print(f"{spec.family:16} {r.theorem:12} ok={r.condition_ok} mu <= {r.mu_upper}")
