"""
Equivalence transforms and measure transport
============================================

Scaling level n by e_n leaves every convergent unchanged, which is how
rational q-fractions are turned into integer ones.
"""
from fractions import Fraction

from gcfx import cfcore, transforms
from gcfx.cfcore import CoefficientStream
from gcfx.transforms import IrrationalityMeasure

q = Fraction(1, 2)
rr = CoefficientStream(lambda n: (q**n, 1), label="RR(1/2, 1)", integral=False)
ints, scaling = transforms.integerize(rr)
print("rational:", [(str(a), str(b)) for a, b in rr.head(5)])
print("integer: ", ints.head(5))
print("scaling: ", [scaling(n) for n in range(1, 6)])

same = [c.value for c in cfcore.convergents(rr, 60)] == [c.value for c in cfcore.convergents(ints, 60)]
print("convergents identical:", same)

# an irrationality measure survives x -> q x / t and x -> 1/x with new constants
m = IrrationalityMeasure(omega=2, c=1, H=10)
print(transforms.transport_linear(m, q=2, t=3))
print(transforms.transport_reciprocal(IrrationalityMeasure(2, 4, 1), tau_abs=1))
