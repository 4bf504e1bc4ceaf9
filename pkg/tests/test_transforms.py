import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gcfx import cfcore, transforms
from gcfx.cfcore import CoefficientStream
from gcfx.transforms import EquivalenceScaling, IrrationalityMeasure
from gcfx.errors import InvalidMapError, InvalidScalingError, InvalidValueError

pos_rational = st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30)


def test_unit_scaling_is_identity():
    stream = CoefficientStream(lambda n: (n, n + 1))
    same = transforms.equivalence(stream, EquivalenceScaling.unit(), integral=True)
    assert same.head(10) == stream.head(10)


def test_zero_scaling_rejected():
    scaling = EquivalenceScaling(lambda n: 0 if n == 3 else 1)
    out = transforms.equivalence(CoefficientStream.constant(1, 1), scaling)
    with pytest.raises(InvalidScalingError):
        out.pair(3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(pos_rational, pos_rational), min_size=1, max_size=40),
       st.lists(pos_rational, min_size=40, max_size=40))
def test_equivalence_preserves_convergents(pairs, factors):
    stream = CoefficientStream.from_lists([a for a, _ in pairs], [b for _, b in pairs], integral=False)
    scaled = transforms.equivalence(stream, EquivalenceScaling(lambda n: factors[n - 1]))
    n = len(pairs)
    assert [c.value for c in cfcore.convergents(stream, n)] == [c.value for c in cfcore.convergents(scaled, n)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(pos_rational, pos_rational), min_size=1, max_size=40))
def test_integerize_gives_positive_integers(pairs):
    stream = CoefficientStream.from_lists([a for a, _ in pairs], [b for _, b in pairs], integral=False)
    ints, scaling = transforms.integerize(stream)
    for n in range(1, len(pairs) + 1):
        a, b = ints.pair(n)
        assert isinstance(a, int) and isinstance(b, int) and a > 0 and b > 0
        assert scaling(n) > 0
    n = len(pairs)
    assert [c.value for c in cfcore.convergents(stream, n)] == [c.value for c in cfcore.convergents(ints, n)]


def test_integerize_integer_stream_unchanged():
    stream = CoefficientStream(lambda n: (n, 2 * n + 1))
    ints, scaling = transforms.integerize(stream)
    assert ints.head(20) == stream.head(20)
    assert all(scaling(n) == 1 for n in range(1, 21))


def test_rogers_ramanujan_scaling_pattern():
    # q = a/b, t = r/s with e_n = b^ceil(n/2) s^(n mod 2)
    a, b, r, s = 2, 5, 3, 7
    rr = CoefficientStream(lambda n: (Fraction(a, b) ** n * Fraction(r, s), 1), integral=False)
    scaling = EquivalenceScaling(lambda n: b ** ((n + 1) // 2) * s ** (n % 2))
    out = transforms.equivalence(rr, scaling, integral=True)
    for n in range(1, 12):
        an, bn = out.pair(n)
        assert an == a**n * r
        assert bn == (b ** ((n + 1) // 2) * s if n % 2 else b ** (n // 2))


def test_transport_linear_examples():
    m = transforms.transport_linear(IrrationalityMeasure(2, 1, 10), 2, 3)
    assert m.omega == 2 and math.isclose(m.c, 1 / 12) and m.H == 5
    m = transforms.transport_linear(IrrationalityMeasure(1, 0.5, 1), -1, 1)
    assert (m.c, m.H) == (0.5, 1)
    same = transforms.transport_linear(IrrationalityMeasure(3, 0.2, 7), 1, 1)
    assert (same.omega, same.c, same.H) == (3, 0.2, 7)


@pytest.mark.parametrize("q,t", [(0, 1), (1, 0)])
def test_transport_linear_rejects_degenerate(q, t):
    with pytest.raises(InvalidMapError):
        transforms.transport_linear(IrrationalityMeasure(2, 1, 1), q, t)


def test_transport_reciprocal():
    m = transforms.transport_reciprocal(IrrationalityMeasure(2, 4, 1), 1)
    assert (m.c, m.H) == (1, 2)
    for omega in (1.5, 2.0, 3.7):
        assert math.isclose(transforms.transport_reciprocal(IrrationalityMeasure(omega, 2**omega, 1), 1).c, 1)
    with pytest.raises(InvalidValueError):
        transforms.transport_reciprocal(IrrationalityMeasure(2, 1, 1), 0)


@given(st.floats(1, 10), st.floats(0.01, 10), st.floats(1, 100), st.integers(-9, 9).filter(bool),
       st.integers(-9, 9).filter(bool), st.floats(0.01, 10))
def test_exponent_is_invariant(omega, c, H, q, t, tau):
    m = IrrationalityMeasure(omega, c, H)
    assert transforms.transport_linear(m, q, t).omega == omega
    assert transforms.transport_reciprocal(m, tau).omega == omega
