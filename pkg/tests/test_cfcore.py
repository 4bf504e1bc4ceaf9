import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gcfx import cfcore
from gcfx.cfcore import CoefficientStream, ConvergentState, Enclosure, Mobius
from gcfx.errors import InvalidCoefficientError, NonConvergenceError, ResourceLimitError

GOLDEN = (math.sqrt(5) - 1) / 2
coeff = st.integers(min_value=1, max_value=10**6)


def rational_19_7_stream():
    return CoefficientStream(lambda n: (6 * n**7 + 6 * n**6 + 2 * n**5 + 3 * n + 2,
                                        6 * n**7 - 6 * n**6 + 2 * n**5 + 3 * n - 5))


def test_initial_and_first_step():
    s = ConvergentState.initial(0)
    assert (s.A_cur, s.B_cur, s.A_prev, s.B_prev) == (0, 1, 1, 0)
    s1 = cfcore.advance(s, 1, 1)
    assert (s1.A_cur, s1.B_cur) == (1, 1)


def test_two_steps_by_hand():
    s = cfcore.state_at(CoefficientStream.constant(2, 1), 2)
    assert (s.A_cur, s.B_cur) == (2, 3)
    assert cfcore.convergent(CoefficientStream.constant(2, 1), 1) == (2, 1)


def test_unit_coefficients_give_fibonacci():
    fib = [c.denominator for c in cfcore.convergents(CoefficientStream.constant(1, 1), 12)]
    assert fib == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]


@pytest.mark.parametrize("a,b", [(0, 1), (1, 0), (-2, 3), (1, Fraction(1, 2))])
def test_rejects_bad_coefficients(a, b):
    with pytest.raises(InvalidCoefficientError):
        CoefficientStream.constant(a, b).pair(1)


def test_limits():
    enc = cfcore.evaluate(CoefficientStream.constant(2, 1), Fraction(1, 10**30))
    assert 1 in enc and enc.width <= Fraction(1, 10**30)
    enc = cfcore.evaluate(CoefficientStream.constant(1, 1), Fraction(1, 10**12))
    assert abs(float(enc.midpoint) - GOLDEN) < 1e-12


def test_rational_example_converges_to_19_over_7():
    stream = rational_19_7_stream()
    # from n=2 on; the first level has b_1 = 0
    tail = CoefficientStream(lambda n: stream.pair(n + 1))
    errors = [abs(c.value - Fraction(19, 7)) for c in cfcore.convergents(tail, 50)[1:]]
    assert errors[-1] < Fraction(1, 10**12)
    assert all(x > y for x, y in zip(errors, errors[1:]))
    enc = cfcore.evaluate(tail, Fraction(1, 10**12))
    assert enc.n_used < 50 and Fraction(19, 7) in enc


def test_enclosure_by_hand():
    enc = cfcore.enclosure(CoefficientStream.constant(1, 1), 2)
    assert (enc.lo, enc.hi) == (Fraction(1, 2), Fraction(2, 3))
    assert enc.contains(GOLDEN)


def test_e_tail_shrinks_fast():
    stream = CoefficientStream(lambda n: (1, 4 * n + 2))
    assert cfcore.enclosure(stream, 20).width < Fraction(1, 10**20)


def test_nonconvergence_carries_last_enclosure():
    stream = CoefficientStream(lambda n: (4**n, 1))
    with pytest.raises(NonConvergenceError) as info:
        cfcore.evaluate(stream, Fraction(1, 10**30), max_terms=200)
    assert info.value.enclosure is not None and info.value.enclosure.n_used == 199


def test_bitlen_cap():
    with pytest.raises(ResourceLimitError):
        cfcore.evaluate(CoefficientStream(lambda n: (4**n, 1)), Fraction(1, 10**30), bitlen_cap=1000)


def test_determinant_examples():
    s1 = cfcore.state_at(CoefficientStream.constant(1, 1), 1)
    assert cfcore.determinant(s1) == -1
    s3 = cfcore.state_at(CoefficientStream.constant(2, 1), 3)
    assert s3.Pi == 8 and cfcore.determinant(s3) == -8


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coeff, coeff), min_size=1, max_size=120), st.integers(0, 50))
def test_determinant_identity(pairs, b0):
    stream = CoefficientStream.from_lists([a for a, _ in pairs], [b for _, b in pairs], b0=b0)
    pi = 1
    for state in cfcore.states(stream):
        if state.n == len(pairs):
            break
        nxt = cfcore.advance(state, *pairs[state.n])
        pi *= pairs[state.n][0]
        assert nxt.Pi == pi
        assert cfcore.determinant_holds(nxt)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coeff, coeff), min_size=3, max_size=60))
def test_enclosures_nest_and_alternate(pairs):
    stream = CoefficientStream.from_lists([a for a, _ in pairs], [b for _, b in pairs])
    encs = [cfcore.enclosure(stream, n) for n in range(1, len(pairs) - 1)]
    for outer, inner in zip(encs, encs[1:]):
        assert inner.issubset(outer)
    values = [c.value for c in cfcore.convergents(stream, len(pairs))]
    evens, odds = values[2::2], values[1::2]
    assert all(x < y for x, y in zip(evens, evens[1:]))
    assert all(x > y for x, y in zip(odds, odds[1:]))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coeff, coeff), min_size=1, max_size=30))
def test_recurrence_matches_backward_evaluation(pairs):
    stream = CoefficientStream.from_lists([a for a, _ in pairs], [b for _, b in pairs], b0=3)
    assert cfcore.convergent(stream, len(pairs)).value == cfcore.evaluate_finite(pairs, b0=3)
    assert Mobius.from_pairs(pairs)(0) + 3 == cfcore.evaluate_finite(pairs, b0=3)


def test_residual_sandwich():
    stream = CoefficientStream.constant(2, 3)
    tau = cfcore.evaluate(stream, Fraction(1, 10**60)).midpoint
    for n in range(25):
        lo, hi = cfcore.residual_bounds(stream, n)
        s = cfcore.state_at(stream, n)
        assert lo < abs(s.B_cur * tau - s.A_cur) < hi


def test_json_round_trips():
    s = cfcore.state_at(CoefficientStream(lambda n: (n**20, n)), 30)
    text = json.dumps(s.to_json())
    assert ConvergentState.from_json(json.loads(text)) == s
    assert all(isinstance(v, str) for k, v in s.to_json().items() if k != "n")
    enc = cfcore.enclosure(CoefficientStream.constant(1, 1), 30)
    again = json.loads(json.dumps(enc.to_json()))
    assert Enclosure.from_json(again) == enc and again == enc.to_json()


def test_enclosure_decimal_and_map():
    enc = cfcore.evaluate(CoefficientStream.constant(2, 1), Fraction(1, 10**20))
    assert enc.decimal(10) in ("1.0000000000", "0.9999999999", "1.0000000001")
    shifted = enc.map(Mobius(1, 1, 0, 1))
    assert 2 in shifted


def test_mobius_algebra():
    m = Mobius(2, 1, 1, 1)
    assert (m @ Mobius.identity()).same_map(m)
    assert Mobius(4, 2, 2, 2).same_map(m)
    assert m.det == 1
    assert (m @ Mobius.level(1, 1))(Fraction(1, 3)) == m(Mobius.level(1, 1)(Fraction(1, 3)))


def test_random_streams_match_float_evaluation():
    rng = random.Random(7)
    for _ in range(20):
        pairs = [(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(40)]
        x = 0.0
        for a, b in reversed(pairs):
            x = a / (b + x)
        stream = CoefficientStream.from_lists([a for a, _ in pairs], [b for _, b in pairs])
        assert abs(float(cfcore.convergent(stream, 40).value) - x) < 1e-12
