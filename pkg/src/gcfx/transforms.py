"""Equivalence transformations and transport of irrationality measures.

An equivalence transformation rescales the levels of a continued fraction by
nonzero factors ``e_n``:

    a'_1 = e_1 a_1,   a'_n = e_{n-1} e_n a_n,   b'_n = e_n b_n

which multiplies ``A_n`` and ``B_n`` by the same product ``e_1 ... e_n`` and so
leaves every convergent value unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cfcore import CoefficientStream
from .errors import InvalidMapError, InvalidScalingError, InvalidValueError


def _lcm(x: int, y: int) -> int:
    return x * y // math.gcd(x, y)


@dataclass(frozen=True)
class EquivalenceScaling:
    """Scaling factors ``e_n`` for ``n >= 1``; ``factor`` must be pure."""

    factor: Callable[[int], Fraction]
    label: str = ""

    def __call__(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        e = Fraction(self.factor(n))
        if e == 0:
            raise InvalidScalingError(f"e_{n} = 0")
        return e

    def __mul__(self, other: "EquivalenceScaling") -> "EquivalenceScaling":
        return EquivalenceScaling(lambda n: self(n) * other(n), f"({self.label})*({other.label})")

    @classmethod
    def unit(cls) -> "EquivalenceScaling":
        return cls(lambda n: Fraction(1), "1")


def _normalize(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def equivalence(stream: CoefficientStream, scaling: EquivalenceScaling,
                integral: bool = False) -> CoefficientStream:
    """Rescale ``stream`` by ``scaling``.

    The result is a rational stream unless ``integral=True``, in which case
    any non-integer coefficient is rejected when generated.
    """
    def generator(n):
        a, b = stream.pair(n)
        e_prev, e = scaling(n - 1), scaling(n)
        if e == 0:
            raise InvalidScalingError(f"e_{n} = 0")
        return _normalize(e_prev * e * a), _normalize(e * b)

    return CoefficientStream(generator, b0=stream.b0, label=f"equiv[{scaling.label}]({stream.label})",
                             integral=integral)


class _GreedyScaling:
    """Sequential minimal scalings, memoized because ``e_n`` depends on ``e_{n-1}``."""

    def __init__(self, stream: CoefficientStream):
        self.stream = stream
        self.values = [1]

    def __call__(self, n: int) -> int:
        while len(self.values) <= n:
            k = len(self.values)
            a, b = self.stream.pair(k)
            x = self.values[-1] * Fraction(a)
            self.values.append(_lcm(x.denominator, Fraction(b).denominator))
        return self.values[n]


def integerize(stream: CoefficientStream) -> tuple[CoefficientStream, EquivalenceScaling]:
    """Convert a positive rational stream to an equivalent integer stream.

    ``e_n`` is the least positive integer clearing the denominators of both
    ``e_{n-1} a_n`` and ``b_n``.  Already-integral streams get ``e_n = 1``.
    """
    b0 = stream.b0
    if isinstance(b0, Fraction) and b0.denominator != 1:
        raise InvalidValueError("integerize needs an integer b0; split off the fractional part first")
    greedy = _GreedyScaling(stream)
    scaling = EquivalenceScaling(lambda n: Fraction(greedy(n)), "greedy")
    out = equivalence(stream, scaling, integral=True)
    return CoefficientStream(out.generator, b0=int(b0), label=f"integer({stream.label})"), scaling


@dataclass(frozen=True)
class IrrationalityMeasure:
    """``|N tau - M| >= c / N**omega`` for all integers ``M`` and ``N >= H``."""

    omega: float
    c: float
    H: float

    def __post_init__(self):
        if not (self.omega > 0 and self.c > 0 and self.H > 0):
            raise InvalidValueError("omega, c and H must all be positive")


def transport_linear(measure: IrrationalityMeasure, q: int, t: int, r: int = 0) -> IrrationalityMeasure:
    """Measure for ``(q/t) tau + r/t`` given a measure for ``tau``."""
    if q == 0 or t == 0:
        raise InvalidMapError("q and t must be nonzero")
    return IrrationalityMeasure(
        measure.omega,
        measure.c / (abs(t) * abs(q) ** measure.omega),
        measure.H / abs(q),
    )


def transport_reciprocal(measure: IrrationalityMeasure, tau_abs: float) -> IrrationalityMeasure:
    """Measure for ``1/tau`` given a measure for ``tau`` and ``|tau|``."""
    if not tau_abs > 0:
        raise InvalidValueError("|tau| must be positive")
    return IrrationalityMeasure(
        measure.omega,
        measure.c / (tau_abs * (1 / tau_abs + 1) ** measure.omega),
        tau_abs * (measure.H + 1),
    )
