"""Exact convergent recurrences and guaranteed enclosures.

A generalized continued fraction ``b0 + a1/(b1 + a2/(b2 + ...))`` is handled
through its numerators ``A_n`` and denominators ``B_n``, which obey

    A_n = b_n A_{n-1} + a_n A_{n-2},    B_n = b_n B_{n-1} + a_n B_{n-2}

with ``A_{-1} = 1, B_{-1} = 0, A_0 = b0, B_0 = 1``.  Everything here works on
Python integers (or :class:`fractions.Fraction` for rational streams), so no
precision is ever lost.  Convergents are deliberately left unreduced: the
determinant identity and the residual bounds are statements about the
recurrence values themselves.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterator, NamedTuple, Sequence, Union

from .errors import InvalidCoefficientError, NonConvergenceError, ResourceLimitError

Number = Union[int, Fraction]

DEFAULT_BITLEN_CAP = 2**24
DEFAULT_MAX_TERMS = 100_000


def _check_coefficient(value, integral: bool, what: str, n: int) -> Number:
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise InvalidCoefficientError(f"{what}_{n} = {value!r} is not an exact number")
    if integral:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InvalidCoefficientError(f"{what}_{n} = {value} is not an integer")
            value = value.numerator
        value = int(value)
    if value <= 0:
        raise InvalidCoefficientError(f"{what}_{n} = {value} is not positive")
    return value


@dataclass(frozen=True)
class CoefficientStream:
    """Lazily generated partial coefficients ``(a_n, b_n)`` for ``n >= 1``.

    ``generator`` must be pure.  Coefficients are validated as they are
    produced; ``integral=False`` admits positive rationals (the input side of
    :mod:`gcfx.transforms`).
    """

    generator: Callable[[int], tuple]
    b0: Number = 0
    label: str = ""
    integral: bool = True

    def __post_init__(self):
        b0 = self.b0
        if isinstance(b0, Fraction) and b0.denominator == 1:
            b0 = b0.numerator
        if self.integral and (not isinstance(b0, int) or isinstance(b0, bool) or b0 < 0):
            raise InvalidCoefficientError(f"b0 = {self.b0!r} must be a non-negative integer")
        object.__setattr__(self, "b0", b0)

    def pair(self, n: int) -> tuple[Number, Number]:
        if n < 1:
            raise IndexError("partial coefficients are indexed from 1")
        a, b = self.generator(n)
        return (_check_coefficient(a, self.integral, "a", n),
                _check_coefficient(b, self.integral, "b", n))

    def pairs(self, start: int = 1) -> Iterator[tuple[Number, Number]]:
        n = start
        while True:
            yield self.pair(n)
            n += 1

    def head(self, count: int) -> list[tuple[Number, Number]]:
        return [self.pair(n) for n in range(1, count + 1)]

    @classmethod
    def constant(cls, a: int, b: int, b0: int = 0, label: str = "") -> "CoefficientStream":
        return cls(lambda n: (a, b), b0=b0, label=label or f"K {a}/{b}")

    @classmethod
    def from_lists(cls, a: Sequence, b: Sequence, b0: Number = 0, label: str = "",
                   integral: bool = True) -> "CoefficientStream":
        """Finite stream; asking for a term past the end raises IndexError."""
        if len(a) != len(b):
            raise ValueError("a and b must have the same length")
        a, b = tuple(a), tuple(b)
        return cls(lambda n: (a[n - 1], b[n - 1]), b0=b0, label=label, integral=integral)


@dataclass(frozen=True)
class ConvergentState:
    """Recurrence state at index ``n``: ``(A_{n-1}, A_n)``, ``(B_{n-1}, B_n)`` and ``Pi = a_1 ... a_n``."""

    n: int
    A_prev: Number
    A_cur: Number
    B_prev: Number
    B_cur: Number
    Pi: Number = 1

    @classmethod
    def initial(cls, b0: Number = 0) -> "ConvergentState":
        return cls(0, 1, b0, 0, 1, 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.A_cur) / self.B_cur

    def to_json(self) -> dict:
        return {"n": self.n, "A_prev": str(self.A_prev), "A_cur": str(self.A_cur),
                "B_prev": str(self.B_prev), "B_cur": str(self.B_cur), "Pi": str(self.Pi)}

    @classmethod
    def from_json(cls, data: dict) -> "ConvergentState":
        conv = _parse_number
        return cls(int(data["n"]), conv(data["A_prev"]), conv(data["A_cur"]),
                   conv(data["B_prev"]), conv(data["B_cur"]), conv(data["Pi"]))


def _parse_number(text: str) -> Number:
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


class Convergent(NamedTuple):
    """Unreduced convergent ``A_n / B_n``."""

    numerator: Number
    denominator: Number

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator) / self.denominator

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval ``[lo, hi]`` that contains the limit.

    ``lo`` and ``hi`` are the convergents with indices ``n_used`` and
    ``n_used + 1`` in increasing order.
    """

    lo: Fraction
    hi: Fraction
    n_used: int
    label: str = field(default="", compare=False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def issubset(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def map(self, mobius: "Mobius") -> "Enclosure":
        """Image under a Möbius map with no pole inside the interval."""
        if mobius.pole_in(self.lo, self.hi):
            raise ValueError("Möbius map has a pole inside the enclosure")
        x, y = mobius(self.lo), mobius(self.hi)
        return replace(self, lo=min(x, y), hi=max(x, y))

    def decimal(self, digits: int | None = None) -> str:
        """Midpoint as a decimal string, by default with as many digits as the width justifies."""
        if digits is None:
            digits = _digits_for_width(self.width)
        return format_decimal(self.midpoint, digits)

    def to_json(self) -> dict:
        return {"lo": _frac_str(self.lo), "hi": _frac_str(self.hi), "n_used": self.n_used,
                "width": _frac_str(self.width)}

    @classmethod
    def from_json(cls, data: dict) -> "Enclosure":
        return cls(Fraction(data["lo"]), Fraction(data["hi"]), int(data["n_used"]))


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _digits_for_width(width: Fraction) -> int:
    if width <= 0:
        return 50
    digits = 0
    while Fraction(1, 10**digits) > width:
        digits += 1
    return max(digits - 1, 0)


def format_decimal(x: Fraction, digits: int) -> str:
    """Round ``x`` half-up to ``digits`` places and format without floats."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**digits
    q = int(scaled + Fraction(1, 2))
    whole, frac = divmod(q, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def advance(state: ConvergentState, a: Number, b: Number) -> ConvergentState:
    """Apply one step of the recurrence with partial coefficients ``(a, b)``."""
    if isinstance(a, bool) or isinstance(b, bool) or a <= 0 or b <= 0:
        raise InvalidCoefficientError(f"partial coefficients must be positive, got a={a}, b={b}")
    return ConvergentState(
        state.n + 1,
        state.A_cur,
        b * state.A_cur + a * state.A_prev,
        state.B_cur,
        b * state.B_cur + a * state.B_prev,
        state.Pi * a,
    )


def _bit_length(x: Number) -> int:
    if isinstance(x, int):
        return x.bit_length()
    return max(x.numerator.bit_length(), x.denominator.bit_length())


def states(stream: CoefficientStream, bitlen_cap: int = DEFAULT_BITLEN_CAP) -> Iterator[ConvergentState]:
    """Yield the recurrence states for ``n = 0, 1, 2, ...``."""
    state = ConvergentState.initial(stream.b0)
    yield state
    for a, b in stream.pairs():
        state = advance(state, a, b)
        if _bit_length(state.B_cur) > bitlen_cap:
            raise ResourceLimitError(
                f"B_{state.n} has {_bit_length(state.B_cur)} bits, above the cap of {bitlen_cap}")
        yield state


def state_at(stream: CoefficientStream, n: int, bitlen_cap: int = DEFAULT_BITLEN_CAP) -> ConvergentState:
    if n < 0:
        raise ValueError("n must be non-negative")
    for state in states(stream, bitlen_cap):
        if state.n == n:
            return state
    raise AssertionError("unreachable")


def convergent(stream: CoefficientStream, n: int) -> Convergent:
    """The n-th convergent ``A_n / B_n`` with the recurrence values kept unreduced."""
    state = state_at(stream, n)
    return Convergent(state.A_cur, state.B_cur)


def convergents(stream: CoefficientStream, count: int) -> list[Convergent]:
    """Convergents with indices ``0 .. count``."""
    out = []
    for state in states(stream):
        out.append(Convergent(state.A_cur, state.B_cur))
        if state.n >= count:
            return out
    return out


def _bracket(s0: ConvergentState, s1: ConvergentState, label: str = "") -> Enclosure:
    x, y = s0.value, s1.value
    return Enclosure(min(x, y), max(x, y), s0.n, label)


def enclosure(stream: CoefficientStream, n: int) -> Enclosure:
    """Interval spanned by the consecutive convergents with indices ``n`` and ``n + 1``."""
    if n < 1:
        raise ValueError("enclosures start at n = 1")
    prev = None
    for state in states(stream):
        if state.n == n + 1:
            return _bracket(prev, state, stream.label)
        prev = state
    raise AssertionError("unreachable")


def evaluate(stream: CoefficientStream, target_width, max_terms: int = DEFAULT_MAX_TERMS,
             bitlen_cap: int = DEFAULT_BITLEN_CAP) -> Enclosure:
    """Smallest enclosure (by index) whose width is at most ``target_width``.

    Raises :class:`NonConvergenceError` carrying the last enclosure if the
    width is still too large once ``max_terms`` coefficients have been used.
    """
    target = Fraction(target_width) if not isinstance(target_width, float) else Fraction(str(target_width))
    if target <= 0:
        raise ValueError("target_width must be positive")
    num, den = target.numerator, target.denominator
    prev = None
    for state in states(stream, bitlen_cap):
        if prev is not None and prev.n >= 1:
            # |A_{n+1}/B_{n+1} - A_n/B_n| = Pi_{n+1} / (B_n B_{n+1})
            if state.Pi * den <= num * abs(prev.B_cur * state.B_cur):
                return _bracket(prev, state, stream.label)
        if state.n >= max_terms:
            last = _bracket(prev, state, stream.label) if prev is not None and prev.n >= 1 else None
            raise NonConvergenceError(
                f"width still above {target_width} after {max_terms} terms", last)
        prev = state
    raise AssertionError("unreachable")


def determinant(state: ConvergentState) -> Number:
    """``A_{n-1} B_n - A_n B_{n-1}``, which equals ``(-1)**n * Pi_n``."""
    return state.A_prev * state.B_cur - state.A_cur * state.B_prev


def determinant_holds(state: ConvergentState) -> bool:
    return determinant(state) == (-1) ** state.n * state.Pi


def residual_bounds(stream: CoefficientStream, n: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds on ``|B_n tau - A_n|``:

        b_{n+2} Pi_{n+1} / B_{n+2}  <  R_n  <  Pi_{n+1} / B_{n+1}
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    s1 = state_at(stream, n + 1)
    s2 = advance(s1, *stream.pair(n + 2))
    b_next = stream.pair(n + 2)[1]
    return Fraction(b_next * s1.Pi) / s2.B_cur, Fraction(s1.Pi) / s1.B_cur


def evaluate_finite(pairs: Sequence[tuple[Number, Number]], tail: Number = 0, b0: Number = 0) -> Fraction:
    """Value of ``b0 + a1/(b1 + ... + a_m/(b_m + tail))`` by backward evaluation."""
    value = Fraction(tail)
    for a, b in reversed(pairs):
        denom = b + value
        if denom == 0:
            raise ZeroDivisionError("vanishing denominator in finite continued fraction")
        value = Fraction(a) / denom
    return b0 + value


@dataclass(frozen=True)
class Mobius:
    """Integer (or rational) Möbius map ``x -> (p x + q) / (r x + s)``."""

    p: Number
    q: Number
    r: Number
    s: Number

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @classmethod
    def level(cls, a: Number, b: Number) -> "Mobius":
        """The map ``x -> a / (b + x)`` of a single continued fraction level."""
        return cls(0, a, 1, b)

    @classmethod
    def from_pairs(cls, pairs) -> "Mobius":
        """Composition of levels, so that ``from_pairs(P)(x) = evaluate_finite(P, x)``."""
        m = cls.identity()
        for a, b in pairs:
            m = m @ cls.level(a, b)
        return m

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(self.p * other.p + self.q * other.r, self.p * other.q + self.q * other.s,
                      self.r * other.p + self.s * other.r, self.r * other.q + self.s * other.s)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        den = self.r * x + self.s
        if den == 0:
            raise ZeroDivisionError("evaluation at the pole")
        return (self.p * x + self.q) / den

    @property
    def det(self) -> Number:
        return self.p * self.s - self.q * self.r

    def pole_in(self, lo, hi) -> bool:
        if self.r == 0:
            return False
        pole = Fraction(-self.s) / self.r
        return lo <= pole <= hi

    def same_map(self, other: "Mobius") -> bool:
        """Equality as maps, i.e. matrices equal up to a nonzero scalar."""
        a = (self.p, self.q, self.r, self.s)
        b = (other.p, other.q, other.r, other.s)
        return all(a[i] * b[j] == a[j] * b[i] for i in range(4) for j in range(i + 1, 4))

    def to_json(self) -> dict:
        return {k: _frac_str(Fraction(getattr(self, k))) for k in "pqrs"}
