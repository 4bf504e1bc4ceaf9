"""Continued fractions ``K a_n/1`` with ``a_n`` in {1, 2} and a prescribed exponent.

The construction starts from a simple continued fraction ``[0; c_1, c_2, ...]``
with ``c_n = 1`` except at ``n = 2 mod 4``, where

    c_n = (7 * 4**f(n) - 4) / 3,   f(n) = ceil(log_4((3 B_{n-1}**(s-2) + 4) / 7)),

``B_{n-1}`` being the simple-CF denominator.  Each group of four quotients
``1, c, 1, 1`` with ``c = (7*4**k - 4)/3`` is the same Möbius map as the word
``2**(2k) 1 1 1 1 2**(2k)`` of partial numerators over unit denominators, so the
simple CF can be rewritten over the alphabet {1, 2}.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from typing import Optional, Union

from mpmath import iv

from .cfcore import CoefficientStream, Enclosure, Mobius, enclosure, evaluate_finite
from .errors import (DomainError, InvalidValueError, NeedsMorePrecisionError, ResourceLimitError,
                     TieUnresolvedError)

INFINITY = math.inf
Exponent = Union[Fraction, float]

DEFAULT_START_BITS = 128
MAX_BITS = 2**16
# rational exponents with denominators up to this size are compared exactly
EXACT_DENOMINATOR_LIMIT = 64


def parse_exponent(value) -> Exponent:
    """Accept 1, rationals >= 2 (numbers or decimal strings) and infinity."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return INFINITY
        value = Fraction(text)
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INFINITY
        value = Fraction(str(value))
    value = Fraction(value)
    if value != 1 and value < 2:
        raise InvalidValueError(f"exponent must be 1, >= 2 or infinity; got {value}")
    return value


def _start_bits() -> int:
    return int(os.environ.get("GCFX_PRECISION_BITS", DEFAULT_START_BITS))


def compare_power(x: Fraction, base: int, e: Fraction) -> int:
    """Sign of ``x - base**e`` for positive rational ``x``, integer ``base >= 1``, rational ``e``."""
    x, e = Fraction(x), Fraction(e)
    if base == 1 or e == 0:
        return (x > 1) - (x < 1)
    p, q = e.numerator, e.denominator
    if q <= EXACT_DENOMINATOR_LIMIT:
        # x**q vs base**p, cleared of denominators
        lhs_num, lhs_den = x.numerator ** q, x.denominator ** q
        if p >= 0:
            lhs, rhs = lhs_num, lhs_den * base ** p
        else:
            lhs, rhs = lhs_num * base ** (-p), lhs_den
        return (lhs > rhs) - (lhs < rhs)
    bits = _start_bits()
    saved = iv.prec
    try:
        while bits <= MAX_BITS:
            iv.prec = bits
            diff = iv.mpf(x.numerator) / x.denominator - iv.mpf(base) ** (iv.mpf(p) / q)
            if diff.a > 0:
                return 1
            if diff.b < 0:
                return -1
            bits *= 2
    finally:
        iv.prec = saved
    raise TieUnresolvedError(f"cannot separate {x} from {base}**({e}) within {MAX_BITS} bits",
                             {"x": str(x), "base": base, "exponent": str(e), "bits": MAX_BITS})


def big_quotient(k: int) -> int:
    """``(7 * 4**k - 4) / 3``, always an integer."""
    if k < 0:
        raise ValueError("k must be non-negative")
    num = 7 * 4**k - 4
    assert num % 3 == 0
    return num // 3


def verify_lasku(c: int, x) -> tuple[Fraction, Fraction]:
    """Both sides of the nine-level identity for quotient ``c`` and tail ``x``.

    Left: ``2/1, 2/1, 1/1, 1/c, 1/1, 1/1, 2/1, 2/1, x/1`` evaluated exactly.
    Right: ``((4c+5)x + 8c + 9) / ((4c+6)x + 8c + 11)``.
    """
    if c < 1:
        raise InvalidValueError("c must be a positive integer")
    x = Fraction(x)
    if x < 0:
        raise DomainError("only x >= 0 is supported")
    lhs = evaluate_finite([(2, 1), (2, 1), (1, 1), (1, c), (1, 1), (1, 1), (2, 1), (2, 1)], tail=x)
    rhs = ((4 * c + 5) * x + 8 * c + 9) / ((4 * c + 6) * x + 8 * c + 11)
    return lhs, rhs


def lasku_simple_side(c: int, x) -> Fraction:
    """The simple-CF form ``1/1, 1/(4c+4), 1/1, 1/1, x/1`` of the same value."""
    return evaluate_finite([(1, 1), (1, 4 * c + 4), (1, 1), (1, 1)], tail=Fraction(x))


@dataclass(frozen=True)
class BlockWord:
    """``2**(2k) 1 1 1 1 2**(2k)``: partial numerators, every denominator being 1."""

    k: int
    word: tuple[int, ...]

    @property
    def quotient(self) -> int:
        return big_quotient(self.k)

    def mobius(self) -> Mobius:
        return Mobius.from_pairs((w, 1) for w in self.word)

    def simple_mobius(self) -> Mobius:
        return Mobius.from_pairs([(1, 1), (1, self.quotient), (1, 1), (1, 1)])

    def matches_simple(self) -> bool:
        return self.mobius().same_map(self.simple_mobius())


def expand_block(k: int) -> BlockWord:
    if k < 0:
        raise ValueError("k must be non-negative")
    twos = (2,) * (2 * k)
    return BlockWord(k, twos + (1, 1, 1, 1) + twos)


def _power_exponent(n: int, s: Exponent) -> Fraction:
    # the Liouville case puts n in place of s
    return Fraction(n - 2) if s == INFINITY else Fraction(s) - 2


def f_of_n(n: int, s: Exponent, B_prev: int) -> int:
    """Least ``k >= 0`` with ``4**k >= (3 B_prev**(s-2) + 4) / 7``.

    Equivalently ``(7 * 4**k - 4) / 3 >= B_prev**(s-2)``, which is how it is
    decided: exactly for integer and small-denominator exponents, by interval
    arithmetic with precision doubling otherwise.
    """
    if n % 4 != 2:
        raise ValueError("f(n) is only defined for n = 2 mod 4")
    if B_prev < 1:
        raise ValueError("B_prev must be positive")
    e = _power_exponent(n, s)
    if e < 0:
        raise InvalidValueError("exponent s must be at least 2")
    if e == 0 or B_prev == 1:
        return 0
    # float guess, then exact correction
    log_target = math.log(3) + float(e) * math.log(B_prev) - math.log(7)
    k = max(0, math.ceil(log_target / math.log(4)))

    def enough(j):
        return compare_power(Fraction(big_quotient(j)), B_prev, e) >= 0

    while k > 0 and enough(k - 1):
        k -= 1
    while not enough(k):
        k += 1
    return k


@dataclass(frozen=True)
class Block:
    n: int
    f: int
    c: int


@dataclass
class PrescribedPlan:
    """Both representations of ``tau_s`` up to ``4 * n_blocks`` simple quotients.

    ``c[i]`` is ``c_{i+1}``; ``B_simple[i]`` and ``A_simple[i]`` are ``B_i``,
    ``A_i`` of ``[0; c_1, c_2, ...]`` starting from ``i = 0``.
    """

    s: Exponent
    n_blocks: int
    c: list[int]
    blocks: list[Block]
    B_simple: list[int]
    A_simple: list[int]
    word: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.c)

    def f(self, n: int) -> int:
        for block in self.blocks:
            if block.n == n:
                return block.f
        raise KeyError(n)

    def simple_stream(self) -> CoefficientStream:
        return CoefficientStream.from_lists([1] * len(self.c), self.c, label=f"simple tau_{self.s}")

    def gcf_stream(self) -> CoefficientStream:
        return CoefficientStream.from_lists(list(self.word), [1] * len(self.word), label=f"gcf tau_{self.s}")

    def simple_enclosure(self) -> Enclosure:
        if not self.c:
            raise InvalidValueError("the s = 1 plan has no simple continued fraction")
        return enclosure(self.simple_stream(), self.depth - 1)

    def gcf_enclosure(self) -> Enclosure:
        return enclosure(self.gcf_stream(), len(self.word) - 1)

    def word_rle(self) -> list[list[int]]:
        return [[letter, len(list(run))] for letter, run in groupby(self.word)]

    def c_bound_checks(self) -> list[dict]:
        """Check ``B_{n-1}**(s-2) <= c_n`` and ``c_n < 5 B_{n-1}**(s-2) - 2`` for every block."""
        out = []
        for block in self.blocks:
            B = self.B_simple[block.n - 1]
            e = _power_exponent(block.n, self.s)
            lower = compare_power(Fraction(block.c), B, e) >= 0
            upper = compare_power(Fraction(block.c + 2, 5), B, e) < 0
            out.append({"n": block.n, "lower_ok": lower, "upper_ok": upper})
        return out

    def to_json(self) -> dict:
        return {
            "s": "inf" if self.s == INFINITY else str(self.s),
            "blocks": [{"n": b.n, "f": b.f, "c": str(b.c)} for b in self.blocks],
            "word_rle": self.word_rle(),
            "word_length": len(self.word),
            "B_simple": [str(b) for b in self.B_simple],
        }


def prescribed_stream(s, n_blocks: int, bitlen_cap: int = 2**24) -> PrescribedPlan:
    """Build ``n_blocks`` groups of four simple quotients and the matching {1, 2} word."""
    s = parse_exponent(s)
    if n_blocks < 1:
        raise ValueError("n_blocks must be at least 1")
    if s == 1:
        return PrescribedPlan(s, n_blocks, [], [], [1], [0], (2,) * (4 * n_blocks))
    c, blocks, word = [], [], []
    A, B = [0], [1]
    A_prev, B_prev = 1, 0
    for n in range(1, 4 * n_blocks + 1):
        if n % 4 == 2:
            f = f_of_n(n, s, B[-1])
            cn = big_quotient(f)
            blocks.append(Block(n, f, cn))
            word.extend(expand_block(f).word)
        else:
            cn = 1
        c.append(cn)
        A_new = cn * A[-1] + (A[-2] if len(A) > 1 else A_prev)
        B_new = cn * B[-1] + (B[-2] if len(B) > 1 else B_prev)
        A.append(A_new)
        B.append(B_new)
        if B_new.bit_length() > bitlen_cap:
            raise ResourceLimitError(f"B_{n} exceeds {bitlen_cap} bits")
    return PrescribedPlan(s, n_blocks, c, blocks, B, A, tuple(word))


@dataclass(frozen=True)
class AuditRecord:
    n: int
    A: int
    B: int
    upper_holds: bool
    lower_holds: Optional[bool]
    distance_lo: Fraction
    distance_hi: Fraction
    bound_exponent: str

    def to_json(self) -> dict:
        return {"n": self.n, "A": str(self.A), "B": str(self.B), "upper_holds": self.upper_holds,
                "lower_holds": self.lower_holds, "bound_exponent": self.bound_exponent,
                "distance_lo": float(self.distance_lo), "distance_hi": float(self.distance_hi)}


def approximation_audit(plan: PrescribedPlan, n: int, tau: Optional[Enclosure] = None) -> AuditRecord:
    """Certify ``|tau - A_n/B_n| < B_n**(-s)`` and, for finite ``s > 2``, ``> B_n**(-s) / 5``.

    ``tau`` defaults to the deepest simple-CF enclosure of the plan.  With
    ``s`` infinite the exponent is ``n``.  An inequality the enclosure cannot
    decide raises :class:`NeedsMorePrecisionError`.
    """
    if n % 4 != 1:
        raise ValueError("audits are defined at n = 1 mod 4")
    if plan.s == 1:
        raise InvalidValueError("nothing to audit for s = 1")
    if plan.depth < n + 2:
        raise NeedsMorePrecisionError(f"plan depth {plan.depth} too shallow for n = {n}")
    tau = tau or plan.simple_enclosure()
    A, B = plan.A_simple[n], plan.B_simple[n]
    p = Fraction(A, B)
    d_far = max(abs(tau.lo - p), abs(tau.hi - p))
    d_near = Fraction(0) if tau.contains(p) else min(abs(tau.lo - p), abs(tau.hi - p))
    s = Fraction(n) if plan.s == INFINITY else Fraction(plan.s)

    if compare_power(d_far, B, -s) < 0:
        upper = True
    elif d_near > 0 and compare_power(d_near, B, -s) >= 0:
        upper = False
    else:
        raise NeedsMorePrecisionError(f"enclosure too wide to decide the upper inequality at n = {n}")

    lower = None
    if plan.s != INFINITY and s > 2:
        if d_near > 0 and compare_power(5 * d_near, B, -s) > 0:
            lower = True
        elif compare_power(5 * d_far, B, -s) <= 0:
            lower = False
        else:
            raise NeedsMorePrecisionError(f"enclosure too wide to decide the lower inequality at n = {n}")
    return AuditRecord(n, A, B, upper, lower, d_near, d_far, str(s))
