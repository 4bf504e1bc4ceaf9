"""Named continued fraction families and the morphic words behind some of them.

Every family resolves to a :class:`Family`: an integer coefficient stream,
optionally the rational stream it was integerized from, an outer Möbius map
("framing") when the named value is a fractional linear image of the tail,
and the growth parameters used to bound its irrationality exponent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from . import bounds
from .bounds import (BoundedGrowth, BoundReport, Condition, ExponentialGrowth, PolynomialGrowth,
                     CERTIFIED)
from .cfcore import CoefficientStream, Enclosure, Mobius, evaluate
from .errors import FamilyParamError, InvalidValueError
from .transforms import EquivalenceScaling, equivalence, integerize


# -- morphic words ------------------------------------------------------------

class MorphicWord:
    """Fixed point of a prolongable morphism over {0, 1}.

    The cached prefix only ever grows, by re-applying the morphism to what is
    already known.
    """

    def __init__(self, morphism: dict[int, tuple[int, ...]], seed: int = 0, name: str = ""):
        image = morphism[seed]
        if len(image) < 2 or image[0] != seed:
            raise InvalidValueError("morphism must be prolongable at the seed")
        self.morphism = morphism
        self.seed = seed
        self.name = name
        self._images = {k: bytes(v) for k, v in morphism.items()}
        self._prefix = bytes([seed])

    def _extend(self, n: int) -> None:
        prefix = self._prefix
        while len(prefix) < n:
            grown = b"".join(self._images[x] for x in prefix)
            if len(grown) <= len(prefix):
                raise InvalidValueError("morphism does not grow the fixed point")
            prefix = grown
        self._prefix = prefix

    def prefix(self, n: int) -> bytes:
        if n < 1:
            raise ValueError("n must be at least 1")
        if len(self._prefix) < n:
            self._extend(n)
        return self._prefix[:n]

    def __getitem__(self, n: int) -> int:
        """Letter ``n``, counting from 1."""
        if n < 1:
            raise IndexError("letters are indexed from 1")
        if len(self._prefix) < n:
            self._extend(max(n, 2 * len(self._prefix)))
        return self._prefix[n - 1]

    def __repr__(self):
        return f"MorphicWord({self.name or self.morphism!r})"


THUE_MORSE = MorphicWord({0: (0, 1), 1: (1, 0)}, 0, "thue-morse")
FIBONACCI = MorphicWord({0: (0, 1), 1: (0,)}, 0, "fibonacci")


def word_prefix(word: MorphicWord, n: int) -> str:
    return "".join("01"[x] for x in word.prefix(n))


def density(word: MorphicWord, n: int) -> Fraction:
    """Proportion of ones among the first ``n`` letters."""
    return Fraction(word.prefix(n).count(1), n)


PHI = (1 + math.sqrt(5)) / 2


# -- families -----------------------------------------------------------------

@dataclass
class Family:
    name: str
    stream: CoefficientStream
    growth: Optional[bounds.GrowthSpec] = None
    framing: Optional[Mobius] = None
    rational: Optional[CoefficientStream] = None
    scaling: Optional[EquivalenceScaling] = None
    notes: str = ""
    extra_conditions: list[Condition] = field(default_factory=list)

    def evaluate(self, target_width, max_terms: int = 100_000) -> Enclosure:
        """Enclosure of the tail, mapped through the framing when there is one.

        The framing can stretch intervals, so the tail is refined until the
        framed width also meets the target.
        """
        target = Fraction(target_width)
        tail_target = target
        while True:
            tail = evaluate(self.stream, tail_target, max_terms)
            if self.framing is None:
                return tail
            framed = tail.map(self.framing)
            if framed.width <= target:
                return framed
            tail_target = tail_target * target / framed.width / 2


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)


def _param(params: dict, name: str, default=None, kind=int, positive=True):
    if name not in params:
        if default is None:
            raise FamilyParamError(f"missing parameter {name!r}")
        return default
    raw = params[name]
    try:
        value = kind(raw) if not isinstance(raw, kind) else raw
    except (TypeError, ValueError) as exc:
        raise FamilyParamError(f"parameter {name!r}: {exc}") from None
    if kind is int and isinstance(raw, str) and Fraction(raw).denominator != 1:
        raise FamilyParamError(f"parameter {name!r} must be an integer")
    if positive and value <= 0:
        raise FamilyParamError(f"parameter {name!r} must be positive, got {value}")
    return value


def _int_list(params: dict, name: str, length: int, default: int = 1) -> list[int]:
    raw = params.get(name)
    if raw is None:
        return [default] * length
    if isinstance(raw, int):
        raw = [raw]
    elif isinstance(raw, str):
        raw = [x for x in raw.replace(";", ",").split(",") if x.strip()]
    try:
        values = [int(x) for x in raw]
    except (TypeError, ValueError) as exc:
        raise FamilyParamError(f"parameter {name!r}: {exc}") from None
    if len(values) != length or any(v <= 0 for v in values):
        raise FamilyParamError(f"{name} needs {length} positive integers")
    return values


def _thue_morse_cf(params):
    w = THUE_MORSE
    stream = CoefficientStream(lambda n: (2 ** w[n], 2 ** (w[n] + 1)), label="tau_t")
    return Family("thue_morse_cf", stream, BoundedGrowth(1, 2, 2, 4))


def _fibonacci_cf(params):
    w = FIBONACCI
    stream = CoefficientStream(lambda n: (2 ** w[n], 2 ** (w[n] + 1)), label="tau_f")
    return Family("fibonacci_cf", stream, BoundedGrowth(1, 2, 2, 4))


def _ft_mixed_cf(params):
    f, t = FIBONACCI, THUE_MORSE
    stream = CoefficientStream(lambda n: (2 ** f[n], 2 ** t[n]), label="tau_ft")
    return Family("ft_mixed_cf", stream, BoundedGrowth(1, 2, 1, 2))


def _exp_point(params):
    x = _param(params, "x", positive=False)
    y = _param(params, "y")
    if x == 0:
        raise FamilyParamError("x must be nonzero")
    if 2 * y - x <= 0:
        raise FamilyParamError("need 2y - x > 0 so that the framing stays positive")
    stream = CoefficientStream(lambda n: (x * x, (4 * n + 2) * y), label=f"exp({x}/{y}) tail")
    # e**(x/y) = 1 + 2x / (2y - x + tau) = (tau + 2y + x) / (tau + 2y - x)
    framing = Mobius(1, 2 * y + x, 1, 2 * y - x)
    growth = PolynomialGrowth(x * x, 0, 4 * y, 1, 6 * y, 1)
    return Family("exp_point", stream, growth, framing,
                  notes="e^(x/y) = 1 + 2x/(2y - x + tau), tau = K x^2/((4n+2)y)")


def _rogers_ramanujan(params):
    a, b, r, s = (_param(params, k) for k in "abrs")
    q, t = Fraction(a, b), Fraction(r, s)
    rational = CoefficientStream(lambda n: (q**n * t, 1), label=f"RR({q},{t})", integral=False)
    stream, scaling = integerize(rational)
    growth = ExponentialGrowth(r, a, 1, 1, math.sqrt(b), 1, s * math.sqrt(b), math.sqrt(b), 1)
    cond = Condition("a^2 < b", a * a < b, f"a = {a}, b = {b}")
    return Family("rogers_ramanujan", stream, growth, rational=rational, scaling=scaling,
                  extra_conditions=[cond],
                  notes="growth from e_n = b^((n+1)/2) s (n odd), b^(n/2) (n even)")


def rogers_ramanujan_scaling(b: int, s: int) -> EquivalenceScaling:
    """The hand-picked scaling that turns RR(a/b, r/s) into ``a_n = a**n r``."""
    return EquivalenceScaling(
        lambda n: Fraction(b ** ((n + 1) // 2) * s) if n % 2 else Fraction(b ** (n // 2)),
        f"RR(b={b}, s={s})")


def _m_of_q(params):
    a, b = _param(params, "a"), _param(params, "b")
    q = Fraction(a, b)
    rational = CoefficientStream(lambda n: (q ** (2 * n), 1 + q**n), label=f"M({q})", integral=False)
    stream, scaling = integerize(rational)
    # with e_n = b**(n+1): a_n = b a**(2n), b_n = b**(n+1) + b a**n
    growth = ExponentialGrowth(b, a * a, 1, b, b, 1, 2 * b, max(a, b), 1)
    cond = Condition("a^2 < b", a * a < b, f"a = {a}, b = {b}")
    return Family("m_of_q", stream, growth, rational=rational, scaling=scaling, extra_conditions=[cond],
                  notes="growth from e_n = b^(n+1): a_n = b a^(2n), b_n = b^(n+1) + b a^n")


def _rational_param(params, name) -> Fraction:
    if name not in params:
        raise FamilyParamError(f"missing parameter {name!r}")
    try:
        value = Fraction(params[name])
    except (TypeError, ValueError) as exc:
        raise FamilyParamError(f"parameter {name!r}: {exc}") from None
    if value <= 0:
        raise FamilyParamError(f"parameter {name!r} must be positive")
    return value


def _tasoev1(params):
    u, v = _rational_param(params, "u"), _rational_param(params, "v")
    x, y = _param(params, "x"), _param(params, "y")
    base = Fraction(x, y)
    rational = CoefficientStream(lambda n: (1, (u if n % 2 else v) * base**n),
                                 label=f"T1({u},{v},{base})", integral=False)
    stream, scaling = integerize(rational)
    # with e_n = y**n (den u or den v): a_n <= den(u) den(v) y**(2n), b_n >= min(num u, num v) x**n
    r = u.denominator * v.denominator
    growth = ExponentialGrowth(r, y * y, 1, min(u.numerator, v.numerator), x, 1,
                               max(u.numerator, v.numerator), x, 1)
    cond = Condition("y^2 < x", y * y < x, f"x = {x}, y = {y}")
    return Family("tasoev1", stream, growth, rational=rational, scaling=scaling, extra_conditions=[cond],
                  notes="growth from e_n = y^n times the denominator of u (n odd) or v (n even)")


def _tasoev2(params):
    u, v = _rational_param(params, "u"), _rational_param(params, "v")
    x, y, s, t = (_param(params, k) for k in "xyst")
    qa, qb = Fraction(x, y), Fraction(s, t)
    rational = CoefficientStream(
        lambda n: (1, u * qa ** ((n + 1) // 2) if n % 2 else v * qb ** (n // 2)),
        label=f"T2({u},{v},{qa},{qb})", integral=False)
    stream, scaling = integerize(rational)
    # with e_{2m-1} = den(u) y**m, e_{2m} = den(v) t**m: a_n <= den(u) den(v) y (yt)**(n/2),
    # b_n >= min(num u, num v) min(x, s)**(n/2)
    r = u.denominator * v.denominator * y
    lo, hi = min(x, s), max(x, s)
    growth = ExponentialGrowth(r, math.sqrt(y * t), 1, min(u.numerator, v.numerator), math.sqrt(lo), 1,
                               max(u.numerator, v.numerator) * math.sqrt(hi), math.sqrt(hi), 1)
    cond = Condition("yt < min(x, s)", y * t < lo, f"x = {x}, y = {y}, s = {s}, t = {t}")
    return Family("tasoev2", stream, growth, rational=rational, scaling=scaling, extra_conditions=[cond],
                  notes="growth from e_(2m-1) = den(u) y^m, e_(2m) = den(v) t^m")


def _bundschuh(params):
    m, period = _param(params, "m"), _param(params, "s")
    t = _int_list(params, "t", period)
    u = _int_list(params, "u", period)
    v = _int_list(params, "v", period)
    w = _int_list(params, "w", period)

    def bar(n):
        return (n - 1) % period

    def generator(n):
        i = bar(n)
        return 1, Fraction(t[i], u[i]) + Fraction(v[i], w[i]) * (-(-n // period)) ** m

    rational = CoefficientStream(generator, label="bundschuh", integral=False)
    stream, scaling = integerize(rational)
    alpha = max(u[i] * w[i] * u[(i + 1) % period] * w[(i + 1) % period] for i in range(period))
    alpha = max(alpha, u[0] * w[0])
    beta2 = max(t[i] * w[i] + v[i] * u[i] for i in range(period)) * Fraction(1 + period, period) ** m
    growth = PolynomialGrowth(alpha, 0, Fraction(1, period**m), m, beta2, m)
    return Family("bundschuh", stream, growth, rational=rational, scaling=scaling,
                  notes="growth from e_n = u_nbar w_nbar")


def bundschuh_scaling(u: list[int], w: list[int]) -> EquivalenceScaling:
    period = len(u)
    return EquivalenceScaling(lambda n: Fraction(u[(n - 1) % period] * w[(n - 1) % period]), "u w")


_TRIB_BASE = ((1, 1, 1), (1, 0, 0), (0, 1, 0))


def _mat_mul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)) for i in range(3))


@lru_cache(maxsize=4096)
def tribonacci(m: int) -> int:
    """``T_m`` with ``T_0 = T_1 = 0``, ``T_2 = 1``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m < 3:
        return (0, 0, 1)[m]
    result = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    base, e = _TRIB_BASE, m - 2
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        e >>= 1
    # (T_m, T_{m-1}, T_{m-2}) = M**(m-2) (T_2, T_1, T_0)
    return result[0][0]


TRIBONACCI_ROOT = 1.8392867552141612


def _tribonacci_cf(params):
    l, k = _param(params, "l", 1), _param(params, "k", 2)
    if not 1 <= l < k:
        raise FamilyParamError("need 1 <= l < k")
    # T_1 = 0 makes the first level 0/0; the stream is the tail from index 2
    stream = CoefficientStream(lambda j: (tribonacci((j + 1) ** l), tribonacci((j + 1) ** k)),
                               label=f"K T_(n^{l}) / T_(n^{k}), n >= 2")
    rho = TRIBONACCI_ROOT
    # T_m <= rho**(m-2) and T_m >= rho**(m-3) for m >= 2; index m = (j+1)**power
    growth = ExponentialGrowth(1.0, rho ** (2 ** l), l, rho ** -3, rho, k, 1.0, rho ** (2 ** k), k)
    return Family("tribonacci_cf", stream, growth,
                  notes="stream index j corresponds to n = j + 1; growth parameters in the "
                        "shifted index are conservative envelopes")


def _rational_19_7(params):
    def a(n):
        return 6 * n**7 + 6 * n**6 + 2 * n**5 + 3 * n + 2

    def b(n):
        return 6 * n**7 - 6 * n**6 + 2 * n**5 + 3 * n - 5

    # b_1 = 0, so the positive-coefficient stream starts at n = 2; its value is 19/7
    stream = CoefficientStream(lambda j: (a(j + 1), b(j + 1)), label="K_(n>=2) rational example")
    # in the shifted index j = n - 1: a <= 19 * 2**7 j**7 and 3 j**7 <= b <= 11 * 2**7 j**7
    growth = PolynomialGrowth(2432, 7, 3, 7, 1408, 7)
    return Family("rational_19_7", stream, growth, framing=None,
                  notes="value 19/7; prepending the n = 1 level a_1/(0 + tau) = 19/tau gives 7")


def rational_19_7_full_framing() -> Mobius:
    """``x -> 19 / x``: the n = 1 level (a_1 = 19, b_1 = 0) in front of the tail."""
    return Mobius(0, 19, 1, 0)


@dataclass(frozen=True)
class RegistryEntry:
    build: Callable[[dict], Family]
    params: str
    description: str
    default_route: str


REGISTRY: dict[str, RegistryEntry] = {
    "thue_morse_cf": RegistryEntry(_thue_morse_cf, "", "K 2^t_n / 2^(t_n+1), Thue-Morse t", "density"),
    "fibonacci_cf": RegistryEntry(_fibonacci_cf, "", "K 2^f_n / 2^(f_n+1), Fibonacci word f", "density"),
    "ft_mixed_cf": RegistryEntry(_ft_mixed_cf, "", "K 2^f_n / 2^t_n", "density"),
    "exp_point": RegistryEntry(_exp_point, "x (nonzero int), y (>=1)", "e^(x/y) via its tail", "growth"),
    "rogers_ramanujan": RegistryEntry(_rogers_ramanujan, "a, b, r, s", "RR(a/b, r/s) = K q^n t / 1", "growth"),
    "m_of_q": RegistryEntry(_m_of_q, "a, b", "M(a/b) = K q^(2n) / (1 + q^n)", "growth"),
    "tasoev1": RegistryEntry(_tasoev1, "u, v (rationals), x, y", "T1(u, v, x/y)", "growth"),
    "tasoev2": RegistryEntry(_tasoev2, "u, v (rationals), x, y, s, t", "T2(u, v, x/y, s/t)", "growth"),
    "bundschuh": RegistryEntry(_bundschuh, "m, s, t, u, v, w (lists of length s)",
                               "K 1 / (c_n + d_n ceil(n/s)^m)", "growth"),
    "tribonacci_cf": RegistryEntry(_tribonacci_cf, "l, k (1 <= l < k)", "K T_(n^l) / T_(n^k)", "growth"),
    "rational_19_7": RegistryEntry(_rational_19_7, "", "polynomial example with rational value 19/7",
                                   "growth"),
}


def family_stream(spec: FamilySpec) -> Family:
    try:
        entry = REGISTRY[spec.family]
    except KeyError:
        raise FamilyParamError(f"unknown family {spec.family!r}") from None
    return entry.build(dict(spec.params))


# closed-form nu from letter densities
def density_nu(family: str) -> float:
    if family == "thue_morse_cf":
        return math.log(2) / math.log(5 + 4 * math.sqrt(2))
    if family == "fibonacci_cf":
        return math.log(2) / (PHI * math.log(1 + math.sqrt(2)) + math.log(3 + math.sqrt(2)))
    if family == "ft_mixed_cf":
        return math.log(4) / (PHI**2 * (math.log(3 + math.sqrt(6)) - math.log(2)))
    raise FamilyParamError(f"no density route for {family!r}")


def family_bound(spec: FamilySpec, route: Optional[str] = None) -> BoundReport:
    """Certified exponent bound for a family.

    ``route`` is ``"growth"`` (the growth theorem matching the declared
    parameters) or ``"density"`` (morphic families only: the ratio bound with
    ``nu`` from letter densities).  The default is the registry's best route.
    """
    family = family_stream(spec)
    route = route or REGISTRY[spec.family].default_route
    if route == "density":
        nu = density_nu(spec.family)
        conds = [Condition("letter densities", True,
                           "Pi_n and B_n growth rates from limiting densities of the morphic words")]
        return BoundReport("lemma_density", conds, bounds.lemma_bound(nu), nu, CERTIFIED)
    if route not in ("growth", "bounded"):
        raise FamilyParamError(f"unknown route {route!r}")
    report = bounds.growth_bound(family.growth)
    if family.extra_conditions:
        report.conditions = list(report.conditions) + family.extra_conditions
        if not report.condition_ok:
            report.mu_upper = None
    return report


def list_families() -> list[dict]:
    return [{"family": name, "params": e.params, "description": e.description, "default_route": e.default_route}
            for name, e in REGISTRY.items()]
