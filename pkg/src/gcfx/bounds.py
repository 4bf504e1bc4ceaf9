"""Upper bounds for asymptotic irrationality exponents.

Three growth classes are supported, each reduced to the generic bound
``2 + nu / (1 - nu)`` where ``nu`` bounds ``limsup log Pi_n / log B_n``:

* bounded coefficients, ``alpha1 <= a_n <= alpha2`` and ``beta1 <= b_n <= beta2``;
* polynomial growth, ``a_n <= alpha n**l`` and ``beta1 n**k1 <= b_n <= beta2 n**k2``;
* exponential growth, ``a_n <= r alpha**(n**l)`` and
  ``s1 beta1**(n**k1) <= b_n <= s2 beta2**(n**k2)``.

Bounds computed from declared growth parameters are ``CERTIFIED``.  Bounds
computed from a finite run of the recurrence (:func:`nu_estimate`) are only
``EMPIRICAL``: a limsup cannot be read off finitely many terms.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .cfcore import CoefficientStream, advance, ConvergentState
from .errors import ConditionViolatedError, InvalidValueError

Real = Union[int, Fraction, float]

CERTIFIED = "CERTIFIED"
EMPIRICAL = "EMPIRICAL"


def as_real(value) -> Real:
    """Parse user input; decimal strings become exact rationals."""
    if isinstance(value, (int, Fraction, float)) and not isinstance(value, bool):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    raise InvalidValueError(f"cannot interpret {value!r} as a real parameter")


def _log(x: Real) -> float:
    return math.log(x) if not isinstance(x, Fraction) else math.log(x.numerator) - math.log(x.denominator)


def _less(x: Real, y: Real) -> bool:
    # exact when both sides are rational
    if isinstance(x, float) or isinstance(y, float):
        return float(x) < float(y)
    return Fraction(x) < Fraction(y)


@dataclass(frozen=True)
class Condition:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class BoundReport:
    theorem: str
    conditions: list[Condition]
    mu_upper: Optional[float]
    nu_limit: Optional[float] = None
    mode: str = CERTIFIED

    @property
    def condition_ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def require(self) -> float:
        """Return ``mu_upper`` or raise :class:`ConditionViolatedError`."""
        if not self.condition_ok:
            failed = ", ".join(c.name for c in self.conditions if not c.ok)
            raise ConditionViolatedError(f"{self.theorem}: condition(s) violated: {failed}", self)
        return self.mu_upper

    def to_json(self) -> dict:
        mu = self.mu_upper
        return {
            "theorem": self.theorem,
            "conditions": [asdict(c) for c in self.conditions],
            "mu_upper": mu if mu is None or math.isfinite(mu) else "inf",
            "nu_limit": self.nu_limit,
            "mode": self.mode,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundReport":
        mu = data["mu_upper"]
        return cls(data["theorem"], [Condition(**c) for c in data["conditions"]],
                   math.inf if mu == "inf" else mu, data.get("nu_limit"), data.get("mode", CERTIFIED))


# -- growth classes ---------------------------------------------------------

@dataclass(frozen=True)
class BoundedGrowth:
    alpha1: int
    alpha2: int
    beta1: int
    beta2: int

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidValueError(f"{name} must be a positive integer, got {v!r}")
        if self.alpha1 > self.alpha2 or self.beta1 > self.beta2:
            raise InvalidValueError("need alpha1 <= alpha2 and beta1 <= beta2")

    def admits(self, a: int, b: int, n: int = 1) -> bool:
        return self.alpha1 <= a <= self.alpha2 and self.beta1 <= b <= self.beta2


@dataclass(frozen=True)
class PolynomialGrowth:
    alpha: Real
    l: Real
    beta1: Real
    k1: Real
    beta2: Real
    k2: Real

    def __post_init__(self):
        if self.l < 0:
            raise InvalidValueError("l must be non-negative")
        for name in ("alpha", "beta1", "k1", "beta2", "k2"):
            if not getattr(self, name) > 0:
                raise InvalidValueError(f"{name} must be positive")

    def admits(self, a: int, b: int, n: int) -> bool:
        ln = math.log(n)
        return _log_within(math.log(a), -math.inf, _log(self.alpha) + float(self.l) * ln) and _log_within(
            math.log(b), _log(self.beta1) + float(self.k1) * ln, _log(self.beta2) + float(self.k2) * ln)


@dataclass(frozen=True)
class ExponentialGrowth:
    r: Real
    alpha: Real
    l: Real
    s1: Real
    beta1: Real
    k1: Real
    s2: Real
    beta2: Real
    k2: Real

    def __post_init__(self):
        if self.l < 0:
            raise InvalidValueError("l must be non-negative")
        for name in ("r", "alpha", "s1", "beta1", "k1", "s2", "beta2", "k2"):
            if not getattr(self, name) > 0:
                raise InvalidValueError(f"{name} must be positive")

    def admits(self, a: int, b: int, n: int) -> bool:
        """Check the declared inequalities at index ``n`` in the log domain."""
        la = _log(self.r) + float(n) ** float(self.l) * _log(self.alpha)
        lo = _log(self.s1) + float(n) ** float(self.k1) * _log(self.beta1)
        hi = _log(self.s2) + float(n) ** float(self.k2) * _log(self.beta2)
        return _log_within(math.log(a), -math.inf, la) and _log_within(math.log(b), lo, hi)


def _log_within(x: float, lo: float, hi: float, tol: float = 1e-12) -> bool:
    # float logs; relative slack absorbs rounding in large exponents
    slack = tol * (1 + abs(x))
    return lo - slack <= x <= hi + slack


GrowthSpec = Union[BoundedGrowth, PolynomialGrowth, ExponentialGrowth]


def check_growth(stream: CoefficientStream, spec: GrowthSpec, n_max: int) -> list[int]:
    """Indices ``n <= n_max`` where the stream breaks the declared growth inequalities."""
    return [n for n in range(1, n_max + 1) if not spec.admits(*stream.pair(n), n)]


# -- calculators ------------------------------------------------------------

def lemma_bound(nu: float) -> float:
    """``2 + nu / (1 - nu)``: exponent bound from a ratio ``limsup log Pi_n / log B_n <= nu``."""
    if not 0 <= nu:
        raise InvalidValueError("nu must be non-negative")
    if nu >= 1:
        raise ConditionViolatedError(f"nu = {nu} >= 1; the bound does not apply")
    return 2 + nu / (1 - nu)


def gamma1_exceeds(alpha1: int, alpha2: int, beta1: int) -> bool:
    """Exact test of ``(beta1 + sqrt(beta1**2 + 4 alpha1)) / 2 > alpha2``."""
    rhs = 2 * alpha2 - beta1
    if rhs < 0:
        return True
    return beta1 * beta1 + 4 * alpha1 > rhs * rhs


def bounded_bound(spec: BoundedGrowth) -> BoundReport:
    root = math.sqrt(spec.beta1 ** 2 + 4 * spec.alpha1)
    gamma1 = (spec.beta1 + root) / 2
    gamma2 = (spec.beta1 - root) / 2
    ok = gamma1_exceeds(spec.alpha1, spec.alpha2, spec.beta1)
    cond = Condition("gamma1 > alpha2", ok, f"gamma1 = {gamma1!r}, gamma2 = {gamma2!r}, alpha2 = {spec.alpha2}")
    if not ok:
        return BoundReport("bounded", [cond], None)
    if spec.alpha2 == 1:
        return BoundReport("bounded", [cond], 2.0, 0.0)
    la2 = math.log(spec.alpha2)
    lg = math.log(gamma1)
    return BoundReport("bounded", [cond], 2 + la2 / (lg - la2), la2 / lg)


def poly_bound(spec: PolynomialGrowth) -> BoundReport:
    l, k1, k2 = spec.l, spec.k1, spec.k2
    conds = [Condition("l < k1", _less(l, k1), f"l = {l}, k1 = {k1}"),
             Condition("k1 <= k2", not _less(k2, k1), f"k1 = {k1}, k2 = {k2}")]
    if not all(c.ok for c in conds):
        return BoundReport("poly", conds, None)
    if l == 0:
        return BoundReport("poly", conds, 2.0, 0.0)
    if isinstance(l, float) or isinstance(k1, float):
        nu, mu = float(l) / float(k1), 2 + float(l) / (float(k1) - float(l))
    else:
        nu, mu = Fraction(l) / Fraction(k1), 2 + Fraction(l) / (Fraction(k1) - Fraction(l))
    return BoundReport("poly", conds, float(mu), float(nu))


def exp_bound(spec: ExponentialGrowth) -> BoundReport:
    l, k1, k2 = spec.l, spec.k1, spec.k2
    conds = [Condition("k2 >= k1", not _less(k2, k1), f"k1 = {k1}, k2 = {k2}"),
             Condition("k1 + 1 > k2", _less(k2, k1 + 1), f"k1 = {k1}, k2 = {k2}")]
    if not all(c.ok for c in conds):
        return BoundReport("exp", conds, None)
    if _less(l, k1):
        conds.append(Condition("l < k1", True, f"l = {l}, k1 = {k1}"))
        return BoundReport("exp", conds, 2.0, 0.0)
    if l != k1:
        conds.append(Condition("l <= k1", False, f"l = {l} exceeds k1 = {k1}"))
        return BoundReport("exp", conds, None)
    ok = _less(spec.alpha, spec.beta1)
    conds.append(Condition("alpha < beta1", ok, f"alpha = {spec.alpha}, beta1 = {spec.beta1}"))
    if not ok:
        return BoundReport("exp", conds, None)
    la, lb = _log(spec.alpha), _log(spec.beta1)
    if la <= 0:
        # a_n >= 1 forces alpha >= 1 asymptotically; alpha <= 1 means Pi_n is subexponential
        return BoundReport("exp", conds, 2.0, 0.0)
    return BoundReport("exp", conds, 2 + la / (lb - la), la / lb)


def growth_bound(spec: GrowthSpec) -> BoundReport:
    if isinstance(spec, BoundedGrowth):
        return bounded_bound(spec)
    if isinstance(spec, PolynomialGrowth):
        return poly_bound(spec)
    if isinstance(spec, ExponentialGrowth):
        return exp_bound(spec)
    raise TypeError(f"unknown growth spec {spec!r}")


# -- empirical nu -----------------------------------------------------------

@dataclass
class NuTrace:
    """Samples ``(n, log Pi_n / log B_n, log B_{n+1} / log B_n)`` from one run.

    ``nu`` is the maximum of the first ratio over the trailing ``window``
    fraction of samples.  ``overlap_error`` is the largest relative gap
    between exact and log-domain ``log B_n`` where both were computed.
    """

    samples: list[tuple[int, float, float]]
    log_B: float
    log_Pi: float
    exact_until: int
    window: float = 0.2
    overlap_error: Optional[float] = None
    label: str = ""
    mode: str = field(default=EMPIRICAL, init=False)

    @property
    def nu(self) -> float:
        tail = self.samples[-max(1, int(len(self.samples) * self.window)):]
        return max(s[1] for s in tail)

    @property
    def growth_ratio(self) -> float:
        return self.samples[-1][2]

    def bound(self) -> BoundReport:
        nu = self.nu
        conds = [Condition("nu < 1", nu < 1, f"empirical nu = {nu!r} over trailing {self.window:.0%}"),
                 Condition("log B_{n+1}/log B_n -> 1 (reported, untested)", True,
                           f"last ratio = {self.growth_ratio!r}")]
        return BoundReport("lemma", conds, lemma_bound(nu) if nu < 1 else None, nu, EMPIRICAL)

    def summary(self) -> dict:
        return {"label": self.label, "n": self.samples[-1][0] if self.samples else None,
                "nu": self.nu, "growth_ratio": self.growth_ratio, "exact_until": self.exact_until,
                "overlap_error": self.overlap_error, "mode": self.mode}


def _softplus(y: float) -> float:
    """``log(1 + exp(y))`` without overflow."""
    return y + math.log1p(math.exp(-y)) if y > 30 else math.log1p(math.exp(y))


def _log_step(log_B: float, log_ratio: float, la: float, lb: float) -> tuple[float, float]:
    """Advance ``(log B_n, log(B_{n-1}/B_n))`` by one level with coefficients ``exp(la), exp(lb)``."""
    new = lb + log_B + _softplus(la + log_ratio - lb)
    return new, log_B - new


def nu_estimate(stream: CoefficientStream, N: int, exact_until: int = 500,
                window: float = 0.2, overlap: int = 50) -> NuTrace:
    """Run the recurrence to index ``N`` and sample ``log Pi_n / log B_n``.

    Up to ``exact_until`` the logs come from exact big integers; past that
    point ``log B_n`` follows the ratio recurrence

        log B_{n+1} = log b_{n+1} + log B_n + log1p(a_{n+1} B_{n-1} / (b_{n+1} B_n))

    The log-domain shadow is seeded ``overlap`` steps before the switch, so
    ``overlap_error`` measures how well the two modes agree.
    """
    if N < 3:
        raise InvalidValueError("need N >= 3")
    exact_until = max(2, min(exact_until, N + 1))
    seed_at = max(1, exact_until - overlap)
    state = ConvergentState.initial(0)
    samples = []
    shadow = None
    overlap_error = None
    log_pi = prev_pi = 0.0
    prev_lb = 0.0
    for n in range(1, N + 2):
        a, b = stream.pair(n)
        la, lbc = math.log(a), math.log(b)
        if n <= exact_until:
            state = advance(state, a, b)
            lb = math.log(state.B_cur)
            if n == seed_at:
                shadow = (lb, math.log(state.B_prev) - lb)
            elif shadow is not None:
                shadow = _log_step(*shadow, la, lbc)
                err = abs(shadow[0] - lb) / lb
                overlap_error = err if overlap_error is None else max(overlap_error, err)
        else:
            shadow = _log_step(*shadow, la, lbc)
            lb = shadow[0]
        if n >= 2 and prev_lb > 0:
            samples.append((n - 1, prev_pi / prev_lb, lb / prev_lb))
        if n == N + 1:
            return NuTrace(samples, prev_lb, prev_pi, exact_until, window, overlap_error, stream.label)
        log_pi += la
        prev_lb, prev_pi = lb, log_pi
    raise AssertionError("unreachable")
