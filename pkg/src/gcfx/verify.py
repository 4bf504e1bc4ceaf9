"""Batch invariant checks behind ``gcfx verify``."""
from __future__ import annotations

import random
import time
from itertools import islice
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog, cfcore, constructions
from .catalog import FamilySpec

SUITES = ("identities", "enclosures", "densities", "families", "constructions")


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    seconds: float
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "ok": self.ok,
                "seconds": round(self.seconds, 4), "detail": self.detail}


def _determinants(streams: int = 20, depth: int = 300, seed: int = 1) -> bool:
    rng = random.Random(seed)
    for _ in range(streams):
        coeffs = [(rng.randint(1, 10**6), rng.randint(1, 10**6)) for _ in range(depth)]
        stream = cfcore.CoefficientStream.from_lists([a for a, _ in coeffs], [b for _, b in coeffs])
        for state in cfcore.states(stream):
            if not cfcore.determinant_holds(state):
                return False
            if state.n == depth:
                break
    return True


def _lasku() -> bool:
    for c in range(1, 101):
        for x in (Fraction(0), Fraction(1), Fraction(7, 3)):
            lhs, rhs = constructions.verify_lasku(c, x)
            if lhs != rhs or rhs != constructions.lasku_simple_side(c, x):
                return False
    return True


def _blocks() -> bool:
    return all(constructions.expand_block(k).matches_simple() for k in range(9))


def _nesting() -> bool:
    stream = catalog.family_stream(FamilySpec("thue_morse_cf")).stream
    seq = list(islice(cfcore.states(stream), 202))[1:]
    encs = [cfcore.Enclosure(min(x.value, y.value), max(x.value, y.value), x.n) for x, y in zip(seq, seq[1:])]
    return all(inner.issubset(outer) for outer, inner in zip(encs, encs[1:]))


def _sandwich() -> bool:
    stream = cfcore.CoefficientStream.constant(2, 3)
    tau = cfcore.evaluate(stream, Fraction(1, 10**60)).midpoint
    for n in range(0, 30):
        lo, hi = cfcore.residual_bounds(stream, n)
        state = cfcore.state_at(stream, n)
        r = abs(state.B_cur * tau - state.A_cur)
        if not lo < r < hi:
            return False
    return True


def _e_value() -> bool:
    fam = catalog.family_stream(FamilySpec("exp_point", {"x": 1, "y": 1}))
    enc = fam.evaluate(Fraction(1, 10**40))
    # Taylor partial sums with a tail bound
    s, term = Fraction(0), Fraction(1)
    for k in range(60):
        s += term
        term /= k + 1
    return enc.lo <= s + 2 * term and s <= enc.hi and enc.width <= Fraction(1, 10**40)


def _thue_morse_density() -> bool:
    return all(catalog.density(catalog.THUE_MORSE, 2**k) == Fraction(1, 2) for k in range(1, 21))


def _fibonacci_density() -> bool:
    return abs(float(catalog.density(catalog.FIBONACCI, 10**5)) - 1 / catalog.PHI**2) < 1e-4


def _fibonacci_counts() -> bool:
    fib = [0, 1, 1]
    while len(fib) < 31:
        fib.append(fib[-1] + fib[-2])
    return all(catalog.FIBONACCI.prefix(fib[k]).count(1) == fib[k - 2] for k in range(3, 31))


def _rational_19_7() -> bool:
    stream = catalog.family_stream(FamilySpec("rational_19_7")).stream
    return abs(cfcore.convergent(stream, 50).value - Fraction(19, 7)) < Fraction(1, 10**12)


def _integerized_families() -> bool:
    specs = [FamilySpec("rogers_ramanujan", dict(a=1, b=2, r=1, s=1)),
             FamilySpec("m_of_q", dict(a=1, b=3)),
             FamilySpec("tasoev1", dict(u="1/2", v="3", x=5, y=2)),
             FamilySpec("tasoev2", dict(u="1", v="2/3", x=3, y=1, s=5, t=2)),
             FamilySpec("bundschuh", dict(m=2, s=2, t="1,3", u="2,1", v="1,1", w="1,3"))]
    for spec in specs:
        fam = catalog.family_stream(spec)
        exact = cfcore.convergents(fam.rational, 100)
        ints = cfcore.convergents(fam.stream, 100)
        if [c.value for c in exact] != [c.value for c in ints]:
            return False
    return True


def _family_bounds() -> bool:
    tm = catalog.family_bound(FamilySpec("thue_morse_cf"), "bounded").mu_upper
    rr = catalog.family_bound(FamilySpec("rogers_ramanujan", dict(a=1, b=2, r=1, s=1))).mu_upper
    ft = catalog.family_bound(FamilySpec("ft_mixed_cf"), "bounded")
    return abs(tm - 5.682) < 1e-3 and rr == 2 and not ft.condition_ok


def _dual_representation() -> bool:
    for s, blocks in (("2", 20), ("5/2", 6), ("3", 6), ("4", 4)):
        plan = constructions.prescribed_stream(s, blocks)
        simple, gcf = plan.simple_enclosure(), plan.gcf_enclosure()
        if not simple.intersects(gcf):
            return False
        last_simple = cfcore.convergent(plan.simple_stream(), plan.depth).value
        last_gcf = cfcore.convergent(plan.gcf_stream(), len(plan.word)).value
        if last_simple != last_gcf:
            return False
    return True


def _audits() -> bool:
    plan = constructions.prescribed_stream(3, 6)
    records = [constructions.approximation_audit(plan, n) for n in (5, 9)]
    inf_plan = constructions.prescribed_stream("inf", 3)
    return all(r.upper_holds for r in records) and constructions.approximation_audit(inf_plan, 5).upper_holds


def _c_bounds() -> bool:
    for s in ("5/2", "3", "4"):
        checks = constructions.prescribed_stream(s, 6).c_bound_checks()
        if not all(c["lower_ok"] for c in checks) or not all(c["upper_ok"] for c in checks[3:]):
            return False
    return True


CHECKS: dict[str, list[tuple[str, Callable[[], bool]]]] = {
    "identities": [("determinant identity", _determinants),
                   ("nine-level identity, c <= 100", _lasku),
                   ("block identity, k <= 8", _blocks)],
    "enclosures": [("enclosure nesting", _nesting),
                   ("residual sandwich", _sandwich),
                   ("e to 40 digits", _e_value),
                   ("rational example 19/7", _rational_19_7)],
    "densities": [("Thue-Morse density 1/2", _thue_morse_density),
                  ("Fibonacci density 1/phi^2", _fibonacci_density),
                  ("Fibonacci prefix counts", _fibonacci_counts)],
    "families": [("integerized convergents", _integerized_families),
                 ("family bounds", _family_bounds)],
    "constructions": [("dual representation", _dual_representation),
                      ("approximation audits", _audits),
                      ("quotient bounds", _c_bounds)],
}


def run_suite(suite: str) -> list[CheckResult]:
    if suite == "all":
        names = SUITES
    elif suite in CHECKS:
        names = (suite,)
    else:
        raise KeyError(suite)
    results = []
    for name in names:
        for label, check in CHECKS[name]:
            start = time.perf_counter()
            try:
                ok, detail = bool(check()), ""
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, label, ok, time.perf_counter() - start, detail))
    return results
