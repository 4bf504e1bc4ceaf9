"""Command-line interface: ``gcfx {eval,bound,nu,construct,transform,verify,list}``.

Exit codes: 0 success, 1 usage error, 2 theorem condition violated (the
report is still printed), 3 non-convergence detected.
"""
from __future__ import annotations

import argparse
import ast
import json
import operator
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds, catalog, constructions, transforms, verify
from .catalog import FamilySpec
from .cfcore import DEFAULT_BITLEN_CAP, DEFAULT_MAX_TERMS, CoefficientStream, evaluate
from .errors import (ConditionViolatedError, GCFError, NeedsMorePrecisionError, NonConvergenceError)

EXIT_OK, EXIT_USAGE, EXIT_CONDITION, EXIT_NONCONVERGENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- inline coefficient expressions ------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: lambda x, y: Fraction(x) / y, ast.FloorDiv: operator.floordiv,
           ast.Mod: operator.mod, ast.Pow: operator.pow}


def compile_expression(text: str):
    """Turn an arithmetic expression in ``n`` into a function of ``n``.

    Only integer literals, ``n``, ``+ - * / // % **`` and parentheses are
    accepted; ``/`` is exact rational division.
    """
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad expression {text!r}: {exc.msg}") from None

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            check(node.operand)
        elif isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            pass
        elif isinstance(node, ast.Name) and node.id == "n":
            pass
        else:
            raise UsageError(f"unsupported syntax in {text!r}")

    check(tree)

    def run(node, n):
        if isinstance(node, ast.Expression):
            return run(node.body, n)
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](run(node.left, n), run(node.right, n))
        if isinstance(node, ast.UnaryOp):
            v = run(node.operand, n)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Constant):
            return node.value
        return n

    def fn(n):
        v = run(tree, n)
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    return fn


def _parse_params(items: Optional[Sequence[str]]) -> dict:
    params = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def _stream_from_args(args, integral: bool = True):
    """Return ``(family_or_None, stream)`` from --family/--param or --a/--b."""
    if args.family:
        fam = catalog.family_stream(FamilySpec(args.family, _parse_params(args.param)))
        return fam, fam.stream
    if args.a is None or args.b is None:
        raise UsageError("give either --family or both --a and --b")
    fa, fb = compile_expression(args.a), compile_expression(args.b)
    b0 = Fraction(args.b0)
    stream = CoefficientStream(lambda n: (fa(n), fb(n)), b0=b0 if not integral else int(b0),
                               label=f"K ({args.a})/({args.b})", integral=integral)
    return None, stream


def _add_stream_args(p):
    p.add_argument("--family", help="named family, see `gcfx list`")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="family parameter (repeatable)")
    p.add_argument("--a", help="partial numerator as an expression in n")
    p.add_argument("--b", help="partial denominator as an expression in n")
    p.add_argument("--b0", default="0", help="integer part (default 0)")


def build_parser() -> argparse.ArgumentParser:
    # shared flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--bitlen-cap", type=int, default=argparse.SUPPRESS)
    parser = _Parser(prog="gcfx", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    p = sub.add_parser("eval", help="enclose the value of a continued fraction")
    _add_stream_args(p)
    p.add_argument("--precision", default="1e-30", help="target enclosure width")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)

    p = sub.add_parser("bound", help="irrationality exponent upper bound")
    p.add_argument("--family")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--route", choices=("growth", "density"))
    p.add_argument("--class", dest="growth_class", choices=("bounded", "polynomial", "exponential"))
    for name in ("a1", "a2", "b1", "b2", "alpha", "l", "beta1", "k1", "beta2", "k2", "r", "s1", "s2"):
        p.add_argument(f"--{name}")

    p = sub.add_parser("nu", help="empirical log Pi_n / log B_n estimate")
    _add_stream_args(p)
    p.add_argument("--terms", type=int, default=10_000)
    p.add_argument("--exact-until", type=int, default=500)
    p.add_argument("--window", type=float, default=0.2)

    p = sub.add_parser("construct", help="{1,2} continued fraction with a prescribed exponent")
    p.add_argument("--exponent", required=True, help="1, a rational >= 2, or inf")
    p.add_argument("--blocks", type=int, default=4)
    p.add_argument("--audit", action="store_true")

    p = sub.add_parser("transform", help="integerize a rational stream or transport a measure")
    _add_stream_args(p)
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--transport", choices=("linear", "reciprocal"))
    p.add_argument("--omega", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--H", type=float)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--tau", type=float, help="|tau| for the reciprocal transport")

    p = sub.add_parser("verify", help="run invariant checks")
    p.add_argument("suite", choices=verify.SUITES + ("all",))

    sub.add_parser("list", help="list the family registry")
    return parser


# -- commands -----------------------------------------------------------------

def _cmd_eval(args):
    fam, stream = _stream_from_args(args)
    target = Fraction(args.precision)
    try:
        if fam is not None and fam.framing is not None:
            enc = fam.evaluate(target, args.max_terms)
        else:
            enc = evaluate(stream, target, args.max_terms, args.bitlen_cap)
    except NonConvergenceError as exc:
        report = {"error": "non-convergence", "message": str(exc),
                  "last_enclosure": exc.enclosure.to_json() if exc.enclosure else None}
        return EXIT_NONCONVERGENT, report
    report = {"label": stream.label, "value": enc.decimal(), "n_used": enc.n_used,
              "enclosure": enc.to_json()}
    if fam is not None and fam.framing is not None:
        report["framing"] = fam.framing.to_json()
    return EXIT_OK, report


def _cmd_bound(args):
    if args.family:
        report = catalog.family_bound(FamilySpec(args.family, _parse_params(args.param)), args.route)
    elif args.growth_class:
        report = bounds.growth_bound(_growth_from_args(args))
    else:
        raise UsageError("give --family or --class")
    return (EXIT_OK if report.condition_ok else EXIT_CONDITION), report.to_json()


def _growth_from_args(args):
    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError("missing " + ", ".join("--" + m for m in missing))
        return [bounds.as_real(getattr(args, n)) for n in names]

    if args.growth_class == "bounded":
        return bounds.BoundedGrowth(*(int(v) for v in need("a1", "a2", "b1", "b2")))
    if args.growth_class == "polynomial":
        return bounds.PolynomialGrowth(*need("alpha", "l", "beta1", "k1", "beta2", "k2"))
    return bounds.ExponentialGrowth(*need("r", "alpha", "l", "s1", "beta1", "k1", "s2", "beta2", "k2"))


def _cmd_nu(args):
    _, stream = _stream_from_args(args)
    trace = bounds.nu_estimate(stream, args.terms, args.exact_until, args.window)
    report = trace.summary()
    report["bound"] = trace.bound().to_json()
    return EXIT_OK, report


def _cmd_construct(args):
    plan = constructions.prescribed_stream(args.exponent, args.blocks, args.bitlen_cap)
    report = {"plan": plan.to_json()}
    if plan.s != 1:
        enc = plan.simple_enclosure()
        report["value"] = enc.decimal()
        report["dual_agree"] = enc.intersects(plan.gcf_enclosure())
    if args.audit and plan.s != 1:
        audits = []
        for n in range(1, plan.depth - 1, 4):
            try:
                audits.append(constructions.approximation_audit(plan, n).to_json())
            except NeedsMorePrecisionError as exc:
                audits.append({"n": n, "error": str(exc)})
        report["audit"] = audits
        report["c_bounds"] = plan.c_bound_checks()
    return EXIT_OK, report


def _cmd_transform(args):
    if args.transport:
        if args.omega is None or args.c is None or args.H is None:
            raise UsageError("--transport needs --omega, --c and --H")
        m = transforms.IrrationalityMeasure(args.omega, args.c, args.H)
        if args.transport == "linear":
            out = transforms.transport_linear(m, args.q, args.t, args.r)
        else:
            if args.tau is None:
                raise UsageError("--transport reciprocal needs --tau")
            out = transforms.transport_reciprocal(m, args.tau)
        return EXIT_OK, {"omega": out.omega, "c": out.c, "H": out.H}
    fam, stream = _stream_from_args(args, integral=False)
    source = fam.rational if fam is not None and fam.rational is not None else stream
    integer, scaling = transforms.integerize(source)
    rows = []
    for n in range(1, args.terms + 1):
        a, b = integer.pair(n)
        rows.append({"n": n, "a": str(a), "b": str(b), "e": str(scaling(n))})
    return EXIT_OK, {"label": integer.label, "coefficients": rows}


def _cmd_verify(args):
    results = verify.run_suite(args.suite)
    ok = all(r.ok for r in results)
    report = {"suite": args.suite, "ok": ok, "checks": [r.to_json() for r in results]}
    return (EXIT_OK if ok else EXIT_USAGE), report


def _cmd_list(args):
    return EXIT_OK, {"families": catalog.list_families()}


COMMANDS = {"eval": _cmd_eval, "bound": _cmd_bound, "nu": _cmd_nu, "construct": _cmd_construct,
            "transform": _cmd_transform, "verify": _cmd_verify, "list": _cmd_list}


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(report, stream, indent=2)
        stream.write("\n")
        return
    if "checks" in report:
        for check in report["checks"]:
            mark = "PASS" if check["ok"] else "FAIL"
            stream.write(f"{mark} {check['suite']}: {check['name']} ({check['seconds']:.3f}s) {check['detail']}".rstrip() + "\n")
        stream.write(f"{'ok' if report['ok'] else 'FAILED'}\n")
        return
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        stream.write(f"{key}: {value}\n")


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    sys.set_int_max_str_digits(0)  # reports carry big integers as decimal strings
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        # actions are shared with the subparsers, so defaults are filled in here
        args.output = getattr(args, "output", "text")
        args.bitlen_cap = getattr(args, "bitlen_cap", DEFAULT_BITLEN_CAP)
        if not args.command:
            raise UsageError("missing command")
        code, report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gcfx: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionViolatedError as exc:
        report = exc.report.to_json() if exc.report else {"error": str(exc)}
        _emit(report, args.output, stdout)
        return EXIT_CONDITION
    except (GCFError, ValueError, ZeroDivisionError) as exc:
        print(f"gcfx: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.output, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
