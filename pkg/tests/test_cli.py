import io
import json
from fractions import Fraction

import pytest

from gcfx.cli import compile_expression, main, UsageError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--output", "json", *argv)
    report = json.loads(text)
    assert json.loads(json.dumps(report)) == report
    return code, report


def test_eval_e():
    code, report = run_json("eval", "--family", "exp_point", "--param", "x=1", "--param", "y=1",
                            "--precision", "1e-40")
    assert code == 0
    assert report["value"].startswith("2.718281828459045235360287471352662497757")
    assert report["n_used"] > 0


def test_eval_inline():
    code, report = run_json("eval", "--a", "1", "--b", "1", "--precision", "1e-10")
    assert code == 0 and report["value"].startswith("0.618033988")


def test_eval_nonconvergent():
    code, report = run_json("eval", "--a", "4**n", "--b", "1", "--max-terms", "100")
    assert code == 3 and report["last_enclosure"] is not None


def test_bound_bounded():
    code, report = run_json("bound", "--class", "bounded", "--a1", "1", "--a2", "2", "--b1", "2", "--b2", "2")
    assert code == 0 and round(report["mu_upper"], 3) == 5.683


def test_bound_condition_violated_still_reports():
    code, report = run_json("bound", "--class", "bounded", "--a1", "1", "--a2", "2", "--b1", "1", "--b2", "1")
    assert code == 2 and report["conditions"][0]["ok"] is False


def test_bound_family_routes():
    code, report = run_json("bound", "--family", "fibonacci_cf")
    assert code == 0 and abs(report["mu_upper"] - 2.3125) < 1e-3
    code, report = run_json("bound", "--family", "rational_19_7")
    assert code == 2


def test_construct_with_audit():
    code, report = run_json("construct", "--exponent", "3", "--blocks", "6", "--audit")
    assert code == 0 and report["dual_agree"]
    assert all(a["upper_holds"] and a["lower_holds"] for a in report["audit"][:3])


def test_nu():
    code, report = run_json("nu", "--family", "thue_morse_cf", "--terms", "2000")
    assert code == 0 and 0.25 < report["nu"] < 0.35


def test_transform():
    code, report = run_json("transform", "--a", "1/2**n", "--b", "1", "--terms", "4")
    assert code == 0 and [r["a"] for r in report["coefficients"]] == ["1", "1", "1", "1"]
    code, report = run_json("transform", "--transport", "linear", "--omega", "2", "--c", "1", "--H", "10",
                            "--q", "2", "--t", "3")
    assert code == 0 and report["H"] == 5


def test_verify_and_list():
    assert run("verify", "identities")[0] == 0
    code, text = run("verify", "densities")
    assert code == 0 and text.count("PASS") == 3
    code, report = run_json("list")
    assert code == 0 and len(report["families"]) == 11


@pytest.mark.parametrize("argv", [[], ["verify", "nope"], ["eval"], ["eval", "--a", "n"],
                                  ["eval", "--a", "__import__('os')", "--b", "1"],
                                  ["bound", "--class", "bounded", "--a1", "1"],
                                  ["eval", "--family", "nope"], ["construct", "--exponent", "3/2"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 1


def test_shared_flags_before_or_after():
    a = run("--output", "json", "list")
    b = run("list", "--output", "json")
    assert a == b


def test_expressions():
    f = compile_expression("6*n**7 - 6*n**6 + 2*n**5 + 3*n - 5")
    assert f(2) == 6 * 128 - 6 * 64 + 64 + 1
    assert compile_expression("n/2")(3) == Fraction(3, 2)
    assert compile_expression("n/2")(4) == 2 and isinstance(compile_expression("n/2")(4), int)
    with pytest.raises(UsageError):
        compile_expression("n.real")
