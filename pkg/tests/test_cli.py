from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest

from waring_eig.cli import main
from waring_eig.forms.parse import format_form, parse_binary, parse_form

SCHEMA = json.loads(resources.files("waring_eig").joinpath("report.schema.json").read_text())


def run_json(capsys, *argv):
    code = main([*argv, "--output", "json"])
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_analyze_family_cubic(capsys):
    code, rep = run_json(capsys, "analyze", "x^3+y^3+(x+y)^3")
    assert code == 0
    res = rep["results"]
    assert res["rank"] == 2
    sup = res["eigen"]["support"]
    one = [e for e in sup if e["point"] == "[1:1]"]
    assert one and one[0]["singular_value"] == {"exact": "5/4"}
    assert rep["certificates"]["intersection"]["gcd(g1,D)"] == "1"


@pytest.mark.parametrize("d", [4, 5, 6])
def test_analyze_family_rank_three(capsys, d):
    code, rep = run_json(capsys, "analyze", f"x^{d}+y^{d}+(x+y)^{d}")
    assert code == 0 and rep["results"]["rank"] == 3
    assert rep["results"]["intersection"]["nonempty"]


def test_analyze_power(capsys):
    code, rep = run_json(capsys, "analyze", "x^4")
    mult = {e["point"]: e["multiplicity"] for e in rep["results"]["eigen"]["support"]}
    assert mult == {"[0:1]": 3, "[1:0]": 1}


def test_analyze_monomial_three_vars(capsys):
    code, rep = run_json(capsys, "analyze", "x0*x1^2*x2^3")
    assert code == 0
    assert rep["results"]["rank"] == 12


def test_analyze_from_file(capsys, tmp_path):
    f = tmp_path / "form.txt"
    f.write_text("x^5+y^5\n")
    code, rep = run_json(capsys, "analyze", "--file", str(f))
    assert code == 0 and rep["results"]["rank"] == 2


def test_perturb(capsys):
    code, rep = run_json(capsys, "perturb", "x^5+y^5", "--direction", "x+y")
    res = rep["results"]
    assert res["base_rank"] == 2 and res["generic_rank"] == 3


def test_locus_and_intersect(capsys):
    code, rep = run_json(capsys, "locus", "x^4*y")
    assert code == 0
    code, rep = run_json(capsys, "intersect", "x^5+y^5+(x+y)^5")
    assert code == 0 and rep["results"]["nonempty"]


def test_we_sample_and_check(capsys):
    code, rep = run_json(capsys, "we-sample", "-n", "1", "-r", "3", "-d", "5", "--seed", "7")
    assert code == 0 and rep["results"]["x0_eigen"]
    code, rep = run_json(capsys, "we-check", "-n", "1", "-r", "3", "-d", "5", "--check", "codim")
    assert code == 0 and all(r["pass"] for r in rep["results"])


def test_deterministic_output(capsys):
    argv = ["we-sample", "-r", "3", "-d", "5", "--seed", "11"]
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_parse_error_exit_code(capsys):
    assert main(["analyze", "x^3+*y"]) == 2
    err = capsys.readouterr().err
    assert "parse error" in err


def test_unsupported_exit_code(capsys):
    assert main(["locus", "x0^3+x1^3+x2^3"]) == 2


def test_text_output(capsys):
    assert main(["analyze", "x^5+y^5"]) == 0
    assert "rank" in capsys.readouterr().out


def test_verify_single_group(capsys):
    code, rep = run_json(capsys, "verify-paper", "--suite", "bw")
    assert code == 0
    assert [r["pass"] for r in rep["results"]] == [True]


def test_verify_text_output(capsys):
    assert main(["verify-paper", "--suite", "bw"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "BW-apolarity" in out and "1/1 criteria passed" in out


@pytest.mark.parametrize("text", ["x^3+y^3+(x+y)^3", "3/2*x0^2*x1 - i*x1^3", "(2*x-y)^4 - x*y^3", "(1+2*i)*x^2*y - (3-i)/5*y^3"])
def test_parse_format_round_trip(text):
    F = parse_binary(text)
    assert parse_binary(format_form(F)) == F


def test_round_trip_three_vars():
    F = parse_form("(x0+x1-x2)^3 + 2*x0*x1*x2")
    assert parse_form(format_form(F), 3) == F
