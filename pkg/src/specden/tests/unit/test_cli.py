import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from specden.cli.main import cli, run
from specden.moments import CoeffTable, MomentTable


def invoke(*args):
    result = CliRunner().invoke(cli, list(args), catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


def error_of(capsys, argv):
    code = run(argv)
    payload = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    return code, payload["code"]


def test_moments_to_file(tmp_path):
    out = tmp_path / "moments.json"
    invoke(
        "moments", "--family", "jacobi", "--beta", "2", "--a", "1", "--b", "2", "--n", "3",
        "--kmax", "8", "--output", str(out),
    )
    table = MomentTable.from_json(out.read_text(encoding="UTF-8"))
    assert table[0] == 3
    assert table.spec.family == "jacobi"
    assert sorted(table.values) == list(range(9))


def test_moments_csv(tmp_path):
    out = tmp_path / "moments.csv"
    invoke(
        "moments", "--family", "gaussian", "--beta", "2", "--n", "3", "--kmax", "2",
        "--format", "csv", "--output", str(out),
    )
    lines = out.read_text(encoding="UTF-8").splitlines()
    assert lines[:3] == ["k,value", "0,3", "1,0"]


def test_coefficient_table(tmp_path):
    out = tmp_path / "coeffs.json"
    invoke(
        "coeffs", "--family", "gaussian", "--beta", "2", "--kmax", "4", "--lmax", "2",
        "--output", str(out),
    )
    table = CoeffTable.from_json(out.read_text(encoding="UTF-8"))
    assert table.get(2, 0) == Fraction(1, 2)


def test_derive_ode_catalog(tmp_path):
    out = tmp_path / "ode.json"
    invoke("derive-ode", "--family", "gaussian", "--beta", "2", "--n", "3", "--output", str(out))
    payload = json.loads(out.read_text(encoding="UTF-8"))
    assert payload["source"] == "catalog"
    assert payload["operator"] == "[x] + [-x^2 + 6]*d + [1/4]*d^3"
    assert payload["order"] == 3


def test_derive_hard_edge(tmp_path):
    out = tmp_path / "hard.json"
    invoke("derive-ode", "--edge", "hard", "--beta", "2", "--a", "1/2", "--output", str(out))
    assert json.loads(out.read_text(encoding="UTF-8"))["catalog_agrees"] is True


def test_verify_fixtures(tmp_path):
    out = tmp_path / "verify.json"
    code = run(
        [
            "verify", "fixtures", "--suite", "jacobi-beta2,laguerre-beta2", "--trials", "1",
            "--seed", "5", "--kmin", "0", "--kmax", "10", "--output", str(out),
        ]
    )
    assert code == 0
    payload = json.loads(out.read_text(encoding="UTF-8"))
    assert payload["violations"] == 0
    assert payload["checked"] > 0


def test_verify_table(tmp_path):
    table = tmp_path / "moments.json"
    invoke(
        "moments", "--family", "laguerre", "--beta", "2", "--a", "1/3", "--n", "3",
        "--kmax", "10", "--output", str(table),
    )
    argv = ["verify", "fixtures", "--suite", "laguerre-beta2", "--table", str(table)]
    assert run(argv + ["--output", str(tmp_path / "v.json")]) == 0


def test_verify_oracle(tmp_path):
    code = run(
        [
            "verify", "oracle", "--family", "gaussian", "--beta", "2", "--n", "2", "--kmax", "6",
            "--output", str(tmp_path / "oracle.json"),
        ]
    )
    assert code == 0


def test_edge_soft_csv(tmp_path):
    out = tmp_path / "soft.csv"
    invoke("edge", "soft", "--beta", "2", "--output", str(out))
    lines = out.read_text(encoding="UTF-8").splitlines()
    assert lines[0] == "x,rho,residual"
    x, rho, _ = (float(v) for v in lines[401].split(","))
    assert x == pytest.approx(0, abs=1e-12)
    assert rho == pytest.approx(0.0669875, abs=1e-6)


def test_invalid_beta(capsys):
    assert error_of(capsys, ["moments", "--family", "gaussian", "--beta", "abc", "--n", "2"]) == (
        2,
        "invalid_spec",
    )


def test_unsupported_beta(capsys):
    assert error_of(capsys, ["moments", "--family", "gaussian", "--beta", "3", "--n", "2"]) == (
        2,
        "unsupported_beta",
    )


def test_missing_family(capsys):
    assert error_of(capsys, ["moments", "--beta", "2"]) == (2, "invalid_spec")


def test_no_hard_edge_exponent(capsys):
    assert error_of(capsys, ["edge", "hard", "--beta", "2", "--a", "-1"]) == (2, "invalid_spec")


def test_output_is_deterministic(tmp_path):
    texts = []
    for name in ("one.json", "two.json"):
        out = tmp_path / name
        invoke(
            "resolvent", "--family", "laguerre", "--beta", "1", "--alpha1", "1", "--lmax", "2",
            "--order", "8", "--output", str(out),
        )
        texts.append(out.read_text(encoding="UTF-8"))
    assert texts[0] == texts[1]
    assert json.loads(texts[0])


def test_rational_option():
    result = invoke("derive-ode", "--edge", "soft", "--beta", "2/3")
    payload = json.loads(result.stdout)
    assert Fraction(payload["beta"]) == Fraction(2, 3)


def test_system_needs_integer_beta(capsys):
    argv = ["derive-ode", "--family", "gaussian", "--beta", "2/3", "--n", "2", "--system"]
    assert error_of(capsys, argv) == (2, "unsupported_beta")
