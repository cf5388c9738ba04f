"""Command-line interface: outputs, exit codes, determinism."""

import json

import pytest
from click.testing import CliRunner

from exopoly.cli import cli


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def test_construct_worked_example(runner):
    res = run(runner, "construct", "--case", "l2", "--ell", "1", "--alpha", "-2", "--n", "0")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["xi_coefficients"] == ["-1", "-1"]
    level = data["levels"][0]
    assert level["coefficients"] == ["2", "1"]
    assert level["energy"] == "4"


def test_construct_validation_error(runner):
    res = run(runner, "construct", "--case", "j1", "--ell", "1",
              "--alpha", "0", "--beta", "-1/2")
    assert res.exit_code == 1
    assert "parameter constraint violated" in res.output
    assert "beta < -ell" in res.output


def test_construct_bad_rational(runner):
    res = run(runner, "construct", "--case", "l2", "--ell", "1", "--alpha", "oops")
    assert res.exit_code == 1
    assert "invalid rational" in res.output


def test_construct_extj_degree_and_level_energy(runner):
    res = run(runner, "construct", "--case", "extj", "--ell", "2",
              "--alpha", "-5/2", "--beta", "-5/2", "--n", "0")
    assert res.exit_code == 0
    data = json.loads(res.output)
    level = data["levels"][0]
    # family member 0 sits at spectral level 1 with degree ell + 0 + 1
    assert level["level"] == 1 and level["family_index"] == 0
    assert level["degree"] == 3
    assert level["energy"] == "36"


def test_construct_extj_level_table_starts_at_ground(runner):
    res = run(runner, "construct", "--case", "extj", "--ell", "2",
              "--alpha", "-5/2", "--beta", "-5/2", "--nmax", "2")
    data = json.loads(res.output)
    levels = data["levels"]
    assert levels[0] == {
        "level": 0, "family_index": None, "degree": 0,
        "energy": "0", "coefficients": ["1"],
    }
    assert [lv["level"] for lv in levels] == [0, 1, 2]


def test_construct_decimal_alpha_is_exact(runner):
    res = run(runner, "construct", "--case", "l2", "--ell", "1", "--alpha", "-2.5")
    data = json.loads(res.output)
    assert data["alpha"] == "-5/2"


def test_construct_csv(runner):
    res = run(runner, "construct", "--case", "l2", "--ell", "1", "--alpha", "-2",
              "--n", "0", "--format", "csv")
    lines = res.output.strip().splitlines()
    assert lines[0].startswith("case,ell,alpha,")
    assert len(lines) == 3  # header + 2 coefficients


def test_determinism_byte_identical(runner):
    args = ("construct", "--case", "extj", "--ell", "2",
            "--alpha", "-5/2", "--beta", "-5/2", "--nmax", "3")
    out1 = run(runner, *args).output
    out2 = run(runner, *args).output
    assert out1 == out2
    args2 = ("zeros", "--sweep", "12", "--seed", "3")
    assert run(runner, *args2).output == run(runner, *args2).output
    args3 = ("verify", "--suite", "degree-node")
    assert run(runner, *args3).output == run(runner, *args3).output


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_single_suite_passes(runner):
    res = run(runner, "verify", "--suite", "identities")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data[0]["suite"] == "identities" and data[0]["passed"] is True


def test_verify_injected_defect_is_caught(runner):
    res = run(runner, "verify", "--suite", "ode-residual",
              "--inject", "p-l2-sign-flip")
    assert res.exit_code == 2
    data = json.loads(res.output)
    assert data[0]["passed"] is False and data[0]["failures"] > 0


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def test_ortho_command(runner):
    res = run(runner, "ortho", "--case", "l2", "--ell", "1", "--alpha", "-2",
              "--nmax", "4")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["size"] == 4
    assert float(data["max_offdiag"]) < 1e-10
    assert data["gram"][0][0] == 1.0


def test_spectrum_command(runner):
    res = run(runner, "spectrum", "--case", "l2", "--ell", "1", "--alpha", "-2",
              "-k", "3", "--points", "1200")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert [lv["analytic"] for lv in data["levels"]] == ["4", "8", "12"]
    assert data["max_error"] < 1e-3


def test_zeros_single_and_sweep(runner):
    res = run(runner, "zeros", "--kind", "laguerre", "--ell", "2", "--alpha", "-3")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["rows"][0]["predicted"] == 0 and data["rows"][0]["match"] is True

    res = run(runner, "zeros", "--sweep", "25", "--seed", "11")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert len(data["rows"]) == 25 and data["mismatches"] == 0


def test_zeros_requires_arguments(runner):
    res = run(runner, "zeros")
    assert res.exit_code == 1


def test_plotdata(runner):
    res = run(runner, "plotdata", "--case", "l2", "--ell", "1", "--alpha", "-2",
              "--points", "500", "--nmax", "2")
    lines = res.output.strip().splitlines()
    assert lines[0] == "x,V,phi0,phi1,phi2"
    assert len(lines) == 501
    for line in lines[1:]:
        assert all(abs(float(tok)) < 1e12 for tok in line.split(","))
