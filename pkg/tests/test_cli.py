import csv
import io
import json

import pytest

from qgheat.cli import EXIT_TOLERANCE, EXIT_USAGE, run


def invoke(capsys, *argv: str) -> tuple[int, str, str]:
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_o2(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--group", "O", "--N", "2", "--smax", "5")
    assert code == 0
    recs = json.loads(out)
    assert [r["results"]["lambda"] for r in recs] == ["0/1", "-1/2", "-4/3", "-5/2", "-4/1", "-35/6"]
    assert all(r["certified"] for r in recs)
    assert recs[3]["results"]["upper"] == "inf" and recs[3]["results"]["bound_holds"] is True


def test_tau_cubic_o2(capsys):
    code, out, err = invoke(capsys, "tau", "--group", "O", "--N", "2", "--p", "4", "--D", "1", "--method", "cubic")
    assert code == 0 and err == ""
    (rec,) = json.loads(out)
    tau = rec["results"]["tau"]
    assert tau["lo"] <= 2.6513561542 <= tau["hi"]
    assert rec["certified"] is True


def test_floats_have_17_digits(capsys):
    _, out, _ = invoke(capsys, "tau", "--group", "O", "--N", "2", "--p", "4", "--D", "1", "--method", "linear")
    lo = json.loads(out)[0]["results"]["tau"]["lo"]
    assert format(lo, ".17g") in out


def test_check_bounds_s9(capsys):
    code, out, _ = invoke(capsys, "check", "--suite", "bounds", "--group", "S", "--N", "9", "--smax", "200")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 200 and all(r["results"]["holds"] for r in rows)


def test_check_identities(capsys):
    code, out, _ = invoke(capsys, "check", "--suite", "identities")
    assert code == 0
    assert len(json.loads(out)) == 6


def test_usage_errors(capsys):
    assert invoke(capsys, "nonsense")[0] == EXIT_USAGE
    assert invoke(capsys, "spectrum", "--bogus")[0] == EXIT_USAGE
    code, _, err = invoke(capsys, "spectrum", "--group", "O")
    assert code == EXIT_USAGE and "usage" in err
    assert invoke(capsys, "spectrum", "--group", "S", "--N", "3")[0] == EXIT_USAGE
    assert invoke(capsys, "tau", "--group", "O", "--N", "2", "--p", "4", "--C", "1")[0] == EXIT_USAGE
    assert invoke(capsys, "tau", "--group", "O", "--N", "2", "--p", "4", "--D", "0.5")[0] == EXIT_USAGE
    assert invoke(capsys, "tau", "--group", "O", "--N", "2", "--p", "1.5", "--D", "1")[0] == EXIT_USAGE
    assert invoke(capsys, "envelope", "--group", "O", "--N", "3", "--which", "g", "--D", "1")[0] == EXIT_USAGE
    assert invoke(capsys, "sweep", "--group", "O", "--N", "2", "--quantity", "gap_sum", "--p", "4")[0] == EXIT_USAGE


def test_linear_below_four_needs_flag(capsys):
    base = ["tau", "--group", "O", "--N", "2", "--p", "3", "--D", "1", "--method", "linear"]
    assert invoke(capsys, *base)[0] == EXIT_USAGE
    code, out, _ = invoke(capsys, *base, "--unverified")
    assert code == 0 and json.loads(out)[0]["certified"] is False


def test_tolerance_failure(capsys):
    code, _, err = invoke(capsys, "tau", "--group", "O", "--N", "2", "--p", "4", "--D", "1", "--method", "series", "--tol", "1e-16")
    assert code == EXIT_TOLERANCE and "tolerance" in err


def test_default_constant_warning(capsys):
    code, out, err = invoke(capsys, "tau", "--group", "S", "--N", "4", "--p", "4", "--method", "cubic")
    assert code == 0 and "WARNING" in err
    assert json.loads(out)[0]["certified"] is False
    code, out, err = invoke(capsys, "tau", "--group", "O", "--N", "5", "--p", "4", "--method", "cubic")
    assert err == "" and json.loads(out)[0]["certified"] is True


def test_envelope_csv_columns(capsys):
    code, out, _ = invoke(
        capsys, "envelope", "--group", "O", "--N", "2", "--D", "1", "--which", "g",
        "--tmin", "0.01", "--tmax", "1", "--npoints", "4", "--format", "csv",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["t", "value_lo", "value_hi"]
    assert len(rows) == 4
    assert all(float(r["value_lo"]) <= float(r["value_hi"]) for r in rows)


def test_determinism(capsys):
    argv = ["check", "--suite", "gap", "--group", "O", "--N", "3", "--samples", "50", "--seed", "5"]
    assert invoke(capsys, *argv)[1] == invoke(capsys, *argv)[1]


def test_threads_preserve_order(capsys, monkeypatch):
    argv = ["sweep", "--group", "O", "--N", "2", "3", "5", "--p", "3", "4", "6", "--D", "1", "--quantity", "tau_cubic"]
    serial = invoke(capsys, *argv)[1]
    monkeypatch.setenv("QGHEAT_THREADS", "4")
    parallel = invoke(capsys, *argv)[1]
    assert serial == parallel
    recs = json.loads(parallel)
    assert [(r["results"]["N"], r["results"]["p"]) for r in recs] == [
        (n, p) for n in (2, 3, 5) for p in (3.0, 4.0, 6.0)
    ]


@pytest.mark.parametrize(
    "argv",
    [
        ["rp", "--family", "S", "--p", "3", "4", "6"],
        ["rp", "--crossing"],
        ["dn", "--N", "2.5", "10"],
        ["logsob", "--group", "O", "--N", "2", "--D", "1"],
        ["qpath", "--t0", "2.5"],
        ["dim", "--group", "O", "--N", "2", "--D", "1", "--envelope", "g"],
        ["envelope", "--group", "S", "--N", "5", "--C", "1.5", "--npoints", "3"],
        ["sweep", "--group", "S", "--N", "4", "5", "--t", "0.5", "--C", "1", "--quantity", "envelope_f"],
        ["sweep", "--group", "O", "--N", "2", "--p", "4", "--t", "3", "--D", "1", "--quantity", "gap_sum"],
    ],
)
def test_subcommands_smoke(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == 0
    assert json.loads(out)


def test_qpath_and_dim_values(capsys):
    _, out, _ = invoke(capsys, "qpath", "--t0", "2", "--npoints", "3")
    assert [r["results"]["q"] for r in json.loads(out)] == [2.0, 8 / 3, 4.0]
    _, out, _ = invoke(capsys, "dim", "--group", "O", "--N", "2", "--D", "1", "--envelope", "g")
    assert abs(json.loads(out)[0]["results"]["dimension"] - 3) <= 0.15


def test_check_violation_exit_code(capsys, monkeypatch):
    from qgheat import checks

    monkeypatch.setattr(checks, "identities_suite", lambda: [{"check": "x", "holds": False}])
    assert invoke(capsys, "check", "--suite", "identities")[0] == 1
