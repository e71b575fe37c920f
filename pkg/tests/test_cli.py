import json

from sl2cohom.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dim_command_reports_each_method(tmp_path, capsys):
    code, out, _ = run_cli([
        "dim", "--n", "2", "--lambdas", "0,0", "--mu", "1",
        "--methods", "system,closed,oracle"], capsys)
    assert code == 0
    results = json.loads(out)
    by_method = {r["method"]: r for r in results}
    assert by_method["system"]["dim"] == 4
    assert by_method["closed"]["dim"] == 4
    # the brute-force complex disagrees with the formula methods here; the
    # tool reports both rather than harmonising them
    assert by_method["oracle"]["dim"] == 1
    assert by_method["oracle"]["stable"] is True


def test_dim_command_vanishing_shift(capsys):
    code, out, _ = run_cli(["dim", "--n", "1", "--lambdas", "1/3", "--mu", "0"],
                           capsys)
    assert code == 0
    results = json.loads(out)
    assert all(r["dim"] == 0 for r in results)


def test_dim_command_nonresonant_three_arguments(capsys):
    code, out, _ = run_cli([
        "dim", "--n", "3", "--lambdas", "1,1,1", "--mu", "5",
        "--methods", "system"], capsys)
    assert code == 0
    assert json.loads(out)[0]["dim"] == 3


def test_malformed_rational_is_usage_error(capsys):
    code, _, err = run_cli(["dim", "--n", "1", "--lambdas", "0.5x", "--mu", "0"],
                           capsys)
    assert code == 2
    assert "malformed rational" in err


def test_missing_subcommand_is_usage_error(capsys):
    assert run_cli([], capsys)[0] == 2


def test_mismatched_arity_is_usage_error(capsys):
    code, _, err = run_cli(["dim", "--n", "3", "--lambdas", "0,0", "--mu", "1"],
                           capsys)
    assert code == 2


def test_table_csv_output_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for path in (out1, out2):
        code, _, _ = run_cli([
            "table", "--n", "2", "--k-max", "2", "--oracle", "off",
            "--format", "csv", "--out", str(path)], capsys)
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().strip().splitlines()
    assert lines[0].startswith("n,k,t,sigma")
    assert len(lines) == 1 + (0 + 1 + 4) + 3


def test_table_unwritable_path_is_io_error(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "out.csv"
    code, _, err = run_cli([
        "table", "--n", "2", "--k-max", "1", "--oracle", "off",
        "--out", str(target)], capsys)
    assert code == 3
    assert "io error" in err


def test_basis_command(tmp_path, capsys):
    code, out, _ = run_cli([
        "basis", "--n", "2", "--lambdas", "0,0", "--mu", "1"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data) == 4
    for item in data:
        assert item["n"] == 2
        assert set(item) >= {"A", "B", "C", "lambdas", "mu"}


def test_basis_command_empty_for_nonnatural_shift(capsys):
    code, out, _ = run_cli(["basis", "--n", "1", "--lambdas", "1/2", "--mu", "0"],
                           capsys)
    assert code == 0
    assert "H^2 = 0, empty basis" in out
    assert json.loads(out.splitlines()[-1]) == []


def test_verify_exit_codes(tmp_path, capsys):
    # without oracle rows the gate has nothing to compare: exit 0
    code, out, _ = run_cli(["verify", "--n", "2", "--k-max", "1",
                            "--oracle", "off"], capsys)
    assert code == 0
    assert "verdict: PASS" in out
    # with the oracle on, formula-vs-complex disagreement trips the gate
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(["verify", "--n", "2", "--k-max", "1",
                            "--oracle", "on", "--out", str(report_path)], capsys)
    assert code == 1
    assert "verdict: FAIL" in out
    report = json.loads(report_path.read_text())
    assert report["passed"] is False
    assert report["gate_failures"]
    # discrepancies carry both values
    row = report["gate_failures"][0]
    assert "dim_system" in row and "dim_oracle" in row


def test_verify_negative_control_perturbation(capsys):
    code, _, _ = run_cli(["verify", "--n", "2", "--k-max", "2",
                          "--oracle", "auto", "--self-test-perturb"], capsys)
    assert code != 0
