"""CLI contract: exit codes, determinism, formats."""

import json
import subprocess
import sys

import pytest

from alcalc.cli import run
from alcalc.report import Check, Report, emit_report


def run_cli(args, capsys):
    code = run(args)
    out = capsys.readouterr().out
    return code, out


class TestExitCodes:
    def test_pass_is_zero(self, capsys):
        code, out = run_cli(["alcoves", "special", "--n", "3", "--f", "1"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["passed"] is True
        assert data["checks"][0]["detail"]["count"] == 1

    def test_config_error_is_one(self, capsys):
        assert run(["alcoves", "special", "--p", "10"]) == 1
        assert run(["alcoves", "special", "--n", "1"]) == 1
        assert run(["verify", "weyl", "--trials", "0"]) == 1

    def test_unknown_subcommand_is_one(self, capsys):
        assert run(["verify", "frobnicate"]) == 1


class TestDeterminism:
    def test_same_seed_same_bytes(self, capsys):
        a = run_cli(["verify", "minors", "--n", "4", "--trials", "50", "--seed", "7"], capsys)[1]
        b = run_cli(["verify", "minors", "--n", "4", "--trials", "50", "--seed", "7"], capsys)[1]
        assert a == b

    def test_seed_changes_nothing_breaks(self, capsys):
        code, _ = run_cli(["verify", "minors", "--n", "4", "--trials", "50", "--seed", "8"], capsys)
        assert code == 0

    def test_witness_bytes_stable(self, capsys):
        args = ["witness", "triple", "--n", "3", "--p", "53", "--t", "2", "--count", "3"]
        a = run_cli(args, capsys)[1]
        b = run_cli(args, capsys)[1]
        assert a == b
        data = json.loads(a)
        wit = next(c for c in data["checks"] if c["name"] == "witness_triple_intersection")
        assert wit["passed"]
        assert all(v if not isinstance(v, list) else all(v) for v in wit["detail"]["checks"].values())


class TestFormats:
    def test_csv_rows(self):
        rep = Report(command="x", config={})
        rep.add("a", True, {"k": 1})
        rep.add("b", False, {}, {"bad": 2})
        rep.add("c", True)
        data = emit_report(rep, "csv-summary").decode()
        lines = data.strip().split("\n")
        assert len(lines) == 4  # header + 3 rows
        assert lines[0] == "check,passed,detail"

    def test_empty_checks_valid_json(self):
        rep = Report(command="x", config={"n": 2})
        data = json.loads(emit_report(rep, "json"))
        assert data["checks"] == []
        assert data["schema_version"] == "1"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(Report(command="x", config={}), "yaml")

    def test_failed_check_carries_counterexample(self):
        rep = Report(command="x", config={})
        rep.add("bad", False, {}, {"witness": [1, 2]})
        data = json.loads(emit_report(rep, "json"))
        assert data["checks"][0]["counterexample"] == {"witness": [1, 2]}
        assert rep.exit_code() == 2

    def test_out_file_and_config_precedence(self, tmp_path, capsys):
        cfgfile = tmp_path / "cfg.json"
        cfgfile.write_text(json.dumps({"n": 4, "f": 1}))
        outfile = tmp_path / "r.json"
        code = run(["alcoves", "enumerate", "--config", str(cfgfile), "--out", str(outfile)])
        assert code == 0
        data = json.loads(outfile.read_text())
        assert data["config"]["n"] == 4
        # flags beat the config file
        code = run(["alcoves", "enumerate", "--config", str(cfgfile), "--n", "3", "--out", str(outfile)])
        data = json.loads(outfile.read_text())
        assert data["config"]["n"] == 3


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "alcalc.cli", "alcoves", "special", "--n", "4", "--f", "2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["passed"] is True
