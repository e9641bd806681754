"""Command line front end: flags, output modes, exit codes."""
import json

import pytest

from voaforge.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


class TestExitCodes:
    def test_pass_is_zero(self, capsys):
        rc, out, _ = run(capsys, "c2", "--p", "1", "--check", "casimir")
        assert rc == 0
        assert json.loads(out)["status"] == "pass"

    def test_check_failure_is_one(self, capsys):
        rc, out, _ = run(capsys, "suite", "--profile", "quick",
                         "--fault", "cocycle-sign")
        assert rc == 1
        body = json.loads(out)
        assert body["status"] == "fail"
        first = body["report"]["results"][0]
        assert first["name"] == "wakimoto-closure" and not first["ok"]

    def test_usage_error_is_two(self, capsys):
        rc, _, err = run(capsys, "realization", "--name", "zzz")
        assert rc == 2
        assert "unknown realization" in err

    def test_missing_flag_is_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["realization"])
        assert exc.value.code == 2

    def test_unknown_subcommand_is_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2

    def test_inconclusive_is_three(self, capsys):
        rc, out, _ = run(capsys, "qgroup", "--variant", "a", "--p", "3",
                         "--check", "fg-inverse", "--max-steps", "3")
        assert rc == 3
        assert json.loads(out)["status"] == "inconclusive"

    def test_unreachable_server_is_two(self, capsys):
        rc, _, err = run(capsys, "omega", "--sweep", "--pmax", "1",
                         "--server", "http://127.0.0.1:1")
        assert rc == 2
        assert "error" in err


class TestOutputs:
    def test_json_envelope(self, capsys):
        rc, out, _ = run(capsys, "omega", "--p", "1", "--b", "1/7",
                         "--classify")
        body = json.loads(out)
        assert rc == 0
        assert set(body) == {"status", "ok", "inconclusive", "report"}
        assert body["report"]["classification"]["case"]

    def test_text_mode_prints_status_and_checks(self, capsys):
        rc, out, _ = run(capsys, "realization", "--name", "virasoro-1p",
                         "--p", "2", "--out", "text")
        lines = out.splitlines()
        assert rc == 0
        assert lines[0] == "status: pass"
        assert any(line.startswith("  [pass]") for line in lines[1:])

    def test_text_mode_prints_series_terms(self, capsys):
        rc, out, _ = run(capsys, "char", "--kind", "ft", "--p", "1",
                         "--order", "2", "--out", "text")
        assert rc == 0
        assert "  q^0: 1" in out.splitlines()

    def test_ope_text_mode_prints_poles(self, capsys):
        rc, out, _ = run(capsys, "ope", "--space", "uva", "--p", "1",
                         "--left", "e^{u}", "--right", "e^{-u}",
                         "--out", "text")
        assert "  pole 1: e^{0}" in out.splitlines()

    def test_expression_error_is_reported_with_position(self, capsys):
        rc, _, err = run(capsys, "ope", "--left", "e^{u+w}",
                         "--right", "e^{0}")
        assert rc == 2
        assert "unknown generator w" in err and "column" in err


class TestFlagPlumbing:
    def test_kernel_flags_reach_the_report(self, capsys):
        rc, out, _ = run(capsys, "kernel", "--p", "1",
                         "--screenings", "S1,S2", "--max-conf", "2",
                         "--window", "-3:3")
        body = json.loads(out)
        assert rc == 0
        assert body["report"]["wmax"] == 2
        assert body["report"]["zmax"] == 3

    def test_check_identity(self, capsys):
        rc, out, _ = run(capsys, "check", "--identity", "weyl-simple",
                         "--p", "1", "--order", "3")
        assert rc == 0
        assert json.loads(out)["report"]["identity"] == "weyl-simple"

    def test_screen_subcommand(self, capsys):
        rc, out, _ = run(capsys, "screen", "--name", "qminus", "--p", "2",
                         "--state", "e^{u+v}")
        assert rc == 0
        assert json.loads(out)["report"]["in_kernel"] is True
