"""Command-line interface: exit codes, JSON output and file handling."""

import json

import pytest

from modquot.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def run_json(capsys, *argv):
    code = run([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


class TestExitCodes:
    def test_classify(self, capsys):
        code, data = run_json(capsys, "classify", "--genus", "12", "--points", "12", "--group", "S12")
        assert code == EXIT_OK
        assert data["classification"] == "IntermediateKodaira"
        assert data["kodaira_dimension"] == 33

    def test_fm_pass_and_fail(self, capsys):
        code, data = run_json(capsys, "fm", "--genus", "23", "--blocks", "2,2")
        assert code == EXIT_OK and data["pass"]
        assert data["f_display"] == "13 - 1/36"
        code, data = run_json(capsys, "fm", "--genus", "22", "--blocks", "2,2,2")
        assert code == EXIT_FAIL and not data["pass"]

    def test_fm_inapplicable(self, capsys):
        code, data = run_json(capsys, "fm", "--genus", "10", "--blocks", "11,2")
        assert code == EXIT_FAIL and data["applicable"] is False

    def test_fm_with_entries(self, capsys):
        code, data = run_json(capsys, "fm", "--genus", "20", "--blocks", "4,4",
                              "--entry", "1=F:8", "--entry", "2=F:8")
        assert code == EXIT_OK
        assert data["entries"] == ["F:8", "F:8"]
        assert data["f"] == "368234/28329"

    @pytest.mark.parametrize("argv", [
        ["classify", "--genus", "5"],
        ["classify", "--genus", "5", "--points", "3", "--group", "S4"],
        ["fm", "--genus", "10", "--blocks", "a,b"],
        ["fm", "--genus", "10", "--blocks", "2,2", "--entry", "F8"],
        ["catalog", "--name", "W", "--genus", "10"],
        ["catalog", "--name", "F", "--genus", "10"],
        ["tables", "--which", "nope"],
        ["pullback", "--in", "/nonexistent.json", "--keep", "1"],
        [],
    ])
    def test_usage_errors(self, argv, capsys):
        assert run(argv) == EXIT_USAGE

    def test_help(self, capsys):
        assert run(["--help"]) == EXIT_OK


class TestCertificate:
    def test_out_file_and_determinism(self, tmp_path, capsys):
        out = tmp_path / "cert.json"
        argv = ["certificate", "--genus", "23", "--blocks", "2,2", "--out", str(out)]
        code, first = run_json(capsys, *argv)
        assert code == EXIT_OK
        assert json.loads(out.read_text()) == first
        text_a = out.read_text()
        run_json(capsys, *argv)
        assert out.read_text() == text_a
        assert first["verdict"] == "GeneralType"

    def test_failing_certificate(self, capsys):
        code, data = run_json(capsys, "certificate", "--genus", "22", "--blocks", "2,2,2")
        assert code == EXIT_FAIL
        assert "lambda" in data["status"]["unproved"]

    def test_text_output(self, capsys):
        assert run(["certificate", "--genus", "23", "--blocks", "23"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "verdict: NonNegativeKodaira" in out


class TestCatalogAndTables:
    def test_catalog_slope(self, capsys):
        code, data = run_json(capsys, "catalog", "--name", "slope", "--genus", "23")
        assert code == EXIT_OK and data["slope"] == "13/2"

    def test_catalog_T(self, capsys):
        code, data = run_json(capsys, "catalog", "--name", "T", "--genus", "24")
        assert data["lambda"] == "-17/22"

    def test_tables_diff(self, capsys):
        code, data = run_json(capsys, "tables", "--which", "diff", "--gmin", "14", "--gmax", "23")
        assert code == EXIT_OK and data["ok"]
        code, data = run_json(capsys, "tables", "--which", "diff", "--gmin", "12", "--gmax", "12")
        assert code == EXIT_FAIL and data["rows"][0]["status"] == "mismatch"

    def test_tables_msn(self, capsys):
        code, data = run_json(capsys, "tables", "--which", "msn")
        assert code == EXIT_OK and len(data["rows"]) == 12


class TestPullback:
    def test_full_form(self, tmp_path, capsys):
        src = tmp_path / "x.json"
        src.write_text(json.dumps({"g": 3, "n": 1, "lambda": "1/1", "psi": {"1": "1/1"},
                                   "irr": "0/1", "boundary": []}))
        code, data = run_json(capsys, "pullback", "--in", str(src), "--keep", "1", "--points", "2")
        assert code == EXIT_OK
        assert data["n"] == 2

    def test_profile_form(self, tmp_path, capsys):
        from modquot.catalog import catalog_entry

        src = tmp_path / "t.json"
        src.write_text(json.dumps(catalog_entry("F", 12, 3).profile_class().to_json()))
        code, data = run_json(capsys, "pullback", "--in", str(src), "--keep", "1,2,3,4,5,6", "--points", "8")
        assert code == EXIT_OK
        assert data["blocks"] == [[1, 2, 3, 4, 5, 6], [7, 8]]

    def test_bad_json(self, tmp_path, capsys):
        src = tmp_path / "bad.json"
        src.write_text("{")
        assert run(["pullback", "--in", str(src), "--keep", "1"]) == EXIT_USAGE
