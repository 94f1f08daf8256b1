import json
import logging

import pytest

from eulerian_audit import cli
from eulerian_audit.cli import EXIT_DEVIATION, EXIT_ERROR, EXIT_OK, family_value, main, sequence_text
from eulerian_audit.errors import UnknownFamilyError
from eulerian_audit.report_generator import ReportGenerator


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("N_MAX", "PADIC_CAP", "WORKERS", "OUTPUT_FORMAT", "LOG_LEVEL"):
        monkeypatch.delenv(f"EULERIAN_AUDIT_{name}", raising=False)


class TestFamilies:
    def test_sequence_text_shapes(self):
        assert sequence_text("euler", 3) == "1, -1/2, 0, 1/4"
        assert sequence_text("eulerian-triangle", 3) == "1 / 1 1 / 1 1 1 / 1 1 4 1"
        assert sequence_text("eulerian-S", 2, point=2) == "1, 2, 6"

    def test_gen_eulerian_member(self):
        assert family_value("gen-eulerian", 2) == "q = 1 + 1*a^1, grade = 2"

    def test_unknown_family(self):
        with pytest.raises(UnknownFamilyError):
            family_value("catalan", 2)

    def test_bernstein_needs_k(self):
        with pytest.raises(ValueError, match="--k"):
            family_value("bernstein", 2)


class TestAudit:
    def test_registry_expectations_exit_zero(self, capsys):
        code = main(["audit", "--identity", "eq15,thm7,thm10", "--n-max", "4", "--omit-header"])
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["summary"]["deviations"] == 0
        assert {"pass", "fail", "deviations"} == set(report["summary"])
        assert "header" not in report
        assert [d["id"] for d in report["registry"]] == ["eq15", "thm10", "thm7"]

    def test_deviation_exits_two(self, capsys):
        code = main(["audit", "--identity", "thm7", "--n-max", "3", "--expect", "thm7:as_stated=all"])
        assert code == EXIT_DEVIATION
        report = json.loads(capsys.readouterr().out)
        assert report["summary"]["deviations"] == 1
        deviating = [row for row in report["verdicts"] if row["deviation"]]
        assert [(row["id"], row["form"], row["n"]) for row in deviating] == [("thm7", "as_stated", 2)]

    def test_header_present_by_default(self, capsys):
        main(["audit", "--identity", "eq4", "--n-max", "2"])
        report = json.loads(capsys.readouterr().out)
        assert set(report["header"]) == {"started", "elapsed_seconds"}

    def test_json_is_deterministic(self, capsys):
        argv = ["audit", "--identity", "eq19,thm11", "--n-max", "4", "--omit-header", "--workers", "3"]
        main(argv)
        first = capsys.readouterr().out
        main(argv[:-2] + ["--workers", "1"])
        assert capsys.readouterr().out == first

    def test_csv_matches_json(self, capsys, tmp_path):
        out = tmp_path / "report.csv"
        main(["audit", "--identity", "eq7,thm8", "--n-max", "3", "--format", "csv", "--out", str(out)])
        main(["audit", "--identity", "eq7,thm8", "--n-max", "3", "--omit-header"])
        report = json.loads(capsys.readouterr().out)
        rows = ReportGenerator().read_csv(out.read_text(encoding="utf-8"))
        assert [row.model_dump(mode="json", by_alias=True) for row in rows] == report["verdicts"]

    def test_unknown_identity_is_input_error(self, capsys):
        assert main(["audit", "--identity", "eq99"]) == EXIT_ERROR
        assert "unknown identity 'eq99'" in capsys.readouterr().err

    def test_malformed_override(self, capsys):
        assert main(["audit", "--identity", "thm7", "--expect", "thm7=all"]) == EXIT_ERROR
        assert "malformed expectation override" in capsys.readouterr().err

    def test_invalid_settings(self, capsys):
        assert main(["audit", "--format", "xml"]) == EXIT_ERROR
        assert "invalid settings" in capsys.readouterr().err

    def test_env_settings(self, capsys, monkeypatch):
        monkeypatch.setenv("EULERIAN_AUDIT_N_MAX", "2")
        main(["audit", "--identity", "thm9", "--omit-header"])
        report = json.loads(capsys.readouterr().out)
        assert [row["n"] for row in report["verdicts"]] == [1, 2]


class TestOtherCommands:
    def test_seq(self, capsys):
        assert main(["seq", "--name", "euler", "--n-max", "3"]) == EXIT_OK
        assert capsys.readouterr().out == "1, -1/2, 0, 1/4\n"

    def test_poly(self, capsys):
        assert main(["poly", "--family", "eulerian-S", "--n", "2", "--a", "1/2"]) == EXIT_OK
        assert capsys.readouterr().out == "3/4\n"

    def test_poly_bad_point(self, capsys):
        assert main(["poly", "--family", "eulerian-S", "--n", "2", "--a", "0.5"]) == EXIT_ERROR
        assert "malformed rational literal" in capsys.readouterr().err

    def test_series(self, capsys):
        assert main(["series", "--family", "minus-one", "--n-max", "3"]) == EXIT_OK
        assert capsys.readouterr().out == "c_0 = 1\nc_1 = -1\nc_2 = 0\nc_3 = 2\n"

    def test_padic(self, capsys):
        assert main(["padic", "--p", "3", "--n", "1", "--levels", "3"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "gap valuations nondecreasing: True" in out
        assert "gap growth constant c: 0" in out
        assert "functional equation residual at N=3: 27 (v_p = 3)" in out

    def test_padic_rejects_composite(self, capsys):
        assert main(["padic", "--p", "4", "--levels", "2"]) == EXIT_ERROR
        assert "p=4 is not an odd prime" in capsys.readouterr().err

    def test_padic_cap(self, capsys):
        assert main(["padic", "--p", "5", "--levels", "3", "--cap", "100"]) == EXIT_ERROR
        assert "exceeds the configured cap" in capsys.readouterr().err

    def test_crosscheck_match(self, capsys, fixtures_dir):
        code = main(["crosscheck", "--name", "genocchi", "--bfile", str(fixtures_dir / "genocchi.b")])
        assert code == EXIT_OK
        assert capsys.readouterr().out == "genocchi: full match over 13 entries (indices 0..12)\n"

    def test_crosscheck_mismatch(self, capsys, fixtures_dir, tmp_path):
        text = (fixtures_dir / "eulerian_triangle.b").read_text(encoding="utf-8")
        corrupted = tmp_path / "corrupted.b"
        corrupted.write_text(text.replace("\n5 4\n", "\n5 5\n"), encoding="utf-8")
        code = main(["crosscheck", "--name", "eulerian-triangle", "--bfile", str(corrupted), "--offset", "1"])
        assert code == EXIT_DEVIATION
        assert "mismatch at index 5: b-file 5, computed 4" in capsys.readouterr().out

    def test_crosscheck_missing_file(self, capsys, tmp_path):
        code = main(["crosscheck", "--name", "genocchi", "--bfile", str(tmp_path / "absent.b")])
        assert code == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error:")

    def test_internal_error_exits_one(self, monkeypatch, caplog):
        def boom(*args, **kwargs):
            raise RuntimeError("boom")

        monkeypatch.setattr(cli, "witt_table", boom)
        with caplog.at_level(logging.ERROR, logger="eulerian_audit.cli"):
            assert main(["padic", "--p", "3", "--levels", "1"]) == EXIT_ERROR
        assert "internal error while running padic" in caplog.text

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "eulerian-audit" in capsys.readouterr().out
