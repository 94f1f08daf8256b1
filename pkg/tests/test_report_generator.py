import json
from datetime import datetime, timezone

from eulerian_audit.gen_eulerian import IdentityAuditor
from eulerian_audit.identity_registry import registry_map
from eulerian_audit.padic_lab import witt_table
from eulerian_audit.report_generator import CSV_COLUMNS, ReportGenerator

STARTED = datetime(2024, 1, 1, tzinfo=timezone.utc)


def _report(ids, n_max=3):
    verdicts = IdentityAuditor().audit(ids, n_max)
    return ReportGenerator().generate(verdicts, registry_map(), ids, STARTED, 0.5)


def test_rows_sorted_and_counted():
    report = _report(["thm8", "eq4"])
    keys = [(r.identity_id, r.form.value, r.n) for r in report.verdicts]
    assert keys == sorted(keys)
    assert report.summary.passed + report.summary.failed == len(report.verdicts)
    assert report.summary.deviations == 0
    assert [d.id for d in report.registry] == ["eq4", "thm8"]


def test_json_uses_wire_names():
    generator = ReportGenerator()
    payload = json.loads(generator.to_json(_report(["thm9"])))
    assert payload["header"]["started"] == "2024-01-01T00:00:00+00:00"
    assert payload["summary"] == {"pass": 3, "fail": 0, "deviations": 0}
    row = payload["verdicts"][0]
    assert list(row) == CSV_COLUMNS
    assert row["status"] == "PASS"


def test_omit_header():
    generator = ReportGenerator()
    payload = json.loads(generator.to_json(_report(["thm9"]), omit_header=True))
    assert "header" not in payload


def test_csv_header_and_round_trip():
    generator = ReportGenerator()
    report = _report(["eq7", "thm10"])
    text = generator.to_csv(report)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert generator.read_csv(text) == report.verdicts


def test_witt_table_text():
    generator = ReportGenerator()
    frame = generator.witt_frame(witt_table(1, 3, 2))
    assert list(frame.columns) == ["N", "S_N", "v_p(S_N - E_n)", "v_p(residual)"]
    assert frame["S_N"].tolist() == ["1", "4"]
    text = generator.table_text(frame)
    assert "v_p(S_N - E_n)" in text.splitlines()[0]
