import io
import logging
from datetime import datetime, timezone
from typing import Iterable, List, Mapping, Optional

import pandas as pd

from . import __version__
from .models import (
    AuditReport,
    IdentityDescriptor,
    IdentityVerdict,
    ReportHeader,
    Status,
    Summary,
    VerdictRow,
)
from .padic_lab import WittRow
from .exact_arith import format_rat

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "id", "form", "n", "status", "grade_match", "coefficient_match",
    "expected", "deviation", "lhs", "rhs", "diff",
]


class ReportGenerator:
    """Assembles audit reports and renders them as JSON, CSV or text tables."""

    def generate(
        self,
        verdicts: Iterable[IdentityVerdict],
        registry: Mapping[str, IdentityDescriptor],
        identity_ids: Optional[Iterable[str]] = None,
        started: Optional[datetime] = None,
        elapsed_seconds: float = 0.0,
    ) -> AuditReport:
        rows = sorted(
            (row for verdict in verdicts for row in verdict.rows),
            key=lambda r: (r.identity_id, r.form.value, r.n),
        )
        ids = sorted(identity_ids) if identity_ids is not None else sorted(registry)
        started = started or datetime.now(timezone.utc)
        return AuditReport(
            header=ReportHeader(started=started.isoformat(), elapsed_seconds=round(elapsed_seconds, 6)),
            version=__version__,
            registry=[registry[i] for i in ids],
            verdicts=rows,
            summary=self._summarize(rows),
        )

    def _summarize(self, rows: List[VerdictRow]) -> Summary:
        return Summary(
            passed=sum(1 for r in rows if r.status is Status.PASS),
            failed=sum(1 for r in rows if r.status is Status.FAIL),
            deviations=sum(1 for r in rows if r.deviation),
        )

    def to_json(self, report: AuditReport, omit_header: bool = False) -> str:
        exclude = {"header"} if omit_header else None
        return report.model_dump_json(indent=2, by_alias=True, exclude=exclude) + "\n"

    def verdict_frame(self, rows: Iterable[VerdictRow]) -> pd.DataFrame:
        records = [row.model_dump(mode="json", by_alias=True) for row in rows]
        return pd.DataFrame(records, columns=CSV_COLUMNS)

    def to_csv(self, report: AuditReport) -> str:
        buffer = io.StringIO()
        self.verdict_frame(report.verdicts).to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()

    def read_csv(self, text: str) -> List[VerdictRow]:
        """Parse a CSV report back into verdict rows."""
        frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
        rows = []
        for record in frame.to_dict(orient="records"):
            rows.append(
                VerdictRow(
                    identity_id=record["id"],
                    form=record["form"],
                    n=int(record["n"]),
                    status=record["status"],
                    grade_match=record["grade_match"] == "True",
                    coefficient_match=record["coefficient_match"] == "True",
                    expected=record["expected"] or None,
                    deviation=None if record["deviation"] == "" else record["deviation"] == "True",
                    lhs=record["lhs"],
                    rhs=record["rhs"],
                    diff=record["diff"],
                )
            )
        return rows

    def render(self, report: AuditReport, output_format: str, omit_header: bool = False) -> str:
        if output_format == "csv":
            return self.to_csv(report)
        return self.to_json(report, omit_header=omit_header)

    def witt_frame(self, rows: Iterable[WittRow]) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "N": row.level,
                    "S_N": format_rat(row.partial_sum),
                    "v_p(S_N - E_n)": row.valuation_of_gap.to_text(),
                    "v_p(residual)": row.residual_valuation.to_text(),
                }
                for row in rows
            ],
            columns=["N", "S_N", "v_p(S_N - E_n)", "v_p(residual)"],
        )

    def table_text(self, frame: pd.DataFrame) -> str:
        return frame.to_string(index=False) + "\n"
