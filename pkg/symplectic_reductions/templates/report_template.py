"""
Report Template System
Renders reduction reports, verification reports and classification tables as
plain text, CSV or JSON.
"""

import csv
import io
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Sequence

from ..exceptions import InvalidParameterError
from ..models.report import ReductionReport, TableRow, VerificationReport

DASH = "-"
SCHEMA_PATH = Path(__file__).with_name("report.schema.json")


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class ReportRenderer:
    """Service for rendering reports in the supported output formats."""

    TABLE_COLUMNS = ["n", "m", "valid", "N", "quotient_dim", "verdict", "springer_count", "model_dim"]

    def __init__(self, output_format: OutputFormat = OutputFormat.TEXT):
        self.output_format = OutputFormat(output_format)

    @staticmethod
    def report_schema() -> Dict[str, Any]:
        """JSON Schema covering both the analysis and the verification documents."""
        with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
            return json.load(f)

    # Reduction reports

    def render_report(self, report: ReductionReport) -> str:
        """
        Render one analysis.

        Raises:
            InvalidParameterError: CSV requested (reports are not tabular)
        """
        if self.output_format is OutputFormat.JSON:
            return report.to_json()
        if self.output_format is OutputFormat.CSV:
            raise InvalidParameterError("csv output is available for tables only")
        return self._report_text(report)

    def _report_text(self, report: ReductionReport) -> str:
        lines = [f"{report.group.value.upper()} n={report.n} m={report.m} (seed {report.seed})", ""]

        if report.zero_fiber:
            lines.append("Zero fibre components:")
            lines.extend(f"  {c.name}: dim {c.dim}" for c in report.zero_fiber)
            lines.append("")

        quotient = report.quotient
        if quotient is not None:
            lines.append(f"Quotient: dim {quotient.dim}, "
                         f"{'reducible' if quotient.is_reducible else 'irreducible'}")
            lines.append("  components: " + ", ".join(self._label(c) for c in quotient.components))
            lines.append("  strata: " + ", ".join(f"{self._label(s.label)} ({s.dim})" for s in quotient.strata))
            singular = self._label(quotient.singular_locus) if quotient.singular_locus else "smooth"
            lines.append(f"  singular locus: {singular}")
            lines.append("")

        if report.h0_table:
            lines.append("h0 table:")
            lines.extend(f"  {entry.weight}: {entry.value}" for entry in report.h0_table)
            lines.append("")

        verdict = report.verdict
        lines.append(f"Verdict: {verdict.case.value}")
        lines.append(f"  springer count: {self._value(verdict.springer_count)}")
        model = report.model
        lines.append(f"  model: {model.name}, dim {model.total_dim}" if model else "  model: not known")
        lines.extend(f"  - {citation}" for citation in verdict.citations)
        lines.append("")

        inventory = report.hilb_inventory
        dims = ", ".join(str(d) for d in inventory.component_dims) or DASH
        lines.append(f"Hilbert scheme: {inventory.status.value} "
                     f"({self._value(inventory.component_count)} components, dims {dims})")
        lines.append("")

        if report.verification:
            lines.append("Checks:")
            for check in sorted(report.verification, key=lambda c: c.name):
                lines.append(f"  [{'PASS' if check.passed else 'FAIL'}] {check.name}")
        for note in report.notes:
            lines.append(f"Note: {note}")
        return "\n".join(lines).rstrip() + "\n"

    # Verification reports

    def render_verification(self, report: VerificationReport) -> str:
        if self.output_format is OutputFormat.JSON:
            return json.dumps(report.to_dict(), indent=2, sort_keys=True)
        if self.output_format is OutputFormat.CSV:
            rows = [[check.name, "pass" if check.passed else "fail"] for check in report.checks]
            return self._csv(["check", "status"], rows)

        lines = [f"Suite {report.suite} (seed {report.seed})"]
        for check in report.checks:
            lines.append(f"  [{'PASS' if check.passed else 'FAIL'}] {check.name}")
            if not check.passed:
                lines.append(f"      witness: {json.dumps(check.witness, sort_keys=True)}")
        lines.append(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
        return "\n".join(lines) + "\n"

    # Tables

    def render_table(self, rows: Sequence[TableRow]) -> str:
        values = [self._row_values(row) for row in rows]
        if self.output_format is OutputFormat.JSON:
            return json.dumps([row.to_dict() for row in rows], indent=2, sort_keys=True)
        if self.output_format is OutputFormat.CSV:
            return self._csv(self.TABLE_COLUMNS, values)

        widths = [max(len(column), *(len(v[i]) for v in values)) if values else len(column)
                  for i, column in enumerate(self.TABLE_COLUMNS)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(self.TABLE_COLUMNS, widths))]
        lines.append("  ".join(DASH * w for w in widths))
        lines.extend("  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in values)
        return "\n".join(lines) + "\n"

    def _row_values(self, row: TableRow) -> List[str]:
        data = row.to_dict()
        return [self._value(data[column]) for column in self.TABLE_COLUMNS]

    @staticmethod
    def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()

    @staticmethod
    def _value(value) -> str:
        if value is None:
            return DASH
        if isinstance(value, bool):
            return "yes" if value else "no"
        return str(value)

    @staticmethod
    def _label(label) -> str:
        suffix = f"^{label.tag.value}" if label.tag else ""
        return f"{label.partition}{suffix}"
