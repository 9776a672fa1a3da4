"""Check records and their table/CSV/JSON renderings.

CSV layout: '#'-prefixed metadata lines (free-form, may carry timestamps and
aggregate runtimes), then the mandatory header
``check_name,param_string,expected,observed,status,runtime_ms``, then one row
per record, UTF-8 with LF line endings.  The runtime_ms column and the
metadata lines are the volatile part of a report; ``csv_body`` strips both,
and what remains is byte-identical across reruns with the same seed.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

PASS = "pass"
FAIL = "fail"
STAT_PASS = "statistical-pass"
STAT_FAIL = "statistical-fail"

CSV_FIELDS = ("check_name", "param_string", "expected", "observed", "status", "runtime_ms")


@dataclass(frozen=True)
class ReportRecord:
    check_name: str
    parameters: dict[str, str]
    expected: str
    observed: str
    status: str
    runtime_ms: int

    @property
    def param_string(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.parameters.items())

    @property
    def failed(self) -> bool:
        return self.status in (FAIL, STAT_FAIL)


def fmt_float(x: float) -> str:
    """Decimal rendering at 15 significant digits, reproducible across runs."""
    return format(float(x), ".15g")


def sort_records(records: list[ReportRecord]) -> list[ReportRecord]:
    return sorted(records, key=lambda r: (r.check_name, r.param_string))


def format_table(records: list[ReportRecord]) -> str:
    headers = ("check", "params", "expected", "observed", "status", "ms")
    rows = [
        (r.check_name, r.param_string, r.expected, r.observed, r.status, str(r.runtime_ms))
        for r in records
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    failed = sum(r.failed for r in records)
    lines.append("")
    lines.append(f"{len(records)} checks, {len(records) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"


def format_csv(records: list[ReportRecord], metadata: list[str] | None = None) -> str:
    buf = io.StringIO()
    for line in metadata or []:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow(
            (r.check_name, r.param_string, r.expected, r.observed, r.status, r.runtime_ms)
        )
    return buf.getvalue()


def csv_body(text: str) -> str:
    """Canonical deterministic body: metadata lines and the runtime_ms column
    removed, quoting normalized."""
    data_lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = list(csv.reader(data_lines))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row[:-1])
    return buf.getvalue()


def format_json(records: list[ReportRecord]) -> str:
    payload = [
        {
            "check_name": r.check_name,
            "param_string": r.param_string,
            "expected": r.expected,
            "observed": r.observed,
            "status": r.status,
            "runtime_ms": r.runtime_ms,
        }
        for r in records
    ]
    return json.dumps(payload, indent=2) + "\n"
