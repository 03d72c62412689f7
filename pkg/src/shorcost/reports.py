"""Table rows and their CSV / JSON serialization.

CSV shows two significant figures, matching how estimates with large
systematic uncertainty are usually reported; JSON keeps full precision so
rows round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ReportRow:
    n: int
    n_e: int
    d1: int
    d2: int
    delta_off: int
    c_mul: int
    c_exp: int
    c_sep: int
    retry_risk: float
    volume_per_run: float
    expected_volume: float
    megaqubits: float
    hours_per_run: float

    @classmethod
    def from_report(cls, report) -> "ReportRow":
        p, ph = report.params, report.physical
        return cls(
            n=report.problem.n,
            n_e=report.problem.n_e,
            d1=p.d1,
            d2=p.d2,
            delta_off=p.delta_off,
            c_mul=p.c_mul,
            c_exp=p.c_exp,
            c_sep=p.c_sep,
            retry_risk=ph.retry_risk,
            volume_per_run=ph.volume_per_run,
            expected_volume=ph.expected_volume,
            megaqubits=ph.megaqubits,
            hours_per_run=ph.hours_per_run,
        )


COLUMNS = tuple(f.name for f in fields(ReportRow))
FLOAT_COLUMNS = ("retry_risk", "volume_per_run", "expected_volume", "megaqubits", "hours_per_run")


def two_sig(x: float) -> str:
    """Round to two significant figures without switching to exponent notation.

    >>> two_sig(0.0567), two_sig(5.94), two_sig(1846.3)
    ('0.057', '5.9', '1800')
    """
    if x == 0:
        return "0"
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    digits = 1 - math.floor(math.log10(abs(x)))
    rounded = round(x, digits)
    # rounding can carry into a new decade (9.96 -> 10)
    if rounded != 0 and math.floor(math.log10(abs(rounded))) != math.floor(math.log10(abs(x))):
        digits -= 1
        rounded = round(x, digits)
    if digits <= 0:
        return str(int(rounded))
    return f"{rounded:.{digits}f}"


def format_csv(rows: Iterable[ReportRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        values = asdict(row)
        writer.writerow([two_sig(values[c]) if c in FLOAT_COLUMNS else values[c] for c in COLUMNS])
    return out.getvalue()


def format_json(rows: Iterable[ReportRow]) -> str:
    payload = [asdict(r) for r in rows]
    return json.dumps(payload, indent=2) + "\n"


def parse_json(text: str) -> list[ReportRow]:
    return [ReportRow(**item) for item in json.loads(text)]


def render(rows: Sequence[ReportRow], fmt: str) -> str:
    if fmt == "csv":
        return format_csv(rows)
    if fmt == "json":
        return format_json(rows)
    raise ValueError(f"unknown report format {fmt!r}; choose from {FORMATS}")


def write_report(rows: Sequence[ReportRow], fmt: str, path) -> None:
    """Write rows to ``path`` with LF line endings regardless of platform."""
    text = render(rows, fmt)
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write(text)
