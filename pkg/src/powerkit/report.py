"""Plain-text, CSV and Markdown table rendering with half-even rounding."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

FORMATS = ("text", "csv", "markdown")


def round_half_even(value, places: int = 3) -> Decimal:
    """Round an exact rational (or a float, read as its shortest decimal
    repr) to ``places`` decimals with ties going to the even digit."""
    if isinstance(value, Fraction):
        v = value
    elif isinstance(value, float):
        v = Fraction(repr(value))
    else:
        v = Fraction(value)
    scaled = v * 10**places
    lo = scaled.numerator // scaled.denominator
    rem = scaled - lo
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and lo % 2):
        lo += 1
    return Decimal(lo).scaleb(-places).quantize(Decimal(1).scaleb(-places))


@dataclass(frozen=True)
class RenderSpec:
    format: str = "text"
    precision: int = 3

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if not 0 <= self.precision <= 12:
            raise ValueError(f"precision must be in [0, 12], got {self.precision}")

    def cell(self, v) -> str:
        if v is None:
            return ""
        if isinstance(v, (Fraction, float, int)) and not isinstance(v, bool):
            return str(round_half_even(v, self.precision))
        return str(v)


def render_table(headers: Sequence[str], rows: Sequence[Sequence], spec: RenderSpec,
                 title: str | None = None) -> str:
    cells = [[spec.cell(v) for v in row] for row in rows]
    if spec.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(cells)
        return buf.getvalue()
    if spec.format == "markdown":
        lines = [f"### {title}", ""] if title else []
        lines.append("| " + " | ".join(headers) + " |")
        lines.append("|" + "|".join("---" if j == 0 else "---:" for j in range(len(headers))) + "|")
        lines += ["| " + " | ".join(r) + " |" for r in cells]
        return "\n".join(lines) + "\n"
    widths = [max([len(h)] + [len(r[j]) for r in cells]) for j, h in enumerate(headers)]

    def fmt(row):
        return "  ".join(v.ljust(w) if j == 0 else v.rjust(w)
                         for j, (v, w) in enumerate(zip(row, widths))).rstrip()

    lines = [title] if title else []
    lines.append(fmt(headers))
    lines.append("  ".join("-" * w for w in widths))
    lines += [fmt(r) for r in cells]
    return "\n".join(lines) + "\n"
