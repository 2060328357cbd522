"""Council power tables for every period, the reference comparison, and the
panel summary statistics for the power columns.

    python3 scripts/reproduce_council_tables.py [--outdir results]
"""

import argparse
import time
from fractions import Fraction
from pathlib import Path

from powerkit.eu import (
    build_power_panel,
    compare_to_reference,
    default_tolerance,
    load_allowlist,
    load_council_configs,
    load_reference,
    period_power_table,
    write_power_panel,
)
from powerkit.report import RenderSpec, render_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    md = RenderSpec("markdown", 3)
    ref, allow = load_reference(), load_allowlist()
    configs = load_council_configs()
    parts, report = [], []
    for cfg in configs:
        t0 = time.perf_counter()
        table = period_power_table(cfg)
        dt = time.perf_counter() - t0
        rows = [[r.country, r.values["ssi"], r.values["nucleolus"]] for r in table.rows]
        parts.append(render_table(["Member", "SSI", "Nucleolus"], rows, md,
                                  title=f"{cfg.name} ({dt:.1f} s)"))
        report += compare_to_reference([table], ref, default_tolerance(cfg.start), allowlist=allow)
    (out / "council_tables.md").write_text("\n".join(parts))
    lines = ["period,country,index,computed,printed,allowlisted"]
    lines += [f"{d.period},{d.country},{d.index},{d.computed},{d.reported},{d.allowlisted}"
              for d in report]
    (out / "discrepancies.csv").write_text("\n".join(lines) + "\n")

    rows = build_power_panel(configs)
    write_power_panel(rows, out / "power_panel.csv")
    n = len(rows)
    stats = []
    for col in ("p_ssi", "p_nucl"):
        vals = [getattr(r, col) for r in rows]
        mean = sum(vals, Fraction(0)) / n
        stats.append([col, n, mean, float(min(vals)), float(max(vals))])
    (out / "panel_summary.md").write_text(
        render_table(["Variable", "N", "Mean", "Min", "Max"], stats, RenderSpec("markdown", 4)))
    print(f"{len(report)} discrepancies, "
          f"{sum(not d.allowlisted for d in report)} not allowlisted; outputs in {out}/")


if __name__ == "__main__":
    main()
