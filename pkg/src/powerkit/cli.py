"""``powerkit`` command line: power, eu-history, panel, fit.

Exit status: 0 success, 1 usage or input error, 2 computation or capability
error, 3 reference comparison found non-allowlisted discrepancies.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

import pandas as pd

from . import econometrics as em
from .eu import (
    build_power_panel,
    compare_to_reference,
    config_from_dict,
    default_tolerance,
    load_allowlist,
    load_council_configs,
    load_reference,
    period_power_table,
    write_power_panel,
)
from .game import CapabilityError, GameError, game_from_dict
from .indices import KINDS, compute
from .lp import LPError
from .report import FORMATS, RenderSpec, render_table

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_REFERENCE = 0, 1, 2, 3

HEADINGS = {"ssi": "SSI", "banzhaf": "Banzhaf", "johnston": "Johnston",
            "deegan_packel": "Deegan-Packel", "public_good": "Public Good",
            "nucleolus": "Nucleolus"}

MODELS = {  # name -> (estimator, enlargement dummies, clustered)
    "ols": ("ols", False, False),
    "ols_d": ("ols", True, False),
    "glm": ("glm_fprobit", True, True),
    "fhetprob": ("fhetprob", True, True),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _indices(text: str) -> list[str]:
    kinds = [k.strip().lower().replace("-", "_") for k in text.split(",") if k.strip()]
    for k in kinds:
        if k not in KINDS:
            raise UsageError(f"unknown index {k!r}; choose from {', '.join(KINDS)}")
    return kinds


def _render(args) -> RenderSpec:
    try:
        return RenderSpec(args.format, args.precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# --- power ------------------------------------------------------------------------

def _load_game(path):
    """Game file, or a council file (whose population vector adds a rule)."""
    with open(path) as fh:
        doc = json.load(fh)
    if "populations" in doc or "period" in doc:
        return config_from_dict(doc, str(path)).game()
    return game_from_dict(doc, str(path))


def cmd_power(args) -> int:
    kinds = _indices(args.index)
    spec = _render(args)
    game = _load_game(args.game)
    profiles = [compute(game, k) for k in kinds]
    headers = ["Member"] + [HEADINGS[k] for k in kinds]
    rows = [[lb] + [p.values[i] for p in profiles] for i, lb in enumerate(game.labels)]
    print(render_table(headers, rows, spec, title=game.name if spec.format != "csv" else None), end="")
    if args.exact:
        ex = [[lb] + [str(p.values[i]) for p in profiles] for i, lb in enumerate(game.labels)]
        print(render_table(headers, ex, spec, title="exact" if spec.format != "csv" else None), end="")
    return EXIT_OK


# --- eu-history ---------------------------------------------------------------------

def cmd_eu_history(args) -> int:
    kinds = _indices(args.indices)
    spec = _render(args)
    configs = load_council_configs(args.config)
    if args.periods:
        wanted = {int(p) for p in args.periods.split(",")}
        unknown = wanted - {c.start for c in configs}
        if unknown:
            raise UsageError(f"no configuration starts in {sorted(unknown)}")
        configs = [c for c in configs if c.start in wanted]
    tol = None
    if args.tolerance is not None:
        try:
            tol = Decimal(args.tolerance)
        except InvalidOperation as exc:
            raise UsageError(f"bad tolerance {args.tolerance!r}") from exc
    reference = load_reference(args.reference)
    allow = load_allowlist(args.allowlist)
    failures = []
    for cfg in configs:
        table = period_power_table(cfg, kinds)
        headers = ["Member"] + [HEADINGS[k] for k in kinds]
        rows = [[r.country] + [r.values[k] for k in kinds] for r in table.rows]
        title = f"{cfg.name} ({cfg.period[0]}-{cfg.period[1]})"
        print(render_table(headers, rows, spec, title=title if spec.format != "csv" else None))
        t = tol if tol is not None else default_tolerance(cfg.start)
        failures += compare_to_reference([table], reference, t, allowlist=allow)
    if failures:
        rows = [[d.period, d.country, d.index, d.computed, d.reported, d.diff,
                 "yes" if d.allowlisted else "no"] for d in failures]
        print(render_table(["Period", "Country", "Index", "Computed", "Printed", "Diff", "Allowlisted"],
                           [[str(c) if c is not None else "missing" for c in r] for r in rows],
                           RenderSpec(spec.format, spec.precision),
                           title="Discrepancies" if spec.format != "csv" else None), end="")
    else:
        print("Discrepancies: none")
    return EXIT_REFERENCE if any(not d.allowlisted for d in failures) else EXIT_OK


# --- panel ------------------------------------------------------------------------

def cmd_panel(args) -> int:
    shares_path = Path(args.shares)
    if not shares_path.exists():
        raise UsageError(f"{shares_path}: no such file")
    try:
        shares = pd.read_csv(shares_path)
    except pd.errors.EmptyDataError as exc:
        raise em.EstimationError(f"{shares_path}: shares file is empty") from exc
    if args.power:
        power = pd.read_csv(args.power)
    else:
        rows = build_power_panel(load_council_configs(args.config))
        if args.power_out:
            write_power_panel(rows, args.power_out)
        power = em.power_frame(rows)
    report = em.join_panel(shares, power)
    for c, y in report.missing_shares:
        print(f"join: no shares row for {c} {y}", file=sys.stderr)
    for c, y in report.unmatched_shares:
        print(f"join: shares row {c} {y} is outside the council panel", file=sys.stderr)
    if not report.ok:
        print(f"{len(report.missing_shares) + len(report.unmatched_shares)} join failures",
              file=sys.stderr)
        return EXIT_COMPUTE
    report.panel.to_csv(args.out)
    print(f"{len(report.panel)} rows written to {args.out}")
    return EXIT_OK


# --- fit ------------------------------------------------------------------------------

def fit_report(res: em.FitResult, spec: RenderSpec, margins: dict | None = None,
               title: str = "") -> str:
    def num(v):
        return spec.cell(float(v))

    rows = []
    for nm, b, se, st in zip(res.names, res.coef, res.se, res.stars):
        if nm.startswith(em.LNSIGMA) and not any(r[0] == "lnsigma2" for r in rows):
            rows.append(["lnsigma2", "", ""])
        rows.append([nm.removeprefix(em.LNSIGMA), num(b) + st, f"({num(se)})"])
    foot = [["cluster", "yes" if res.vcov_type == "cluster" else "no", ""],
            ["N", str(res.n_obs), ""]]
    if res.r2_adj is not None:
        foot.append(["R2_adj", num(res.r2_adj), ""])
    if res.estimator == "glm_fprobit":
        foot.append(["chi2", num(res.wald_slopes()[0]), ""])
    if res.loglik is not None and abs(res.loglik) != float("inf"):
        foot += [["aic", num(res.aic), ""], ["bic", num(res.bic), ""]]
    out = render_table(["", title or res.estimator, ""], rows + foot, spec)
    if margins is not None:
        out += "\n" + render_table(["", "marginal effect"],
                                   [[k, num(v)] for k, v in margins.items()], spec)
    out += "+ p<0.10, * p<0.05, ** p<0.01\n"
    return out


def cmd_fit(args) -> int:
    spec_r = RenderSpec("text" if args.format == "json" else args.format, args.precision) \
        if 0 <= args.precision <= 12 else _render(args)
    path = Path(args.panel)
    if not path.exists():
        raise UsageError(f"{path}: no such file")
    panel = em.PanelDataset.from_csv(path)
    if not any(c in panel.frame for c in em.EU_DUMMIES):
        panel = panel.with_dummies()
    estimator, dummies, clustered = MODELS[args.model]
    if args.no_enlargement:
        dummies = False
    if args.cluster != "auto":
        clustered = args.cluster == "country"
    spec = em.ModelSpec(args.dep, args.power, dummies, estimator,
                        cluster="country" if clustered else "none")
    design = em.build_design(panel, spec)
    res = em.fit(design, spec)
    margins = em.marginal_effects(res, at=args.at) if args.margins else None
    if args.format == "json":
        doc = res.to_dict()
        if margins is not None:
            doc["marginal_effects"] = {"at": args.at, "values": margins}
        print(json.dumps(doc, indent=2))
    else:
        print(fit_report(res, spec_r, margins, title=args.model.upper()), end="")
    return EXIT_OK


# --- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="powerkit", description="Voting power indices, nucleolus and EU budget-share models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def render_opts(sp, formats=FORMATS):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--precision", type=int, default=3)

    sp = sub.add_parser("power", help="power indices of a game file")
    sp.add_argument("game")
    sp.add_argument("--index", default="ssi,nucleolus", help="comma-separated index names")
    sp.add_argument("--exact", action="store_true", help="also print exact rationals")
    render_opts(sp)
    sp.set_defaults(func=cmd_power)

    sp = sub.add_parser("eu-history", help="per-period Council tables vs the reference values")
    sp.add_argument("--periods", help="comma-separated first years, e.g. 1958,1995")
    sp.add_argument("--indices", default="ssi,nucleolus")
    sp.add_argument("--config", help="directory of council files")
    sp.add_argument("--reference", help="reference CSV (period,country,index,value)")
    sp.add_argument("--allowlist", help="allowlist CSV of known discrepancies")
    sp.add_argument("--tolerance", help="absolute tolerance (default 0.0005, 0.002 from 2003)")
    render_opts(sp)
    sp.set_defaults(func=cmd_eu_history)

    sp = sub.add_parser("panel", help="join budget shares with the power panel")
    sp.add_argument("--config", help="directory of council files")
    sp.add_argument("--shares", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--power", help="precomputed power panel CSV (skips recomputation)")
    sp.add_argument("--power-out", help="also write the computed power panel here")
    sp.set_defaults(func=cmd_panel)

    sp = sub.add_parser("fit", help="estimate one budget-share model")
    sp.add_argument("--panel", required=True)
    sp.add_argument("--dep", choices=("exp", "exp_adj"), default="exp")
    sp.add_argument("--power", choices=em.POWER_COLUMNS, default="p_ssi")
    sp.add_argument("--model", choices=tuple(MODELS), default="ols")
    sp.add_argument("--no-enlargement", action="store_true",
                    help="drop EU dummies and interactions from glm/fhetprob/ols_d")
    sp.add_argument("--cluster", choices=("auto", "country", "none"), default="auto")
    sp.add_argument("--margins", action="store_true")
    sp.add_argument("--at", choices=("average", "means"), default="average")
    render_opts(sp, FORMATS + ("json",))
    sp.set_defaults(func=cmd_fit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"powerkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, IsADirectoryError, json.JSONDecodeError, GameError) as exc:
        print(f"powerkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapabilityError, LPError, em.EstimationError, ValueError) as exc:
        print(f"powerkit: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
