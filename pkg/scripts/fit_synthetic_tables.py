"""The four-column estimator layout (OLS, OLS_d, GLM, FHETPROB) on a
synthetic panel, for both power indices.  The data are simulated, so the
numbers say nothing about the actual EU budget.

    python3 scripts/fit_synthetic_tables.py --panel panel.csv [--margins]
"""

import argparse

from powerkit import econometrics as em
from powerkit.cli import MODELS, fit_report
from powerkit.report import RenderSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--panel", required=True)
    ap.add_argument("--dep", default="exp", choices=("exp", "exp_adj"))
    ap.add_argument("--margins", action="store_true")
    args = ap.parse_args()
    panel = em.PanelDataset.from_csv(args.panel)
    if "EU10" not in panel.frame:
        panel = panel.with_dummies()
    for power in em.POWER_COLUMNS:
        for model, (estimator, dummies, clustered) in MODELS.items():
            spec = em.ModelSpec(args.dep, power, dummies, estimator,
                                cluster="country" if clustered else "none")
            res = em.fit(em.build_design(panel, spec), spec)
            me = em.marginal_effects(res) if args.margins else None
            print(fit_report(res, RenderSpec("text", 3), me, title=f"{model.upper()} {power}"))


if __name__ == "__main__":
    main()
