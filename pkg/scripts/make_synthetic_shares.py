"""Write a synthetic budget-shares CSV covering every Council country-year.

    python3 scripts/make_synthetic_shares.py --out shares.csv [--power power.csv] [--seed 0]

Without --power the 1976-2012 power panel is computed first (a few minutes,
dominated by the EU25/EU27 nucleoli) and can be saved with --power-out.
"""

import argparse

import pandas as pd

from powerkit.econometrics import power_frame
from powerkit.eu import build_power_panel, load_council_configs, write_power_panel
from powerkit.synthetic import synthetic_shares


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--power")
    ap.add_argument("--power-out")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if args.power:
        power = pd.read_csv(args.power)
    else:
        rows = build_power_panel(load_council_configs())
        if args.power_out:
            write_power_panel(rows, args.power_out)
        power = power_frame(rows)
    shares = synthetic_shares(power, seed=args.seed)
    shares.to_csv(args.out, index=False, float_format="%.12g")
    print(f"{len(shares)} rows written to {args.out}")


if __name__ == "__main__":
    main()
