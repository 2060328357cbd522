"""Synthetic budget-share files for exercising the estimation pipeline.

The generated shares follow a fractional probit in power, agricultural
share and relative income, then are rescaled so each year sums to one.
They carry no information about actual EU budgets.
"""

from __future__ import annotations

import numpy as np
import pandas as pd
from scipy.special import ndtr


def synthetic_shares(power: pd.DataFrame, seed: int = 0, power_col: str = "p_ssi",
                     coef=(-2.0, 5.0, 1.5, 0.2), noise: float = 0.15) -> pd.DataFrame:
    """Shares table (country, year, exp, exp_adj, agri, income) for every
    country-year in ``power``; ``coef`` is (intercept, power, agri, income)."""
    rng = np.random.default_rng(seed)
    df = power[["country", "year"]].copy().reset_index(drop=True)
    countries = sorted(df.country.unique())
    base_agri = dict(zip(countries, rng.uniform(0.5, 6.0, len(countries))))
    base_inc = dict(zip(countries, rng.lognormal(0.0, 0.35, len(countries))))
    n = len(df)
    raw_agri = np.array([base_agri[c] for c in df.country]) * rng.lognormal(0, 0.1, n)
    df["agri"] = raw_agri / df.assign(a=raw_agri).groupby("year")["a"].transform("sum")
    df["income"] = np.array([base_inc[c] for c in df.country]) * rng.lognormal(0, 0.05, n)
    b0, bp, ba, bi = coef
    eta = b0 + bp * power[power_col].to_numpy(float) + ba * df.agri + bi * df.income
    raw = ndtr(eta + rng.normal(0, noise, n))
    df["exp"] = raw / df.assign(r=raw).groupby("year")["r"].transform("sum")
    # adjusted shares: a small multiplicative perturbation, renormalised per year
    adj = df["exp"].to_numpy().copy() * rng.uniform(0.97, 1.03, n)
    df["exp_adj"] = adj / df.assign(r=adj).groupby("year")["r"].transform("sum")
    return df[["country", "year", "exp", "exp_adj", "agri", "income"]]
