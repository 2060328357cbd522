"""Budget-share regressions on the country-year power panel.

Estimators: pooled OLS, fractional probit (Bernoulli quasi-MLE, mean
``Phi(x b)``) and heteroskedastic fractional probit (mean
``Phi(x b / exp(z g))``).  The probit is the heteroskedastic routine with an
empty variance equation, so the two share one Newton loop.

Design columns are products of raw panel variables (``terms``); marginal
effects differentiate through those products, which is how an interaction
``power x EU25`` feeds into the effect of ``power``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import pandas as pd
from scipy import stats
from scipy.special import log_ndtr, ndtr

EU_PHASES = (  # dummy, first year, last year; EU9 (1976-80) is the baseline
    ("EU10", 1981, 1985),
    ("EU12", 1986, 1994),
    ("EU15", 1995, 2003),
    ("EU25", 2004, 2006),
    ("EU27", 2007, 2012),
)
EU_DUMMIES = tuple(p[0] for p in EU_PHASES)
TOBS = (32, 27, 18, 9, 6)
TOBS_DUMMIES = tuple(f"tobs{t}" for t in TOBS)
SHARE_COLUMNS = ("exp", "exp_adj", "agri")
POWER_COLUMNS = ("p_ssi", "p_nucl")
INTERCEPT = "_cons"
LNSIGMA = "lnsigma2:"
MAX_ABS_ZG = 30.0


class EstimationError(RuntimeError):
    pass


class ConvergenceError(EstimationError):
    def __init__(self, msg, iterations, grad_norm):
        super().__init__(f"{msg} (iterations={iterations}, gradient max-norm={grad_norm:.3g})")
        self.iterations = iterations
        self.grad_norm = grad_norm


# --- panel -------------------------------------------------------------------------

def eu_phase(year: int) -> str | None:
    for name, a, b in EU_PHASES:
        if a <= year <= b:
            return name
    return None


@dataclass(frozen=True)
class PanelDataset:
    frame: pd.DataFrame

    def __post_init__(self):
        self.validate()

    def __len__(self):
        return len(self.frame)

    def validate(self, share_tol: float = 0.02) -> None:
        df = self.frame
        for col in ("country", "year"):
            if col not in df:
                raise EstimationError(f"panel lacks column {col!r}")
        if df.duplicated(["country", "year"]).any():
            dup = df[df.duplicated(["country", "year"], keep=False)]
            raise EstimationError(f"duplicate country-years: {list(zip(dup.country, dup.year))[:5]}")
        for col in SHARE_COLUMNS + POWER_COLUMNS:
            if col in df:
                v = df[col].to_numpy(float)
                if np.isnan(v).any() or (v < 0).any() or (v > 1).any():
                    raise EstimationError(f"column {col!r} must hold shares in [0, 1]")
        if "exp" in df and len(df):
            sums = df.groupby("year")["exp"].sum()
            bad = sums[(sums - 1).abs() > share_tol]
            if len(bad):
                raise EstimationError(
                    f"exp does not sum to 1 within {share_tol} in years {list(bad.index)}")
        for col in EU_DUMMIES + TOBS_DUMMIES:
            if col in df and not df[col].isin([0, 1]).all():
                raise EstimationError(f"dummy {col!r} is not 0/1")

    @classmethod
    def from_csv(cls, path) -> "PanelDataset":
        return cls(pd.read_csv(path))

    def to_csv(self, path) -> None:
        self.frame.to_csv(path, index=False, float_format="%.12g")

    def with_dummies(self) -> "PanelDataset":
        df = self.frame.copy()
        for name, a, b in EU_PHASES:
            df[name] = ((df.year >= a) & (df.year <= b)).astype(int)
        counts = df.groupby("country")["year"].transform("count")
        for t, name in zip(TOBS, TOBS_DUMMIES):
            df[name] = (counts == t).astype(int)
        return PanelDataset(df)


def power_frame(rows) -> pd.DataFrame:
    """Power panel rows (``country, year, p_ssi, p_nucl``) as a float frame."""
    return pd.DataFrame({
        "country": [r.country for r in rows],
        "year": [r.year for r in rows],
        "p_ssi": [float(r.p_ssi) for r in rows],
        "p_nucl": [float(r.p_nucl) for r in rows],
    })


@dataclass(frozen=True)
class JoinReport:
    panel: PanelDataset | None  # None when rows fail to match
    missing_shares: list  # (country, year) with power but no shares row
    unmatched_shares: list  # shares rows outside the power panel

    @property
    def ok(self) -> bool:
        return not self.missing_shares and not self.unmatched_shares


def join_panel(shares: pd.DataFrame, power: pd.DataFrame) -> JoinReport:
    need = {"country", "year", "exp", "exp_adj", "agri", "income"}
    lacking = need - set(shares.columns)
    if lacking:
        raise EstimationError(f"shares file lacks columns {sorted(lacking)}")
    if shares.empty:
        raise EstimationError("shares file has no rows")
    m = power.merge(shares, on=["country", "year"], how="outer", indicator=True)
    missing = sorted(zip(m.loc[m._merge == "left_only", "country"],
                         m.loc[m._merge == "left_only", "year"].astype(int)))
    extra = sorted(zip(m.loc[m._merge == "right_only", "country"],
                       m.loc[m._merge == "right_only", "year"].astype(int)))
    if missing or extra:
        # a partial panel would fail the share checks for the wrong reason
        return JoinReport(None, missing, extra)
    both = m.drop(columns="_merge").sort_values(["year", "country"])
    both["year"] = both["year"].astype(int)
    return JoinReport(PanelDataset(both.reset_index(drop=True)).with_dummies(), missing, extra)


# --- design -------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    dependent: str = "exp"
    power: str = "p_ssi"
    include_enlargement: bool = False
    estimator: str = "ols"  # ols | glm_fprobit | fhetprob
    variance_covariates: tuple[str, ...] = ()
    cluster: str = "country"  # none | country

    def __post_init__(self):
        if self.dependent not in ("exp", "exp_adj"):
            raise ValueError(f"dependent must be exp or exp_adj, got {self.dependent!r}")
        if self.power not in POWER_COLUMNS:
            raise ValueError(f"power must be one of {POWER_COLUMNS}, got {self.power!r}")
        if self.estimator not in ("ols", "glm_fprobit", "fhetprob"):
            raise ValueError(f"unknown estimator {self.estimator!r}")
        if self.cluster not in ("none", "country"):
            raise ValueError(f"cluster must be none or country, got {self.cluster!r}")
        if self.estimator == "fhetprob":
            if not self.variance_covariates:
                object.__setattr__(self, "variance_covariates", TOBS_DUMMIES)
        elif self.variance_covariates:
            raise ValueError("variance covariates only apply to fhetprob")


@dataclass
class Design:
    y: np.ndarray
    X: np.ndarray
    names: list[str]
    terms: list[tuple[str, ...]]
    raw: dict[str, np.ndarray]
    cluster: np.ndarray | None = None
    Z: np.ndarray | None = None
    znames: list[str] = field(default_factory=list)
    zterms: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.y)

    def rebuild(self, raw: dict[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray | None]:
        X = _columns(raw, self.terms, self.n)
        Z = _columns(raw, self.zterms, self.n) if self.zterms else None
        return X, Z


def _columns(raw, terms, n) -> np.ndarray:
    cols = []
    for t in terms:
        c = np.ones(n)
        for v in t:
            c = c * raw[v]
        cols.append(c)
    return np.column_stack(cols) if cols else np.empty((n, 0))


def build_design(panel: PanelDataset, spec: ModelSpec) -> Design:
    df = panel.frame
    if len(df) == 0:
        raise EstimationError("empty panel")
    p = spec.power
    terms: list[tuple[str, ...]] = [(p,), ("agri",), ("income",)]
    if spec.include_enlargement:
        terms += [(p, d) for d in EU_DUMMIES] + [(d,) for d in EU_DUMMIES]
    zterms: list[tuple[str, ...]] = []
    if spec.estimator == "fhetprob":
        terms += [(t,) for t in spec.variance_covariates]
        zterms = [(t,) for t in spec.variance_covariates]
    terms.append(())
    needed = {spec.dependent} | {v for t in terms + zterms for v in t}
    missing = sorted(needed - set(df.columns))
    if missing:
        hint = " (fhetprob needs the tobs dummies)" if set(missing) & set(TOBS_DUMMIES) else ""
        raise EstimationError(f"panel lacks columns {missing}{hint}")
    n = len(df)
    raw = {v: df[v].to_numpy(float) for v in needed - {spec.dependent}}
    X = _columns(raw, terms, n)
    names = ["_x_".join(t) if t else INTERCEPT for t in terms]
    for j, nm in enumerate(names):
        if nm != INTERCEPT and not X[:, j].any():
            raise EstimationError(f"column {nm!r} is identically zero")
    Z = _columns(raw, zterms, n) if zterms else None
    if Z is not None:
        for j, t in enumerate(zterms):
            if not Z[:, j].any():
                raise EstimationError(f"variance covariate {t[0]!r} is identically zero")
    cluster = df["country"].to_numpy() if spec.cluster == "country" else None
    return Design(df[spec.dependent].to_numpy(float), X, names, terms, raw, cluster, Z,
                  [LNSIGMA + t[0] for t in zterms], zterms)


# --- results ------------------------------------------------------------------------

def stars(p: float) -> str:
    """Significance marks: ``+`` p < 0.10, ``*`` p < 0.05, ``**`` p < 0.01."""
    return "**" if p < 0.01 else "*" if p < 0.05 else "+" if p < 0.10 else ""


@dataclass
class FitResult:
    estimator: str
    names: list[str]
    coef: np.ndarray
    vcov: np.ndarray
    n_obs: int
    vcov_type: str
    df_resid: float | None  # t reference for OLS; None means normal
    residuals: np.ndarray
    fitted: np.ndarray
    r2_adj: float | None = None
    loglik: float | None = None
    n_mean: int = 0  # leading coefficients belonging to the mean equation
    iterations: int = 0
    grad_norm: float = 0.0
    n_clusters: int | None = None
    gamma_fixed: np.ndarray | None = None
    design: Design | None = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.coef)

    @property
    def se(self) -> np.ndarray:
        return np.sqrt(np.clip(np.diag(self.vcov), 0, None))

    @property
    def stat(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coef / self.se

    @property
    def pvalues(self) -> np.ndarray:
        s = np.abs(self.stat)
        if self.df_resid is None:
            return 2 * stats.norm.sf(s)
        return 2 * stats.t.sf(s, self.df_resid)

    @property
    def stars(self) -> list[str]:
        return [stars(p) for p in self.pvalues]

    @property
    def aic(self) -> float | None:
        return None if self.loglik is None else -2 * self.loglik + 2 * self.k

    @property
    def bic(self) -> float | None:
        return None if self.loglik is None else -2 * self.loglik + self.k * math.log(self.n_obs)

    def wald_slopes(self) -> tuple[float, int, float]:
        """Joint Wald test that every mean-equation slope is zero: (chi2, df, p)."""
        idx = [j for j in range(self.n_mean) if self.names[j] != INTERCEPT]
        b = self.coef[idx]
        V = self.vcov[np.ix_(idx, idx)]
        w = float(b @ np.linalg.pinv(V) @ b)
        df = int(np.linalg.matrix_rank(V))
        return w, df, float(stats.chi2.sf(w, df))

    def params(self) -> dict[str, float]:
        return dict(zip(self.names, map(float, self.coef)))

    def to_dict(self) -> dict:
        out = {
            "estimator": self.estimator,
            "n_obs": self.n_obs,
            "vcov_type": self.vcov_type,
            "coefficients": [
                {"name": nm, "coef": float(b), "se": float(s), "p": float(p), "stars": st}
                for nm, b, s, p, st in zip(self.names, self.coef, self.se, self.pvalues, self.stars)
            ],
            "vcov": self.vcov.tolist(),
        }
        if self.r2_adj is not None:
            out["r2_adj"] = self.r2_adj
        if self.loglik is not None:
            out.update(loglik=self.loglik, aic=self.aic, bic=self.bic)
        if self.estimator != "ols":
            w, df, p = self.wald_slopes()
            out.update(chi2=w, chi2_df=df, chi2_p=p, iterations=self.iterations,
                       grad_norm=self.grad_norm)
        return out


def _meat(scores: np.ndarray, cluster) -> tuple[np.ndarray, int]:
    if cluster is None:
        return scores.T @ scores, len(scores)
    _, inv = np.unique(cluster, return_inverse=True)
    G = inv.max() + 1
    sums = np.zeros((G, scores.shape[1]))
    np.add.at(sums, inv, scores)
    return sums.T @ sums, G


def sandwich(bread_inv: np.ndarray, scores: np.ndarray, cluster=None,
             small_sample: bool = True) -> tuple[np.ndarray, int]:
    """``A^-1 B A^-1`` with ``B`` summed within clusters (each row its own
    cluster when ``cluster`` is None).  The finite-sample factor is
    ``G/(G-1) * (n-1)/(n-k)``."""
    n, k = scores.shape
    B, G = _meat(scores, cluster)
    V = bread_inv @ B @ bread_inv
    if small_sample:
        V = V * (G / (G - 1)) * ((n - 1) / (n - k))
    return (V + V.T) / 2, G


def _check_rank(X: np.ndarray, names: Sequence[str]) -> None:
    _, R = np.linalg.qr(X)
    d = np.abs(np.diag(R))
    tol = d.max() * max(X.shape) * np.finfo(float).eps if len(d) else 0
    for j in np.flatnonzero(d <= tol):
        raise EstimationError(f"design is rank deficient at column {names[j]!r}")


def _vcov_kind(cluster, vcov, unclustered="robust"):
    if vcov == "auto":
        return "cluster" if cluster is not None else unclustered
    if vcov not in ("classical", "robust", "cluster"):
        raise ValueError(f"unknown vcov type {vcov!r}")
    if vcov == "cluster" and cluster is None:
        raise ValueError("cluster vcov needs cluster ids")
    return vcov


# --- OLS --------------------------------------------------------------------------

def fit_ols(y, X, names: Sequence[str] | None = None, cluster=None,
            vcov: str = "auto", small_sample: bool = True) -> FitResult:
    y = np.asarray(y, float)
    X = np.asarray(X, float)
    n, k = X.shape
    names = list(names) if names is not None else [f"x{j}" for j in range(k)]
    if n <= k:
        raise EstimationError(f"{n} observations for {k} coefficients")
    _check_rank(X, names)
    Q, R = np.linalg.qr(X)
    beta = np.linalg.solve(R, Q.T @ y)
    e = y - X @ beta
    Rinv = np.linalg.inv(R)
    XtXi = Rinv @ Rinv.T
    kind = _vcov_kind(cluster, vcov, unclustered="classical")
    G = None
    if kind == "classical":
        V = XtXi * (e @ e) / (n - k)
        dfr = n - k
    else:
        V, G = sandwich(XtXi, X * e[:, None], cluster if kind == "cluster" else None, small_sample)
        dfr = G - 1 if kind == "cluster" else n - k
    tss = ((y - y.mean()) ** 2).sum()
    ssr = e @ e
    r2 = 1 - ssr / tss if tss > 0 else 1.0
    r2_adj = 1 - (1 - r2) * (n - 1) / (n - k)
    # Gaussian log-likelihood at the ML variance; AIC/BIC count the k coefficients
    ll = -0.5 * n * (math.log(2 * math.pi) + math.log(ssr / n) + 1) if ssr > 0 else math.inf
    return FitResult("ols", names, beta, V, n, kind, dfr, e, X @ beta, r2_adj=float(r2_adj),
                     loglik=ll, n_mean=k, n_clusters=G if kind == "cluster" else None)


# --- fractional probit family ----------------------------------------------------------

def _mills(t):
    """phi(t) / Phi(t), stable in both tails."""
    return np.exp(stats.norm.logpdf(t) - log_ndtr(t))


def _index(X, Z, beta, gamma):
    xb = X @ beta
    if Z is None or Z.shape[1] == 0:
        return xb, xb, np.zeros(len(xb))
    zg = Z @ gamma
    return xb / np.exp(zg), xb, zg


def qll(y, eta) -> np.ndarray:
    """Per-observation Bernoulli quasi-log-likelihood at index ``eta``."""
    return y * log_ndtr(eta) + (1 - y) * log_ndtr(-eta)


def _derivs(y, eta):
    """First and second derivatives of the quasi-log-likelihood in eta."""
    lp, lm = _mills(eta), _mills(-eta)
    s = y * lp - (1 - y) * lm
    h = -y * lp * (eta + lp) - (1 - y) * lm * (lm - eta)
    return s, h


def qmle_parts(y, X, Z, beta, gamma, with_hessian=True):
    """(loglik, per-observation scores, Hessian) in the parameter order
    ``beta`` then ``gamma``."""
    eta, xb, zg = _index(X, Z, beta, gamma)
    ll = float(qll(y, eta).sum())
    s, h = _derivs(y, eta)
    inv_sig = np.exp(-zg)
    has_z = Z is not None and Z.shape[1] > 0
    # d eta / d beta = x e^{-zg};  d eta / d gamma = -eta z
    Jb = X * inv_sig[:, None]
    J = np.hstack([Jb, -eta[:, None] * Z]) if has_z else Jb
    scores = s[:, None] * J
    if not with_hessian:
        return ll, scores, None
    H = (J * h[:, None]).T @ J
    if has_z:
        kb = X.shape[1]
        # second derivatives of eta: beta-gamma block -x z' e^{-zg}, gamma-gamma eta z z'
        bg = -(Jb * s[:, None]).T @ Z
        gg = (Z * (s * eta)[:, None]).T @ Z
        H[:kb, kb:] += bg
        H[kb:, :kb] += bg.T
        H[kb:, kb:] += gg
    return ll, scores, H


def _newton(y, X, Z, beta, gamma, free_gamma, max_iter, tol):
    kb = X.shape[1]

    def unpack(theta):
        return (theta[:kb], theta[kb:]) if free_gamma else (theta, gamma)

    def evaluate(theta):
        b, g = unpack(theta)
        ll, S, H = qmle_parts(y, X, Z, b, g)
        if not free_gamma:
            H = H[:kb, :kb]
            S = S[:, :kb]
        return ll, S, H

    theta = np.concatenate([beta, gamma]) if free_gamma else beta.copy()
    ll, S, H = evaluate(theta)
    it = 0
    while True:
        g = S.sum(axis=0)
        gnorm = float(np.abs(g).max())
        if gnorm < tol:
            return theta, ll, S, H, it, gnorm
        if it >= max_iter:
            raise ConvergenceError("quasi-MLE did not converge", it, gnorm)
        it += 1
        A = -H
        lam = 0.0
        for _ in range(40):
            try:
                L = np.linalg.cholesky(A + lam * np.eye(len(A)))
                break
            except np.linalg.LinAlgError:
                lam = max(lam * 10, 1e-8 * max(1.0, float(np.abs(np.diag(A)).max())))
        else:
            raise ConvergenceError("Hessian could not be regularised", it, gnorm)
        d = np.linalg.solve(L.T, np.linalg.solve(L, g))
        step = 1.0
        while True:
            cand = theta + step * d
            b, gm = unpack(cand)
            ok = Z is None or Z.shape[1] == 0 or np.abs(Z @ gm).max() <= MAX_ABS_ZG
            if ok:
                ll_c, S_c, H_c = evaluate(cand)
                if np.isfinite(ll_c) and ll_c >= ll - 1e-12 * max(1.0, abs(ll)):
                    break
            step /= 2
            if step < 1e-14:
                raise ConvergenceError("step-halving failed to improve the quasi-likelihood",
                                       it, gnorm)
        theta, ll, S, H = cand, ll_c, S_c, H_c


def _start_beta(y, X):
    # OLS of the probit-transformed mean, clipped away from 0 and 1
    t = stats.norm.ppf(np.clip(y, 1e-4, 1 - 1e-4))
    b, *_ = np.linalg.lstsq(X, t, rcond=None)
    return b


def _qmle_fit(estimator, y, X, Z, names, znames, cluster, vcov, small_sample,
              gamma_fixed, max_iter, tol, start) -> FitResult:
    y = np.asarray(y, float)
    X = np.asarray(X, float)
    if ((y < 0) | (y > 1)).any() or np.isnan(y).any():
        raise EstimationError("dependent variable must lie in [0, 1]")
    n, kb = X.shape
    names = list(names) if names is not None else [f"x{j}" for j in range(kb)]
    _check_rank(X, names)
    has_z = Z is not None and Z.shape[1] > 0
    kz = Z.shape[1] if has_z else 0
    if has_z:
        znames = list(znames) if znames is not None else [f"{LNSIGMA}z{j}" for j in range(kz)]
    free_gamma = has_z and gamma_fixed is None
    gamma0 = np.zeros(kz) if gamma_fixed is None else np.asarray(gamma_fixed, float)
    beta0 = _start_beta(y, X) if start is None else np.asarray(start[:kb], float)
    if free_gamma and start is not None and len(start) == kb + kz:
        gamma0 = np.asarray(start[kb:], float)
    theta, ll, S, H, it, gnorm = _newton(y, X, Z, beta0, gamma0, free_gamma, max_iter, tol)
    Ainv = np.linalg.inv(-H)
    kind = _vcov_kind(cluster, vcov)
    G = None
    if kind == "classical":
        V = (Ainv + Ainv.T) / 2
    else:
        V, G = sandwich(Ainv, S, cluster if kind == "cluster" else None, small_sample)
    beta = theta[:kb]
    gamma = theta[kb:] if free_gamma else gamma0
    eta, _, _ = _index(X, Z, beta, gamma)
    mu = ndtr(eta)
    all_names = names + (znames if free_gamma else [])
    return FitResult(estimator, all_names, theta, V, n, kind, None, y - mu, mu, loglik=ll,
                     n_mean=kb, iterations=it, grad_norm=gnorm,
                     n_clusters=G if kind == "cluster" else None,
                     gamma_fixed=None if free_gamma else gamma)


def fit_fractional_probit(y, X, names=None, cluster=None, vcov="auto", small_sample=True,
                          max_iter=200, tol=1e-9, start=None) -> FitResult:
    return _qmle_fit("glm_fprobit", y, X, None, names, None, cluster, vcov, small_sample,
                     None, max_iter, tol, start)


def fit_fhetprob(y, X, Z, names=None, znames=None, cluster=None, vcov="auto",
                 small_sample=True, gamma_fixed=None, max_iter=200, tol=1e-9,
                 start=None) -> FitResult:
    """Heteroskedastic fractional probit.  ``Z`` carries no intercept; with
    ``gamma_fixed`` the variance equation is held at that value and only
    the mean coefficients are estimated."""
    Z = np.asarray(Z, float)
    if Z.ndim != 2 or Z.shape[1] == 0:
        raise EstimationError("fhetprob needs at least one variance covariate")
    if np.any(np.all(Z == 1, axis=0)):
        raise EstimationError("variance covariates must not include an intercept")
    return _qmle_fit("fhetprob", y, X, Z, names, znames, cluster, vcov, small_sample,
                     gamma_fixed, max_iter, tol, start)


def fit(design: Design, spec: ModelSpec, **kw) -> FitResult:
    if spec.estimator == "ols":
        res = fit_ols(design.y, design.X, design.names, design.cluster, **kw)
    elif spec.estimator == "glm_fprobit":
        res = fit_fractional_probit(design.y, design.X, design.names, design.cluster, **kw)
    else:
        res = fit_fhetprob(design.y, design.X, design.Z, design.names, design.znames,
                           design.cluster, **kw)
    res.design = design
    return res


# --- predictions and marginal effects -----------------------------------------------------

def _split(fit: FitResult):
    beta = fit.coef[:fit.n_mean]
    if fit.gamma_fixed is not None:
        return beta, fit.gamma_fixed
    gamma = fit.coef[fit.n_mean:]
    return beta, gamma


def predict(fit: FitResult, X, Z=None) -> np.ndarray:
    beta, gamma = _split(fit)
    if fit.estimator == "ols":
        return X @ beta
    eta, _, _ = _index(X, Z, beta, gamma)
    return ndtr(eta)


def _dcols(raw, terms, n, v) -> np.ndarray:
    """d column / d raw variable ``v`` for every product term."""
    cols = []
    for t in terms:
        c = np.zeros(n)
        for pos, name in enumerate(t):
            if name != v:
                continue
            part = np.ones(n)
            for q, other in enumerate(t):
                if q != pos:
                    part = part * raw[other]
            c = c + part
        cols.append(c)
    return np.column_stack(cols) if cols else np.empty((n, 0))


def marginal_effects(fit: FitResult, design: Design | None = None, at: str = "average",
                     variables: Sequence[str] | None = None) -> dict[str, float]:
    """Effect of each raw regressor on the fitted mean.

    ``at="average"`` averages the observation-level derivatives (AME);
    ``at="means"`` evaluates one derivative at the sample means of the raw
    variables.  Interactions are differentiated through, so a variable's
    effect sums its own coefficient and every interaction it enters.
    """
    design = design or fit.design
    if design is None:
        raise EstimationError("marginal effects need the design the model was fitted on")
    if at not in ("average", "means"):
        raise ValueError(f"at must be 'average' or 'means', got {at!r}")
    allvars = list(dict.fromkeys(v for t in design.terms + design.zterms for v in t))
    if variables is None:
        variables = allvars
    for v in variables:
        if v not in allvars:
            raise KeyError(f"unknown variable {v!r}")
    raw = design.raw
    n = design.n
    if at == "means":
        raw = {v: np.array([a.mean()]) for v, a in raw.items()}
        n = 1
    X = _columns(raw, design.terms, n)
    Z = _columns(raw, design.zterms, n) if design.zterms else None
    beta, gamma = _split(fit)
    out = {}
    for v in variables:
        dX = _dcols(raw, design.terms, n, v)
        if fit.estimator == "ols":
            out[v] = float((dX @ beta).mean())
            continue
        eta, _, zg = _index(X, Z, beta, gamma)
        deta = (dX @ beta) * np.exp(-zg)
        if Z is not None and Z.shape[1]:
            dZ = _dcols(raw, design.zterms, n, v)
            deta = deta - eta * (dZ @ gamma)
        out[v] = float((stats.norm.pdf(eta) * deta).mean())
    return out
