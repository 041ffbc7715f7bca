"""OLS and zero-inflated beta regression with diagnostics.

The response is the pairwise degree of collaboration in [0, 1); explanatory
columns are min-max rescaled so coefficients are comparable. The
zero-inflated beta model mixes a point mass at zero (logit-linked zero
probability) with a beta density on (0, 1) whose mean is logit-linked and
whose precision is a single free parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.special import digamma, expit, gammaln, log_expit, logit

from .distances import FEATURE_COLUMNS, PairFeatures
from .optimize import fd_hessian, maximize, solve_spd
from .trends import significance_stars

DEFAULT_PERIODS = (
    ("Embryo", 1950, 1999),
    ("Stable", 2000, 2007),
    ("Machine Learning", 2008, 2013),
    ("Deep learning", 2014, 2019),
)


@dataclass(frozen=True)
class Coefficient:
    name: str
    estimate: float
    se: float
    p_value: float

    @property
    def stars(self) -> str:
        return significance_stars(self.p_value)


@dataclass
class FitResult:
    model: str
    coefficients: list[Coefficient]
    log_likelihood: float
    aic: float
    pseudo_r2: float
    n_rows: int
    converged: bool
    zero_coefficients: list[Coefficient] | None = None
    phi: float | None = None
    log_phi_se: float | None = None
    warnings: list[str] = field(default_factory=list)


@dataclass
class DesignMatrix:
    columns: tuple[str, ...]
    x: np.ndarray  # n rows, one column per name, min-max rescaled to [0, 1]
    y: np.ndarray
    n_masked_rows: int = 0
    dropped_columns: tuple[str, ...] = ()


def minmax_rescale(column: np.ndarray) -> np.ndarray:
    """(x - min) / (max - min); a constant column has no scale and is an error."""
    col = np.asarray(column, dtype=float)
    lo, hi = col.min(), col.max()
    if hi == lo:
        raise ValueError("degenerate_column")
    return (col - lo) / (hi - lo)


def build_design(
    pair_features: list[PairFeatures],
    columns: tuple[str, ...] = FEATURE_COLUMNS,
    response_scale: float = 1.0,
) -> DesignMatrix:
    """Assemble the regression table from pair features.

    Rows with any masked indicator among the selected columns are excluded
    (listwise deletion); degenerate (constant) columns are dropped and
    reported on the result.
    """
    usable = [pf for pf in pair_features if not (set(columns) & pf.missing)]
    n_masked = len(pair_features) - len(usable)
    if not usable:
        raise ValueError("no usable rows after masking")
    y = np.array([pf.dic for pf in usable], dtype=float) * response_scale

    kept_names: list[str] = []
    kept_cols: list[np.ndarray] = []
    dropped: list[str] = []
    for name in columns:
        raw = np.array([pf.features[name] for pf in usable], dtype=float)
        try:
            kept_cols.append(minmax_rescale(raw))
            kept_names.append(name)
        except ValueError:
            dropped.append(name)
    if not kept_cols:
        raise ValueError("no usable columns after dropping degenerate ones")
    return DesignMatrix(
        columns=tuple(kept_names),
        x=np.column_stack(kept_cols),
        y=y,
        n_masked_rows=n_masked,
        dropped_columns=tuple(dropped),
    )


def _with_intercept(x: np.ndarray) -> np.ndarray:
    return np.column_stack([np.ones(x.shape[0]), x])


def _gaussian_loglik(residuals: np.ndarray) -> float:
    n = residuals.size
    sigma2 = float(residuals @ residuals) / n
    if sigma2 <= 0:
        sigma2 = np.finfo(float).tiny
    return -0.5 * n * (math.log(2.0 * math.pi * sigma2) + 1.0)


def fit_ols(design: DesignMatrix) -> FitResult:
    """Ordinary least squares via the normal equations.

    Standard errors use the unbiased residual variance; the log-likelihood is
    Gaussian at the MLE variance; AIC counts coefficients, intercept, and the
    variance parameter.
    """
    x = _with_intercept(design.x)
    y = design.y
    n, k = x.shape
    if n <= k:
        raise ValueError("not enough rows for the number of columns")
    xtx = x.T @ x
    try:
        beta = solve_spd(xtx, x.T @ y)
    except ValueError:
        worst = max(vif(design).items(), key=lambda kv: kv[1])
        raise ValueError(f"collinear_design: {worst[0]}") from None
    residuals = y - x @ beta
    rss = float(residuals @ residuals)
    dof = n - k
    sigma2_hat = rss / dof if dof > 0 else float("nan")
    try:
        cov = sigma2_hat * np.linalg.inv(xtx)
        ses = np.sqrt(np.maximum(np.diag(cov), 0.0))
    except np.linalg.LinAlgError:
        ses = np.full(k, float("nan"))
    tvals = np.divide(beta, ses, out=np.full(k, np.nan), where=ses > 0)
    pvals = 2.0 * stats.t.sf(np.abs(tvals), df=dof)
    tss = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - rss / tss if tss > 0 else float("nan")
    loglik = _gaussian_loglik(residuals)
    n_params = k + 1  # + variance
    names = ("intercept",) + design.columns
    return FitResult(
        model="OLS",
        coefficients=[
            Coefficient(names[j], float(beta[j]), float(ses[j]), float(pvals[j]))
            for j in range(k)
        ],
        log_likelihood=loglik,
        aic=-2.0 * loglik + 2.0 * n_params,
        pseudo_r2=r2,
        n_rows=n,
        converged=True,
    )


def _split_params(params: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, float]:
    return params[:p], params[p : 2 * p], float(params[-1])


def zibeta_loglik(params: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    """Log-likelihood of the zero-inflated beta model.

    ``params`` stacks the zero-component coefficients, the beta-mean
    coefficients (both including intercept), and log(precision). ``x`` must
    already include the intercept column.
    """
    if np.any((y < 0) | (y > 1)):
        raise ValueError("response outside [0, 1]")
    if np.any(y == 1):
        raise ValueError("one_inflation_unsupported")
    p = x.shape[1]
    gamma, beta, log_phi = _split_params(np.asarray(params, dtype=float), p)
    if not math.isfinite(log_phi) or log_phi > 700:
        return -math.inf
    phi = math.exp(log_phi)
    z0 = x @ gamma
    zero = y == 0
    total = float(log_expit(z0[zero]).sum())

    if np.any(~zero):
        xs, ys = x[~zero], y[~zero]
        mu = expit(xs @ beta)
        a = mu * phi
        b = (1.0 - mu) * phi
        if np.any(a <= 0) or np.any(b <= 0):
            return -math.inf
        total += float(log_expit(-z0[~zero]).sum())
        total += float(
            (
                gammaln(phi)
                - gammaln(a)
                - gammaln(b)
                + (a - 1.0) * np.log(ys)
                + (b - 1.0) * np.log1p(-ys)
            ).sum()
        )
    return total if math.isfinite(total) else -math.inf


def zibeta_gradient(params: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Analytic gradient of zibeta_loglik in the same parameter layout."""
    p = x.shape[1]
    gamma, beta, log_phi = _split_params(np.asarray(params, dtype=float), p)
    phi = math.exp(log_phi)
    z0 = x @ gamma
    pi = expit(z0)
    zero = y == 0

    g_gamma = x[zero].T @ (1.0 - pi[zero]) - x[~zero].T @ pi[~zero]

    xs, ys = x[~zero], y[~zero]
    mu = expit(xs @ beta)
    a = mu * phi
    b = (1.0 - mu) * phi
    ystar = np.log(ys) - np.log1p(-ys)
    dl_dmu = phi * (ystar - digamma(a) + digamma(b))
    g_beta = xs.T @ (dl_dmu * mu * (1.0 - mu))
    dl_dphi = (
        digamma(phi)
        - mu * digamma(a)
        - (1.0 - mu) * digamma(b)
        + mu * np.log(ys)
        + (1.0 - mu) * np.log1p(-ys)
    )
    g_logphi = phi * float(dl_dphi.sum())
    return np.concatenate([g_gamma, g_beta, [g_logphi]])


def _logistic_start(x: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, list[str]]:
    """Newton (IRLS) fit of the zero indicator with a small ridge; coefficients
    are capped so separated data yields a bounded start with a warning."""
    warnings: list[str] = []
    gamma = np.zeros(x.shape[1])
    for _ in range(30):
        pi = expit(x @ gamma)
        w = np.maximum(pi * (1.0 - pi), 1e-10)
        hess = x.T @ (x * w[:, None]) + 1e-8 * np.eye(x.shape[1])
        step = np.linalg.solve(hess, x.T @ (z - pi))
        gamma = gamma + step
        if np.max(np.abs(gamma)) > 30.0:
            gamma = np.clip(gamma, -30.0, 30.0)
            warnings.append("zero_component_boundary")
            break
        if np.max(np.abs(step)) < 1e-10:
            break
    return gamma, warnings


def fit_zibeta(
    design: DesignMatrix,
    g_tol: float = 1e-5,
    max_iter: int = 10_000,
) -> FitResult:
    """Maximum-likelihood fit of the zero-inflated beta model.

    Start values: logistic fit for the zero component, OLS on the logit of
    nonzero responses for the mean component, and method-of-moments
    precision. Standard errors come from the inverse negative
    finite-difference Hessian at the optimum (Wald).
    """
    x = _with_intercept(design.x)
    y = design.y
    n, p = x.shape
    if np.any(y == 1):
        raise ValueError("one_inflation_unsupported")
    zero = y == 0
    if not zero.any() or zero.all():
        raise ValueError("response needs at least one zero and one nonzero value")

    warnings: list[str] = []
    gamma0, logi_warnings = _logistic_start(x, zero.astype(float))
    warnings.extend(logi_warnings)

    xs, ys = x[~zero], y[~zero]
    yt = logit(np.clip(ys, 1e-10, 1.0 - 1e-10))
    beta0, *_ = np.linalg.lstsq(xs, yt, rcond=None)
    mu0 = expit(xs @ beta0)
    resid_var = float(np.var(ys - mu0))
    if resid_var <= 0:
        resid_var = 1e-6
    phi0 = max(float(np.mean(mu0 * (1.0 - mu0))) / resid_var - 1.0, 0.5)
    start = np.concatenate([gamma0, beta0, [math.log(phi0)]])

    result = maximize(
        lambda params: zibeta_loglik(params, x, y),
        start,
        gradient=lambda params: zibeta_gradient(params, x, y),
        g_tol=g_tol,
        f_tol=1e-12,
        max_iter=max_iter,
    )
    params = result.x
    if np.max(np.abs(params[:-1])) > 25.0:
        warnings.append("parameter_boundary")

    ses = np.full(params.size, float("nan"))
    try:
        hess = fd_hessian(lambda q: zibeta_loglik(q, x, y), params)
        cov = np.linalg.inv(-hess)
        diag = np.diag(cov)
        if np.any(diag <= 0):
            warnings.append("standard_errors_unavailable")
        else:
            ses = np.sqrt(diag)
    except (ValueError, np.linalg.LinAlgError):
        warnings.append("standard_errors_unavailable")

    zvals = np.divide(params, ses, out=np.full(params.size, np.nan), where=ses > 0)
    pvals = 2.0 * stats.norm.sf(np.abs(zvals))

    gamma, beta, log_phi = _split_params(params, p)
    pi = expit(x @ gamma)
    mu = expit(x @ beta)
    fitted = (1.0 - pi) * mu
    if np.std(fitted) > 0 and np.std(y) > 0:
        pseudo_r2 = float(np.corrcoef(fitted, y)[0, 1]) ** 2
    else:
        pseudo_r2 = float("nan")

    n_params = 2 * p + 1
    loglik = result.value
    names = ("intercept",) + design.columns
    return FitResult(
        model="ZIBeta",
        coefficients=[
            Coefficient(names[j], float(beta[j]), float(ses[p + j]), float(pvals[p + j]))
            for j in range(p)
        ],
        zero_coefficients=[
            Coefficient(names[j], float(gamma[j]), float(ses[j]), float(pvals[j]))
            for j in range(p)
        ],
        phi=math.exp(log_phi),
        log_phi_se=float(ses[-1]),
        log_likelihood=loglik,
        aic=-2.0 * loglik + 2.0 * n_params,
        pseudo_r2=pseudo_r2,
        n_rows=n,
        converged=result.converged,
        warnings=warnings,
    )


def vif(design: DesignMatrix) -> dict[str, float]:
    """Variance inflation factor per column: 1 / (1 - R^2) from regressing the
    column on all other columns plus an intercept. Perfect collinearity
    reports infinity."""
    x = design.x
    n, k = x.shape
    if k < 2:
        raise ValueError("vif needs at least 2 columns")
    out: dict[str, float] = {}
    for j, name in enumerate(design.columns):
        target = x[:, j]
        others = _with_intercept(np.delete(x, j, axis=1))
        coef, *_ = np.linalg.lstsq(others, target, rcond=None)
        resid = target - others @ coef
        tss = float(((target - target.mean()) ** 2).sum())
        if tss <= 0:
            out[name] = float("inf")
            continue
        r2 = 1.0 - float(resid @ resid) / tss
        out[name] = float("inf") if r2 >= 1.0 - 1e-12 else 1.0 / (1.0 - r2)
    return out


@dataclass
class PeriodReport:
    label: str
    start_year: int
    end_year: int
    n_papers: int
    n_international: int
    intl_share: float
    ols: FitResult | None
    zibeta: FitResult | None
    skipped: dict[str, str] = field(default_factory=dict)


def validate_partition(partition: tuple[tuple[str, int, int], ...]) -> None:
    """Period ranges must be disjoint and cover 1950-2019."""
    spans = sorted((start, end, label) for label, start, end in partition)
    cursor = 1950
    for start, end, label in spans:
        if start != cursor or end < start:
            raise ValueError(f"partition ranges must be disjoint and contiguous (at {label})")
        cursor = end + 1
    if cursor != 2020:
        raise ValueError("partition must cover 1950-2019")
