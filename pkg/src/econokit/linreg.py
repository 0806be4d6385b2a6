"""OLS with homoskedastic inference, information criteria and F-tests.

Least squares is solved by a column-pivoted QR decomposition. Tail
probabilities of the t and F distributions go through the regularized
incomplete beta function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg
import scipy.special

from .errors import EconokitError, ExactFitError, RankDeficientError
from .series import QuarterIndex, Series

Z95 = 1.96
RANK_TOL = 1e-10
# ssr below this fraction of y'y counts as an exact fit
EXACT_FIT_TOL = 1e-20


# -- distributions ----------------------------------------------------------

@dataclass(frozen=True)
class StudentT:
    df: float
    symmetric = True

    def __post_init__(self):
        if not self.df >= 1:
            raise EconokitError(f"invalid degrees of freedom {self.df}")


@dataclass(frozen=True)
class FisherF:
    d1: float
    d2: float
    symmetric = False

    def __post_init__(self):
        if not (self.d1 >= 1 and self.d2 >= 1):
            raise EconokitError(f"invalid degrees of freedom ({self.d1}, {self.d2})")


@dataclass(frozen=True)
class StdNormal:
    symmetric = True


def _upper(dist, x):
    x = np.asarray(x, dtype=float)
    if isinstance(dist, StdNormal):
        return 0.5 * scipy.special.erfc(x / math.sqrt(2.0))
    if isinstance(dist, StudentT):
        v = dist.df
        half = 0.5 * scipy.special.betainc(0.5 * v, 0.5, v / (v + x * x))
        return np.where(x >= 0, half, 1.0 - half)
    if isinstance(dist, FisherF):
        d1, d2 = dist.d1, dist.d2
        xp = np.maximum(x, 0.0)
        p = scipy.special.betainc(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * xp))
        return np.where(x > 0, p, 1.0)
    raise EconokitError(f"unknown distribution {dist!r}")


def tail_prob(dist, x, sides: str = "one"):
    """Upper-tail probability ``P(X > x)``, or ``P(|X| > |x|)`` when ``sides="two"``."""
    if not np.all(np.isfinite(x)):
        raise EconokitError("tail_prob needs a finite argument")
    if sides == "one":
        p = _upper(dist, x)
    elif sides == "two":
        if not dist.symmetric:
            raise EconokitError("two-sided tail only defined for symmetric distributions")
        p = 2.0 * _upper(dist, np.abs(x))
    else:
        raise EconokitError(f"sides must be 'one' or 'two', got {sides!r}")
    p = np.clip(p, 0.0, 1.0)
    return float(p) if np.ndim(p) == 0 else p


# -- data -------------------------------------------------------------------

@dataclass(frozen=True)
class RegressionData:
    y: np.ndarray
    X: np.ndarray
    names: tuple[str, ...]
    has_intercept: bool = True
    start: QuarterIndex | None = None  # date of the first row, when calendar-indexed
    response: str = "y"

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float).ravel()
        X = np.asarray(self.X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "names", tuple(self.names))
        T, k = X.shape
        if y.size != T:
            raise EconokitError(f"response has {y.size} rows but design has {T}")
        if len(self.names) != k:
            raise EconokitError("one name per regressor column required")
        if len(set(self.names)) != k:
            raise EconokitError("duplicate regressor names")
        if T <= k:
            raise EconokitError(f"need more observations than regressors (T={T}, k={k})")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise EconokitError("non-finite entries in regression data")
        if self.has_intercept and self.names[0] != "const":
            raise EconokitError("intercept must be column 0 named 'const'")

    @property
    def T(self) -> int:
        return self.X.shape[0]

    @property
    def k(self) -> int:
        return self.X.shape[1]

    def date(self, row: int) -> QuarterIndex:
        if self.start is None:
            raise EconokitError("regression data carries no calendar index")
        return self.start.shift(row)

    def row_of(self, q: QuarterIndex) -> int:
        if self.start is None:
            raise EconokitError("regression data carries no calendar index")
        return q - self.start

    def drop(self, columns: Iterable[str]) -> "RegressionData":
        drop = set(columns)
        missing = drop - set(self.names)
        if missing:
            raise EconokitError(f"unknown columns {sorted(missing)}")
        keep = [i for i, n in enumerate(self.names) if n not in drop]
        return RegressionData(
            self.y, self.X[:, keep], tuple(self.names[i] for i in keep),
            self.has_intercept and "const" not in drop, self.start, self.response,
        )

    def rows(self, i: int, j: int) -> "RegressionData":
        start = None if self.start is None else self.start.shift(i)
        return RegressionData(self.y[i:j], self.X[i:j], self.names, self.has_intercept, start, self.response)


def _lag_name(name: str, j: int) -> str:
    return f"{name}_t" if j == 0 else f"{name}_t-{j}"


def build_lagged_design(
    dep: Series,
    lag_specs: Sequence[tuple[Series, Iterable[int]]],
    include_intercept: bool = True,
    trend: bool = False,
    extras: Sequence[Series] = (),
) -> RegressionData:
    """Regress ``dep_t`` on lags of the given sources over their common sample.

    Rows start once every requested lag is available, so with a shared start
    date the first ``max lag`` observations are dropped. Columns are named
    ``NAME_t-j``; a trend column counts rows from 1.
    """
    specs = [(s, sorted(set(int(j) for j in lags))) for s, lags in lag_specs]
    first, last = dep.start, dep.end
    for s, lags in specs:
        if not lags:
            continue
        if lags[0] < 0:
            raise EconokitError("lags must be non-negative")
        if s.name == dep.name and lags[0] == 0:
            raise EconokitError(f"lag 0 of the response {dep.name!r} duplicates the response")
        first = max(first, s.start.shift(lags[-1]))
        last = min(last, s.end.shift(lags[0]))
    for e in extras:
        first, last = max(first, e.start), min(last, e.end)
    n = last - first + 1
    if n <= 0:
        raise EconokitError("empty usable sample after lagging")

    names: list[str] = []
    cols: list[np.ndarray] = []
    if include_intercept:
        names.append("const")
        cols.append(np.ones(n))
    if trend:
        names.append("trend")
        cols.append(np.arange(1.0, n + 1.0))
    for s, lags in specs:
        for j in lags:
            i = s.position(first.shift(-j))
            names.append(_lag_name(s.name, j))
            cols.append(s.values[i : i + n])
    for e in extras:
        i = e.position(first)
        names.append(e.name)
        cols.append(e.values[i : i + n])
    if len(set(names)) != len(names):
        dup = next(c for c in names if names.count(c) > 1)
        raise EconokitError(f"duplicate design column {dup!r}")
    i = dep.position(first)
    X = np.column_stack(cols) if cols else np.empty((n, 0))
    if X.shape[1] == 0:
        raise EconokitError("design has no columns")
    return RegressionData(dep.values[i : i + n], X, tuple(names), include_intercept, first, dep.name)


# -- estimation -------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    names: tuple[str, ...]
    coef: np.ndarray
    se: np.ndarray
    t_stat: np.ndarray
    p_value: np.ndarray
    ci95: np.ndarray  # shape (k, 2)
    cov: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)
    ssr: float
    ser: float
    r2: float
    adj_r2: float
    loglik: float
    aic: float
    bic: float
    T: int
    k: int
    has_intercept: bool = True
    exact_fit: bool = False
    start: QuarterIndex | None = None
    response: str = "y"

    @property
    def fitted(self) -> np.ndarray:
        return self.y - self.residuals

    def __getitem__(self, name: str) -> float:
        return float(self.coef[self.names.index(name)])

    def index(self, name: str) -> int:
        return self.names.index(name)


def fit_ols(data: RegressionData) -> FitResult:
    X, y = data.X, data.y
    T, k = X.shape
    # equilibrate columns so the rank test is not fooled by mixed units (const vs euros)
    scale = np.linalg.norm(X, axis=0)
    if np.any(scale == 0.0):
        raise RankDeficientError(data.names[int(np.flatnonzero(scale == 0.0)[0])])
    Xs = X / scale
    Q, R, piv = scipy.linalg.qr(Xs, mode="economic", pivoting=True)
    rdiag = np.abs(np.diag(R))
    bad = np.flatnonzero(rdiag <= RANK_TOL * np.linalg.norm(Xs))
    if bad.size:
        raise RankDeficientError(data.names[piv[bad[0]]])

    coef = np.empty(k)
    coef[piv] = scipy.linalg.solve_triangular(R, Q.T @ y)
    coef /= scale
    resid = y - X @ coef
    ssr = float(resid @ resid)
    exact = ssr <= EXACT_FIT_TOL * float(y @ y)

    Rinv = scipy.linalg.solve_triangular(R, np.eye(k))
    xtx_inv = np.empty((k, k))
    xtx_inv[np.ix_(piv, piv)] = Rinv @ Rinv.T
    xtx_inv /= np.outer(scale, scale)
    df = T - k
    s2 = ssr / df
    cov = s2 * xtx_inv
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = coef / se
        p = tail_prob(StudentT(df), np.nan_to_num(t, posinf=1e300, neginf=-1e300), sides="two")
    p = np.atleast_1d(p)
    ci = np.column_stack([coef - Z95 * se, coef + Z95 * se])

    if data.has_intercept:
        dev = y - y.mean()
        tss = float(dev @ dev)
        r2 = 1.0 - ssr / tss if tss > 0 else 1.0
        adj = 1.0 - (1.0 - r2) * (T - 1) / df
    else:
        tss = float(y @ y)
        r2 = 1.0 - ssr / tss if tss > 0 else 1.0
        adj = 1.0 - (1.0 - r2) * T / df

    with np.errstate(divide="ignore"):
        loglik = -0.5 * T * (1.0 + math.log(2 * math.pi) + (np.log(ssr / T) if ssr > 0 else -np.inf))
    loglik = float(loglik)
    aic = -2.0 * loglik + 2.0 * k
    bic = -2.0 * loglik + k * math.log(T)
    return FitResult(
        names=data.names, coef=coef, se=se, t_stat=t, p_value=p, ci95=ci, cov=cov, y=y,
        residuals=resid, ssr=ssr, ser=math.sqrt(s2), r2=r2, adj_r2=adj, loglik=loglik,
        aic=aic, bic=bic, T=T, k=k, has_intercept=data.has_intercept, exact_fit=exact,
        start=data.start, response=data.response,
    )


@dataclass(frozen=True)
class FStat:
    value: float
    df_num: int
    df_den: int
    p_value: float

    def reject(self, level: float) -> bool:
        return self.p_value < level


def f_test(unrestricted: FitResult, restricted: FitResult) -> FStat:
    """F-test of the exclusion restrictions separating two nested fits."""
    if unrestricted.T != restricted.T or not np.array_equal(unrestricted.y, restricted.y):
        raise EconokitError("restricted and unrestricted fits use different response samples")
    q = unrestricted.k - restricted.k
    if q < 1:
        raise EconokitError("restricted model must have fewer coefficients")
    missing = set(restricted.names) - set(unrestricted.names)
    if missing:
        raise EconokitError(f"restricted regressors {sorted(missing)} not in the unrestricted model")
    if unrestricted.exact_fit:
        raise ExactFitError("exact fit: unrestricted SSR is zero, F statistic undefined")
    df_den = unrestricted.T - unrestricted.k
    gap = max(restricted.ssr - unrestricted.ssr, 0.0)
    F = (gap / q) / (unrestricted.ssr / df_den)
    return FStat(float(F), q, df_den, tail_prob(FisherF(q, df_den), F))


def fit_columns(data: RegressionData, drop: Iterable[str]) -> FitResult:
    return fit_ols(data.drop(drop))
