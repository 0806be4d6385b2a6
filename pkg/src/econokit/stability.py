"""Unit-root (ADF) and structural-break (Chow, QLR) tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import CriticalValueNotTabulated, EconokitError
from .linreg import FitResult, FStat, RegressionData, build_lagged_design, f_test, fit_ols
from .series import QuarterIndex, Series, diff

LEVELS = (0.10, 0.05, 0.01)

Deterministics = Literal["intercept_only", "intercept_and_trend"]

# Large-sample ADF critical values.
ADF_CRITICAL = {
    "intercept_only": {0.10: -2.57, 0.05: -2.86, 0.01: -3.43},
    "intercept_and_trend": {0.10: -3.12, 0.05: -3.41, 0.01: -3.96},
}

# QLR (sup-F) critical values, 15% trimming, keyed by number of restrictions.
QLR_CRITICAL = {
    5: {0.10: 3.26, 0.05: 3.66, 0.01: 4.53},
    7: {0.10: 2.84, 0.05: 3.15, 0.01: 3.82},
}


def _level(level) -> float:
    for L in LEVELS:
        if math.isclose(float(level), L):
            return L
    raise CriticalValueNotTabulated(f"unsupported significance level {level}; use one of 0.10, 0.05, 0.01")


# -- ADF --------------------------------------------------------------------

@dataclass(frozen=True)
class AdfSpec:
    deterministics: Deterministics = "intercept_only"
    lags: int = 0

    def __post_init__(self):
        if self.deterministics not in ADF_CRITICAL:
            raise EconokitError(f"unknown deterministics {self.deterministics!r}")
        if self.lags < 0:
            raise EconokitError("ADF lags must be >= 0")


@dataclass(frozen=True)
class AdfResult:
    t_stat: float
    spec: AdfSpec
    delta: float
    gammas: tuple[float, ...]
    decisions: dict[float, bool]
    fit: FitResult = field(repr=False)

    def critical(self, level: float) -> float:
        return adf_critical(self.spec.deterministics, level)


def adf_critical(deterministics: str, level) -> float:
    try:
        table = ADF_CRITICAL[deterministics]
    except KeyError:
        raise CriticalValueNotTabulated(f"no ADF critical values for {deterministics!r}") from None
    return table[_level(level)]


def df_regression(s: Series, lags: int, intercept: bool = True, trend: bool = False) -> RegressionData:
    """Regress the first difference on the lagged level and ``lags`` lagged differences."""
    d = diff(s)
    specs = [(s, [1])]
    if lags:
        specs.append((d, range(1, lags + 1)))
    return build_lagged_design(d, specs, include_intercept=intercept, trend=trend)


def adf_test(s: Series, spec: AdfSpec = AdfSpec()) -> AdfResult:
    if np.ptp(s.values) == 0.0:
        raise EconokitError(f"series {s.name!r} is constant; ADF regression undefined")
    usable = len(s) - 1 - spec.lags
    if usable < spec.lags + 5 or spec.lags >= usable / 3:
        raise EconokitError(f"sample too short for an ADF regression with {spec.lags} lags ({len(s)} observations)")
    data = df_regression(s, spec.lags, intercept=True, trend=spec.deterministics == "intercept_and_trend")
    fit = fit_ols(data)
    i = fit.index(f"{s.name}_t-1")
    t = float(fit.t_stat[i])
    gammas = tuple(float(fit.coef[fit.index(f"D_{s.name}_t-{j}")]) for j in range(1, spec.lags + 1))
    decisions = {L: t < ADF_CRITICAL[spec.deterministics][L] for L in LEVELS}
    return AdfResult(t, spec, float(fit.coef[i]), gammas, decisions, fit)


def adf_decisions(t_stat: float, deterministics: str) -> dict[float, bool]:
    return {L: t_stat < adf_critical(deterministics, L) for L in LEVELS}


# -- Chow / QLR -------------------------------------------------------------

@dataclass(frozen=True)
class ChowResult:
    break_date: QuarterIndex | int
    f: FStat
    q: int
    ssr_unrestricted: float


def _break_row(base: RegressionData, break_date) -> int:
    if isinstance(break_date, QuarterIndex):
        return base.row_of(break_date)
    return int(break_date)


def chow_f(base: RegressionData, break_date, _restricted: FitResult | None = None) -> ChowResult:
    """Chow F-test that every coefficient of ``base`` is the same before and after ``break_date``.

    The break indicator is 1 from ``break_date`` onward. ``break_date`` may
    also be a 0-based row offset for designs without a calendar.
    """
    T, k = base.T, base.k
    b = _break_row(base, break_date)
    if b < k + 1 or T - b < k + 1:
        raise EconokitError(
            f"break at row {b} leaves a sub-sample shorter than {k + 1} observations (T={T}, k={k})"
        )
    post = np.zeros(T)
    post[b:] = 1.0
    X = np.hstack([base.X, base.X * post[:, None]])
    names = base.names + tuple(f"{n}:post" for n in base.names)
    unrestricted = fit_ols(RegressionData(base.y, X, names, base.has_intercept, base.start, base.response))
    restricted = _restricted if _restricted is not None else fit_ols(base)
    f = f_test(unrestricted, restricted)
    when = base.date(b) if base.start is not None else b
    return ChowResult(when, f, k, unrestricted.ssr)


def trimmed_range(T: int, trimming: float) -> tuple[int, int]:
    """First and last candidate observation (1-based), rounded half up."""
    return math.floor(trimming * T + 0.5), math.floor((1.0 - trimming) * T + 0.5)


@dataclass(frozen=True)
class QlrResult:
    trimming: float
    candidates: tuple
    f_values: np.ndarray
    qlr_stat: float
    break_at: QuarterIndex | int
    q: int
    decisions: dict[float, bool] | None  # None when q has no tabulated critical values

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.f_values))


def qlr_critical(q: int, level) -> float:
    L = _level(level)
    if q not in QLR_CRITICAL:
        raise CriticalValueNotTabulated(
            f"critical value not tabulated for q={q} restrictions (available: {sorted(QLR_CRITICAL)})"
        )
    return QLR_CRITICAL[q][L]


def qlr_test(base: RegressionData, trimming: float = 0.15) -> QlrResult:
    """Maximum Chow F over break dates in the central ``1 - 2*trimming`` of the sample.

    Ties in the maximum resolve to the earliest date.
    """
    if not 0.0 < trimming < 0.5:
        raise EconokitError("trimming must lie in (0, 0.5)")
    T, k = base.T, base.k
    tau0, tau1 = trimmed_range(T, trimming)
    # observation tau (1-based) starts the post-break regime, i.e. row tau-1
    rows = range(tau0 - 1, tau1)
    if len(rows) < 1 or rows[0] < k + 1 or T - rows[-1] < k + 1:
        raise EconokitError(
            f"degenerate candidate set: trimming {trimming} with T={T} leaves sub-samples shorter than k+1={k + 1}"
        )
    restricted = fit_ols(base)
    results = [chow_f(base, b, _restricted=restricted) for b in rows]
    f_values = np.array([r.f.value for r in results])
    i = int(np.argmax(f_values))
    stat = float(f_values[i])
    dates = tuple(base.date(b) for b in rows) if base.start is not None else tuple(rows)
    decisions = {L: stat > QLR_CRITICAL[k][L] for L in LEVELS} if k in QLR_CRITICAL else None
    return QlrResult(trimming, dates, f_values, stat, dates[i], k, decisions)
