"""Engle-Granger two-step cointegration test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import EconokitError
from .linreg import FitResult, RegressionData, fit_ols
from .series import QuarterIndex, Series, align
from .stability import LEVELS, df_regression

# One regressor, intercept in the cointegrating regression.
EG_CRITICAL = {0.10: -3.12, 0.05: -3.41, 0.01: -3.96}


@dataclass(frozen=True)
class CointResult:
    y_name: str
    x_name: str
    alpha: float
    theta: float
    residuals: Series
    adf_stat: float
    lags: int
    critical_values: Mapping[float, float]
    cointegrated: dict[float, bool]
    stage1: FitResult = field(repr=False)
    stage2: FitResult = field(repr=False)

    @property
    def normalization(self) -> str:
        return f"{self.y_name} = alpha + theta * {self.x_name} + z"


def egadf_test(
    y: Series,
    x: Series,
    lags: int = 0,
    sample: tuple[QuarterIndex, QuarterIndex] | None = None,
    critical_values: Mapping[float, float] | None = None,
) -> CointResult:
    """Regress ``y`` on a constant and ``x``, then Dickey-Fuller test the residuals.

    The residual regression has no deterministic terms. ``lags`` adds lagged
    differences (0 gives the plain DF test).
    """
    crit = dict(EG_CRITICAL if critical_values is None else critical_values)
    if set(crit) != set(LEVELS):
        raise EconokitError("critical_values must give entries for 0.10, 0.05 and 0.01")
    if lags < 0:
        raise EconokitError("lags must be >= 0")
    first, (yv, xv) = align(y, x)
    if sample is not None:
        lo = sample[0] - first
        hi = sample[1] - first + 1
        if lo < 0 or hi > yv.size or hi <= lo:
            raise EconokitError(f"sample {sample[0]}..{sample[1]} outside the common span of {y.name} and {x.name}")
        yv, xv, first = yv[lo:hi], xv[lo:hi], sample[0]
    if np.ptp(xv) == 0.0:
        raise EconokitError(f"{x.name} has zero variance over the sample")
    if yv.size < lags + 8:
        raise EconokitError(f"sample too short: {yv.size} observations for {lags} augmentation lags")
    xname = x.name if x.name != "const" else "x"
    s1 = fit_ols(RegressionData(yv, np.column_stack([np.ones(yv.size), xv]), ("const", xname), True, first, y.name))
    alpha, theta = float(s1.coef[0]), float(s1.coef[1])
    z = Series("z", first, s1.residuals)
    s2 = fit_ols(df_regression(z, lags, intercept=False))
    stat = float(s2.t_stat[s2.index("z_t-1")])
    return CointResult(
        y.name, x.name, alpha, theta, z, stat, lags, crit,
        {L: stat < crit[L] for L in LEVELS}, s1, s2,
    )
