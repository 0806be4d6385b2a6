"""Univariate AR(p): OLS fit, lag-order selection, iterated forecasts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EconokitError, ExactFitError
from .linreg import Z95, FitResult, RegressionData, build_lagged_design, fit_ols
from .series import QuarterIndex, Series


@dataclass(frozen=True)
class ArModel:
    p: int
    fit: FitResult
    series_name: str
    sample: tuple[QuarterIndex, QuarterIndex]  # first and last response date

    @property
    def sigma(self) -> float:
        return self.fit.ser

    @property
    def intercept(self) -> float:
        return float(self.fit.coef[0])

    @property
    def phi(self) -> np.ndarray:
        return self.fit.coef[1 : 1 + self.p]

    def companion(self) -> np.ndarray:
        return companion_matrix(self.phi)

    @property
    def stationary(self) -> bool:
        if self.p == 0:
            return True
        return bool(np.max(np.abs(np.linalg.eigvals(self.companion()))) < 1.0)


def companion_matrix(phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    p = phi.size
    F = np.zeros((p, p))
    F[0, :] = phi
    F[1:, :-1] = np.eye(p - 1)
    return F


def ar_design(s: Series, p: int) -> RegressionData:
    return build_lagged_design(s, [(s, range(1, p + 1))])


def _windowed(s: Series, sample) -> Series:
    if sample is None:
        return s
    first, last = sample
    try:
        return s.window(first, last)
    except EconokitError as e:
        raise EconokitError(f"sample bounds out of range: {e}") from None


def fit_ar(s: Series, p: int, sample: tuple[QuarterIndex, QuarterIndex] | None = None) -> ArModel:
    """Fit ``y_t = c + phi_1 y_{t-1} + ... + phi_p y_{t-p} + e_t`` by OLS.

    ``sample`` restricts the data to a window before lagging, so the first
    ``p`` observations of the window are used only as regressors.
    """
    if p < 0:
        raise EconokitError("lag order must be non-negative")
    w = _windowed(s, sample)
    if len(w) - p <= p + 2:
        raise EconokitError(f"sample too short for AR({p}): {len(w)} observations")
    data = ar_design(w, p) if p > 0 else RegressionData(w.values, np.ones((len(w), 1)), ("const",), True, w.start, w.name)
    fit = fit_ols(data)
    return ArModel(p, fit, s.name, (data.start, data.start.shift(data.T - 1)))


@dataclass(frozen=True)
class LagSelection:
    candidates: tuple[int, ...]
    aic: tuple[float, ...]
    bic: tuple[float, ...]
    adj_r2: tuple[float, ...]
    ser: tuple[float, ...]
    chosen_aic: int
    chosen_bic: int
    T: int  # common estimation sample size


def select_ar_lag(s: Series, p_max: int, p_min: int = 1) -> LagSelection:
    """Compare AR(p_min..p_max) on the common sample that starts after ``p_max`` observations.

    Ties go to the smaller order. Raises :class:`ExactFitError` at the first
    candidate whose fit is exact.
    """
    if p_min > p_max:
        raise EconokitError(f"p_min ({p_min}) > p_max ({p_max})")
    if p_min < 0:
        raise EconokitError("lag orders must be non-negative")
    if len(s) - p_max <= p_max + 2:
        raise EconokitError(f"sample of {len(s)} too short for p_max={p_max}")
    full = ar_design(s, p_max) if p_max > 0 else None
    cands = tuple(range(p_min, p_max + 1))
    fits = []
    for p in cands:
        if full is None:
            data = RegressionData(s.values, np.ones((len(s), 1)), ("const",), True, s.start, s.name)
        else:
            data = full.drop(full.names[1 + p :])
        f = fit_ols(data)
        if f.exact_fit:
            e = ExactFitError(f"exact fit at p={p}: zero residual variance, criteria undefined")
            e.p = p
            raise e
        fits.append(f)
    aic = tuple(f.aic for f in fits)
    bic = tuple(f.bic for f in fits)
    return LagSelection(
        candidates=cands, aic=aic, bic=bic,
        adj_r2=tuple(f.adj_r2 for f in fits), ser=tuple(f.ser for f in fits),
        chosen_aic=cands[int(np.argmin(aic))], chosen_bic=cands[int(np.argmin(bic))],
        T=fits[0].T,
    )


@dataclass(frozen=True)
class ForecastPath:
    name: str
    origin: QuarterIndex  # last observed quarter
    point: np.ndarray
    se: np.ndarray
    nonstationary: bool = False

    @property
    def H(self) -> int:
        return self.point.size

    @property
    def horizons(self) -> np.ndarray:
        return np.arange(1, self.H + 1)

    @property
    def ci95(self) -> np.ndarray:
        return np.column_stack([self.point - Z95 * self.se, self.point + Z95 * self.se])

    def dates(self) -> list[QuarterIndex]:
        return [self.origin.shift(h) for h in range(1, self.H + 1)]


def ma_weights(phi, n: int) -> np.ndarray:
    """psi_0..psi_{n-1}: the (0, 0) entries of successive companion-matrix powers."""
    phi = np.asarray(phi, dtype=float)
    psi = np.zeros(n)
    if n == 0:
        return psi
    if phi.size == 0:
        psi[0] = 1.0
        return psi
    F = companion_matrix(phi)
    P = np.eye(phi.size)
    for j in range(n):
        psi[j] = P[0, 0]
        P = P @ F
    return psi


def forecast_ar(m: ArModel, observed: Series, H: int) -> ForecastPath:
    """Iterated point forecasts with error bands from the MA representation.

    Coefficient-estimation uncertainty is not included, so the one-step
    standard error equals the regression SER.
    """
    if H < 1:
        raise EconokitError("forecast horizon must be >= 1")
    p = m.p
    if len(observed) < p:
        raise EconokitError(f"need {p} trailing observations, got {len(observed)}")
    hist = list(observed.values[len(observed) - p :]) if p else []
    c, phi = m.intercept, m.phi
    point = np.empty(H)
    for h in range(H):
        # hist[-i] is the value i steps back
        yhat = c + sum(phi[i] * hist[-1 - i] for i in range(p))
        point[h] = yhat
        hist.append(yhat)
    psi = ma_weights(phi, H)
    se = m.sigma * np.sqrt(np.cumsum(psi**2))
    return ForecastPath(observed.name, observed.end, point, se, nonstationary=not m.stationary)
