"""Vector autoregressions: estimation, lag selection, Granger causality, forecasting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .autoregression import ForecastPath
from .errors import EconokitError
from .linreg import FitResult, FStat, RegressionData, build_lagged_design, f_test, fit_ols
from .series import QuarterIndex, Series, align
from .stability import LEVELS


@dataclass(frozen=True)
class VarModel:
    variables: tuple[str, ...]
    p: int
    equations: tuple[FitResult, ...]
    resid_cov: np.ndarray
    sample: tuple[QuarterIndex, QuarterIndex]
    design: RegressionData = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.variables)

    def equation(self, name: str) -> FitResult:
        return self.equations[self._idx(name)]

    def _idx(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise EconokitError(f"unknown variable {name!r}; model has {list(self.variables)}") from None

    def coefficients(self) -> tuple[np.ndarray, np.ndarray]:
        """Intercepts ``c`` (k,) and lag matrices ``A`` (p, k, k) with ``A[j-1][i, l]`` the
        effect of variable ``l`` at lag ``j`` in equation ``i``."""
        k, p = self.k, self.p
        c = np.array([eq["const"] for eq in self.equations])
        A = np.zeros((p, k, k))
        for i, eq in enumerate(self.equations):
            for j in range(1, p + 1):
                for l, v in enumerate(self.variables):
                    A[j - 1, i, l] = eq[f"{v}_t-{j}"]
        return c, A

    def companion(self) -> np.ndarray:
        _, A = self.coefficients()
        k, p = self.k, self.p
        F = np.zeros((k * p, k * p))
        F[:k, :] = np.hstack(list(A))
        F[k:, :-k] = np.eye(k * (p - 1))
        return F

    @property
    def stationary(self) -> bool:
        return bool(np.max(np.abs(np.linalg.eigvals(self.companion()))) < 1.0)


def _prepare(series: Sequence[Series], sample) -> list[Series]:
    names = [s.name for s in series]
    if len(set(names)) != len(names):
        raise EconokitError(f"variable names must be distinct: {names}")
    try:
        first, cols = align(*series)
    except EconokitError as e:
        raise EconokitError(f"misaligned series: {e}") from None
    out = [Series(s.name, first, v) for s, v in zip(series, cols)]
    if sample is not None:
        try:
            out = [s.window(*sample) for s in out]
        except EconokitError as e:
            raise EconokitError(f"sample bounds out of range: {e}") from None
    return out


def _system_design(series: Sequence[Series], p: int) -> tuple[RegressionData, np.ndarray]:
    """Shared design (const + p lags of every variable) and the (T, k) response matrix."""
    X = build_lagged_design(series[0], [(s, range(1, p + 1)) for s in series])
    n = X.T
    Y = np.column_stack([s.values[len(s) - n :] for s in series])
    return X, Y


def fit_var(series: Sequence[Series], p: int, sample: tuple[QuarterIndex, QuarterIndex] | None = None) -> VarModel:
    """Equation-by-equation OLS on the common design."""
    k = len(series)
    if k < 2:
        raise EconokitError("a VAR needs at least two series")
    if p < 1:
        raise EconokitError("VAR lag order must be >= 1")
    ss = _prepare(series, sample)
    T = len(ss[0])
    if T - p <= k * p + 1:
        raise EconokitError(f"insufficient sample: {T - p} usable rows for {k * p + 1} coefficients per equation")
    X, Y = _system_design(ss, p)
    eqs = tuple(
        fit_ols(RegressionData(Y[:, i], X.X, X.names, True, X.start, s.name)) for i, s in enumerate(ss)
    )
    E = np.column_stack([e.residuals for e in eqs])
    cov = E.T @ E / (X.T - (k * p + 1))
    return VarModel(tuple(s.name for s in ss), p, eqs, cov, (X.start, X.start.shift(X.T - 1)), X)


@dataclass(frozen=True)
class VarLagSelection:
    candidates: tuple[int, ...]
    aic: tuple[float, ...]
    bic: tuple[float, ...]
    chosen_aic: int
    chosen_bic: int
    T: int

    def render(self) -> str:
        """Criteria table with the minimum of each column starred."""
        rows = [f"{'p':>3}  {'AIC(p)':>18}  {'BIC(p)':>18}"]
        for p, a, b in zip(self.candidates, self.aic, self.bic):
            sa = f"{a:.6f}" + ("*" if p == self.chosen_aic else " ")
            sb = f"{b:.6f}" + ("*" if p == self.chosen_bic else " ")
            rows.append(f"{p:>3}  {sa:>18}  {sb:>18}")
        return "\n".join(rows)


def system_loglik(E: np.ndarray) -> float:
    """Gaussian log-likelihood of a residual matrix (T, k) with the ML covariance."""
    T, k = E.shape
    sign, logdet = np.linalg.slogdet(E.T @ E / T)
    if sign <= 0:
        raise EconokitError("singular residual covariance; exact fit in the system")
    return -0.5 * T * (k * (1.0 + math.log(2 * math.pi)) + logdet)


def select_var_lag(series: Sequence[Series], p_max: int, sample=None) -> VarLagSelection:
    """System AIC/BIC for p = 1..p_max, all on the sample left after dropping ``p_max`` rows."""
    k = len(series)
    if k < 2:
        raise EconokitError("a VAR needs at least two series")
    if p_max < 1:
        raise EconokitError("p_max must be >= 1")
    ss = _prepare(series, sample)
    T = len(ss[0]) - p_max
    if T <= k * p_max + 1:
        raise EconokitError(f"p_max={p_max} too large for {len(ss[0])} observations")
    X, Y = _system_design(ss, p_max)
    aic, bic = [], []
    for p in range(1, p_max + 1):
        keep = [0] + [i for i, n in enumerate(X.names) if n != "const" and int(n.rsplit("-", 1)[1]) <= p]
        Xp = X.X[:, keep]
        coef, *_ = np.linalg.lstsq(Xp, Y, rcond=None)
        ll = system_loglik(Y - Xp @ coef)
        m = k * (k * p + 1)
        aic.append(-2.0 * ll + 2.0 * m)
        bic.append(-2.0 * ll + m * math.log(T))
    cands = tuple(range(1, p_max + 1))
    return VarLagSelection(
        cands, tuple(aic), tuple(bic), cands[int(np.argmin(aic))], cands[int(np.argmin(bic))], T
    )


@dataclass(frozen=True)
class GrangerResult:
    cause: str
    effect: str
    f: FStat
    decisions: dict[float, bool]

    def verdict(self, level: float = 0.10) -> str:
        does = "Granger-causes" if self.decisions[level] else "does not Granger-cause"
        return f"{self.cause} {does} {self.effect} at {level:.0%}"


def granger_decisions(p_value: float) -> dict[float, bool]:
    return {L: p_value < L for L in LEVELS}


def granger_test(m: VarModel, cause: str, effect: str) -> GrangerResult:
    """F-test that all ``p`` lags of ``cause`` are zero in the equation for ``effect``."""
    if cause == effect:
        raise EconokitError("cause and effect must differ")
    m._idx(cause)
    eq = m.equation(effect)
    data = RegressionData(eq.y, m.design.X, m.design.names, True, m.design.start, effect)
    restricted = fit_ols(data.drop([f"{cause}_t-{j}" for j in range(1, m.p + 1)]))
    f = f_test(eq, restricted)
    return GrangerResult(cause, effect, f, granger_decisions(f.p_value))


def granger_table(m: VarModel) -> list[GrangerResult]:
    return [granger_test(m, c, e) for e in m.variables for c in m.variables if c != e]


def ma_blocks(m: VarModel, n: int) -> np.ndarray:
    """Psi_0..Psi_{n-1}: top-left k x k blocks of companion powers."""
    k = m.k
    F = m.companion()
    P = np.eye(F.shape[0])
    out = np.empty((n, k, k))
    for j in range(n):
        out[j] = P[:k, :k]
        P = P @ F
    return out


def forecast_var(m: VarModel, observed: Sequence[Series], H: int) -> list[ForecastPath]:
    """Iterated forecasts for every variable with MSE-based standard errors."""
    if H < 1:
        raise EconokitError("forecast horizon must be >= 1")
    by_name = {s.name: s for s in observed}
    try:
        obs = [by_name[v] for v in m.variables]
    except KeyError as e:
        raise EconokitError(f"no observed series for variable {e.args[0]!r}") from None
    origin = obs[0].end
    if any(s.end != origin for s in obs):
        raise EconokitError("observed series must end at the same quarter")
    k, p = m.k, m.p
    if any(len(s) < p for s in obs):
        raise EconokitError(f"need {p} trailing observations per variable")
    c, A = m.coefficients()
    hist = [np.array([s.values[len(s) - j] for s in obs]) for j in range(p, 0, -1)]
    point = np.empty((H, k))
    for h in range(H):
        yhat = c + sum(A[j] @ hist[-1 - j] for j in range(p))
        point[h] = yhat
        hist.append(yhat)
    Psi = ma_blocks(m, H)
    mse = np.cumsum(np.einsum("hij,jl,hml->him", Psi, m.resid_cov, Psi), axis=0)
    se = np.sqrt(np.maximum(np.diagonal(mse, axis1=1, axis2=2), 0.0))
    ns = not m.stationary
    return [ForecastPath(v, origin, point[:, i].copy(), se[:, i].copy(), ns) for i, v in enumerate(m.variables)]
