"""Monte Carlo size, power and consistency experiments.

Each function returns the fraction of replications in which the event of
interest occurred. Replication ``r`` draws from ``derive_seed(seed, r)``.
"""

from __future__ import annotations

import numpy as np

from .autoregression import ar_design, select_ar_lag
from .cointegration import egadf_test
from .simulate import ArSpec, BreakSpec, PairSpec, VarSpec, gen_ar, gen_cointegrated_pair, gen_var, gen_with_break, monte_carlo, rate, derive_seed
from .stability import AdfSpec, adf_test, qlr_test
from .var import fit_var, granger_test, select_var_lag

# VAR(2) used for the lag-selection experiment; companion spectral radius ~0.76
VAR2_A = (
    ((0.4, 0.1, 0.0), (0.0, 0.3, 0.1), (0.1, 0.0, 0.3)),
    ((0.3, 0.0, 0.0), (0.0, -0.3, 0.0), (0.0, 0.1, 0.3)),
)


def adf_rejection_rate(phi: float, runs: int = 2000, T: int = 200, level: float = 0.05, lags: int = 0, seed: int = 1) -> float:
    """ADF (intercept only) rejections for AR(1) data with coefficient ``phi``; ``phi=1`` is the driftless walk."""
    def trial(s):
        y = gen_ar(ArSpec(phi=(phi,), T=T, seed=s))
        return adf_test(y, AdfSpec("intercept_only", lags)).decisions[level]
    return rate(monte_carlo(trial, runs, seed))


def granger_rejection_rate(effect_coef: float, runs: int = 2000, T: int = 200, p: int = 2, level: float = 0.05, seed: int = 2) -> float:
    """Rejections of "cause does not Granger-cause effect" in a bivariate VAR(p).

    The effect series is ``0.5 effect_{t-1} + effect_coef * cause_{t-1} + e``
    and the cause is AR(1) with coefficient 0.5, independent innovations.
    """
    A = (((0.5, 0.0), (effect_coef, 0.5)),)
    def trial(s):
        cause, effect = gen_var(VarSpec(A=A, T=T, seed=s, names=("cause", "effect")))
        m = fit_var([cause, effect], p)
        return granger_test(m, "cause", "effect").decisions[level]
    return rate(monte_carlo(trial, runs, seed))


def qlr_exceedance_rate(runs: int = 500, T: int = 200, p: int = 6, critical: float = 3.82, seed: int = 3) -> float:
    """Share of stable AR(1) samples whose QLR statistic on an AR(p) base exceeds ``critical``."""
    def trial(s):
        y = gen_ar(ArSpec(phi=(0.5,), T=T, seed=s))
        return qlr_test(ar_design(y, p)).qlr_stat > critical
    return rate(monte_carlo(trial, runs, seed))


def qlr_localization_rate(runs: int = 300, T: int = 200, shift_sd: float = 5.0, tolerance: int = 4, seed: int = 4) -> float:
    """Share of runs where the QLR argmax lands within ``tolerance`` quarters of a mid-sample mean shift."""
    b = T // 2
    def trial(s):
        y = gen_with_break(BreakSpec(ArSpec(phi=(0.5,), sigma=1.0, T=T, seed=s), break_at=b, shift=shift_sd))
        res = qlr_test(ar_design(y, 1))
        return abs(res.break_at - y.start.shift(b)) <= tolerance
    return rate(monte_carlo(trial, runs, seed))


def eg_rejection_rate(cointegrated: bool, runs: int = 2000, T: int = 200, level: float = 0.05, seed: int = 5) -> float:
    """EG-ADF detections for a cointegrated pair, or for two independent random walks."""
    def trial(s):
        if cointegrated:
            y, x = gen_cointegrated_pair(PairSpec(T=T, seed=s))
        else:
            y = gen_ar(ArSpec(phi=(1.0,), T=T, seed=s, name="y"))
            x = gen_ar(ArSpec(phi=(1.0,), T=T, seed=derive_seed(s, 1_000_003), name="x"))
        return egadf_test(y, x).cointegrated[level]
    return rate(monte_carlo(trial, runs, seed))


def ar_bic_hit_rate(runs: int = 500, T: int = 400, p_max: int = 6, seed: int = 6) -> float:
    """Share of AR(2) samples (phi = 0.5, 0.3) for which BIC picks p = 2."""
    def trial(s):
        y = gen_ar(ArSpec(phi=(0.5, 0.3), c=1.0, T=T, seed=s))
        return select_ar_lag(y, p_max).chosen_bic == 2
    return rate(monte_carlo(trial, runs, seed))


def var_bic_hit_rate(runs: int = 300, T: int = 500, p_max: int = 6, seed: int = 7) -> float:
    """Share of three-variable VAR(2) samples for which system BIC picks p = 2."""
    def trial(s):
        ys = gen_var(VarSpec(A=VAR2_A, T=T, seed=s))
        return select_var_lag(ys, p_max).chosen_bic == 2
    return rate(monte_carlo(trial, runs, seed))


def simulate_ar_paths(c: float, phi, sigma: float, history, H: int, n_paths: int, rng: np.random.Generator) -> np.ndarray:
    """(n_paths, H) simulated continuations of an AR(p) from the last ``p`` observations."""
    phi = np.asarray(phi, dtype=float)
    p = phi.size
    lagged = np.tile(np.asarray(history, dtype=float)[::-1][:p], (n_paths, 1))  # column i = lag i+1
    out = np.empty((n_paths, H))
    for h in range(H):
        y = c + lagged @ phi + sigma * rng.standard_normal(n_paths)
        out[:, h] = y
        lagged = np.column_stack([y, lagged[:, :-1]]) if p > 1 else y[:, None]
    return out


def simulate_var_paths(c, A, cov, history, H: int, n_paths: int, rng: np.random.Generator) -> np.ndarray:
    """(n_paths, H, k) simulated continuations of a VAR(p); ``history`` is (p, k), oldest first."""
    A = np.asarray(A, dtype=float)
    p, k, _ = A.shape
    L = np.linalg.cholesky(np.asarray(cov, dtype=float))
    lags = [np.tile(np.asarray(history[-1 - j], dtype=float), (n_paths, 1)) for j in range(p)]
    out = np.empty((n_paths, H, k))
    for h in range(H):
        y = c + sum(lags[j] @ A[j].T for j in range(p)) + rng.standard_normal((n_paths, k)) @ L.T
        out[:, h] = y
        lags = [y] + lags[:-1]
    return out
