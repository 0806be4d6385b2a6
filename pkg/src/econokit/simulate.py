"""Seeded synthetic data for Monte Carlo checks and demos.

Random numbers come from the PCG64 generator (O'Neill's permuted
congruential generator, 128-bit state, as shipped with numpy). Raw 64-bit
outputs are mapped to uniforms on (0, 1) by ``((r >> 11) + 0.5) / 2**53``
and paired into standard normals with the Box-Muller transform, so a given
seed yields the same stream on every platform. Innovations are consumed in
time order; vector innovations take ``k`` consecutive normals per period.

Monte Carlo replications use ``derive_seed(seed, run)``: the base seed
XOR'd with the splitmix64 mix of the run index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EconokitError
from .series import QuarterIndex, Series

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, run: int) -> int:
    return (int(seed) & MASK64) ^ splitmix64(run)


def uniforms(seed: int, n: int) -> np.ndarray:
    raw = np.random.PCG64(int(seed) & MASK64).random_raw(n)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def normals(seed: int, n: int) -> np.ndarray:
    """``n`` standard normals: Box-Muller on consecutive uniform pairs."""
    m = (n + 1) // 2
    u = uniforms(seed, 2 * m).reshape(m, 2)
    r = np.sqrt(-2.0 * np.log(u[:, 0]))
    a = 2.0 * np.pi * u[:, 1]
    z = np.column_stack([r * np.cos(a), r * np.sin(a)]).ravel()
    return z[:n]


def _q(x) -> QuarterIndex:
    return x if isinstance(x, QuarterIndex) else QuarterIndex.parse(str(x))


# -- specs ------------------------------------------------------------------

@dataclass(frozen=True)
class ArSpec:
    phi: tuple[float, ...] = ()
    c: float = 0.0
    sigma: float = 1.0
    T: int = 100
    seed: int = 0
    start: str = "1991Q1"
    name: str = "y"
    burn_in: int = 200

    def __post_init__(self):
        if self.T < 1 or self.sigma < 0 or self.burn_in < 0:
            raise EconokitError("invalid AR spec: need T >= 1, sigma >= 0, burn_in >= 0")


@dataclass(frozen=True)
class BreakSpec:
    """AR data plus a level shift of ``shift`` from observation ``break_at`` (0-based) on."""

    ar: ArSpec = ArSpec()
    break_at: int = 50
    shift: float = 0.0

    def __post_init__(self):
        if not 0 < self.break_at < self.ar.T:
            raise EconokitError(f"break date must lie inside (0, {self.ar.T})")


@dataclass(frozen=True)
class VarSpec:
    A: tuple = ()  # p matrices, each k x k
    c: tuple[float, ...] = ()
    cov: tuple = ()  # k x k innovation covariance
    T: int = 200
    seed: int = 0
    names: tuple[str, ...] = ()
    start: str = "1991Q1"
    burn_in: int = 200


@dataclass(frozen=True)
class PairSpec:
    """``x`` is a random walk; ``y = alpha + theta * x + u`` with stationary AR(1) ``u``."""

    alpha: float = 2.0
    theta: float = 3.0
    sigma_w: float = 1.0
    sigma_u: float = 0.1
    phi_u: float = 0.0
    T: int = 400
    seed: int = 0
    names: tuple[str, str] = ("y", "x")
    start: str = "1991Q1"

    def __post_init__(self):
        if not abs(self.phi_u) < 1:
            raise EconokitError("phi_u must be stationary (|phi_u| < 1)")


@dataclass(frozen=True)
class VeronaSpec:
    """Log level = trend + quarterly seasonal + AR(1) noise + optional level break."""

    T: int = 92
    start: str = "1991Q1"
    level: float = 1.0e9
    growth: float = 0.0095  # per quarter, in logs
    seasonal: tuple[float, float, float, float] = (-0.03, 0.02, -0.04, 0.05)
    phi: float = 0.5
    sigma: float = 0.03
    break_at: str | None = "2010Q1"
    break_size: float = -0.25  # log-level shift from break_at on
    seed: int = 0
    name: str = "EXP"


# Calibrated so a T=92 draw resembles the quarterly export level series:
# mean c / (1 - phi) ~ 1.58e9 and sd sigma / sqrt(1 - phi^2) ~ 5.0e8.
EXPORT_LIKE_AR = ArSpec(phi=(0.97,), c=0.03 * 1.58e9, sigma=5.0e8 * np.sqrt(1 - 0.97**2), T=92, name="EXP")


# -- generators -------------------------------------------------------------

def _ar_recursion(phi: np.ndarray, c: float, eps: np.ndarray, y0: float) -> np.ndarray:
    p = phi.size
    y = np.empty(eps.size + p)
    y[:p] = y0
    for t in range(eps.size):
        acc = c + eps[t]
        for i in range(p):
            acc += phi[i] * y[p + t - 1 - i]
        y[p + t] = acc
    return y[p:]


def gen_ar(spec: ArSpec) -> Series:
    """``y_t = c + sum phi_i y_{t-i} + sigma e_t`` after discarding ``burn_in`` draws."""
    phi = np.asarray(spec.phi, dtype=float)
    n = spec.burn_in + spec.T
    eps = spec.sigma * normals(spec.seed, n)
    s = phi.sum()
    stationary = phi.size == 0 or np.max(np.abs(np.roots(np.r_[1.0, -phi]))) < 1.0
    y0 = spec.c / (1.0 - s) if stationary else 0.0
    y = _ar_recursion(phi, spec.c, eps, y0)
    return Series(spec.name, _q(spec.start), y[spec.burn_in :])


def gen_with_break(spec: BreakSpec) -> Series:
    base = gen_ar(spec.ar)
    v = base.values.copy()
    v[spec.break_at :] += spec.shift
    return Series(base.name, base.start, v)


def _cov_factor(cov: np.ndarray) -> np.ndarray:
    if not np.allclose(cov, cov.T):
        raise EconokitError("innovation covariance must be symmetric")
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        w, V = np.linalg.eigh(cov)
        if w.min() < -1e-12 * max(1.0, abs(w).max()):
            raise EconokitError("innovation covariance is not positive semi-definite") from None
        return V * np.sqrt(np.clip(w, 0.0, None))


def gen_var(spec: VarSpec) -> list[Series]:
    A = np.asarray(spec.A, dtype=float)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise EconokitError("A must be a sequence of square k x k matrices")
    p, k, _ = A.shape
    c = np.zeros(k) if len(spec.c) == 0 else np.asarray(spec.c, dtype=float)
    cov = np.eye(k) if len(spec.cov) == 0 else np.asarray(spec.cov, dtype=float)
    names = spec.names or tuple(f"y{i + 1}" for i in range(k))
    if c.shape != (k,) or cov.shape != (k, k) or len(names) != k:
        raise EconokitError("intercepts, covariance and names must match the VAR dimension")
    L = _cov_factor(cov)
    n = spec.burn_in + spec.T
    eps = normals(spec.seed, n * k).reshape(n, k) @ L.T
    y = np.zeros((n + p, k))
    for t in range(n):
        acc = c + eps[t]
        for j in range(p):
            acc = acc + A[j] @ y[p + t - 1 - j]
        y[p + t] = acc
    y = y[p + spec.burn_in :]
    start = _q(spec.start)
    return [Series(names[i], start, y[:, i]) for i in range(k)]


def gen_cointegrated_pair(spec: PairSpec) -> tuple[Series, Series]:
    z = normals(spec.seed, 2 * spec.T).reshape(spec.T, 2)
    w = np.cumsum(spec.sigma_w * z[:, 0])
    u = _ar_recursion(np.array([spec.phi_u]), 0.0, spec.sigma_u * z[:, 1], 0.0)
    start = _q(spec.start)
    y = Series(spec.names[0], start, spec.alpha + spec.theta * w + u)
    x = Series(spec.names[1], start, w)
    return y, x


def gen_verona_like(spec: VeronaSpec) -> Series:
    start = _q(spec.start)
    t = np.arange(spec.T, dtype=float)
    u = _ar_recursion(np.array([spec.phi]), 0.0, spec.sigma * normals(spec.seed, spec.T + 50), 0.0)[50:]
    season = np.array([spec.seasonal[(start.quarter - 1 + i) % 4] for i in range(spec.T)])
    logy = np.log(spec.level) + spec.growth * t + season + u
    if spec.break_at is not None:
        b = _q(spec.break_at) - start
        if not 0 < b < spec.T:
            raise EconokitError(f"break date {spec.break_at} must lie inside the sample")
        logy[b:] += spec.break_size
    return Series(spec.name, start, np.exp(logy))


# -- Monte Carlo ------------------------------------------------------------

def monte_carlo(trial: Callable[[int], object], runs: int, seed: int) -> list:
    """Evaluate ``trial(derive_seed(seed, r))`` for ``r = 0..runs-1``, in order."""
    return [trial(derive_seed(seed, r)) for r in range(runs)]


def rate(flags: Sequence[bool]) -> float:
    return float(np.mean(np.asarray(flags, dtype=bool)))
