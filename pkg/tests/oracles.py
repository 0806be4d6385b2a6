"""Independent reference computations used as test oracles.

Nothing here imports econokit internals beyond plain data containers; each
routine re-derives its quantity from first principles.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate


def gauss_solve(A, B):
    """Solve ``A X = B`` by Gauss-Jordan elimination with partial pivoting."""
    A = np.array(A, dtype=float)
    B = np.array(B, dtype=float)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    n = A.shape[0]
    M = np.hstack([A, B])
    for col in range(n):
        piv = col + int(np.argmax(np.abs(M[col:, col])))
        M[[col, piv]] = M[[piv, col]]
        M[col] /= M[col, col]
        for r in range(n):
            if r != col:
                M[r] -= M[r, col] * M[col]
    X = M[:, n:]
    return X[:, 0] if vec else X


def normal_equations(X, y):
    """(coef, se, ssr) from explicit (X'X)^-1 X'y."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    T, k = X.shape
    xtx = X.T @ X
    inv = gauss_solve(xtx, np.eye(k))
    coef = inv @ (X.T @ y)
    resid = y - X @ coef
    ssr = float(resid @ resid)
    s2 = ssr / (T - k)
    return coef, np.sqrt(s2 * np.diag(inv)), ssr


def normal_upper_tail(x):
    return integrate.quad(lambda u: math.exp(-u * u / 2) / math.sqrt(2 * math.pi), x, math.inf)[0]


def t_upper_tail(df, x):
    c = math.gamma((df + 1) / 2) / (math.sqrt(df * math.pi) * math.gamma(df / 2))
    return integrate.quad(lambda u: c * (1 + u * u / df) ** (-(df + 1) / 2), x, math.inf)[0]


def f_upper_tail(d1, d2, x):
    lb = math.lgamma(d1 / 2) + math.lgamma(d2 / 2) - math.lgamma((d1 + d2) / 2)

    def dens(u):
        if u <= 0:
            return 0.0
        return math.exp(0.5 * d1 * math.log(d1 * u) + 0.5 * d2 * math.log(d2) - 0.5 * (d1 + d2) * math.log(d1 * u + d2) - math.log(u) - lb)

    return 1.0 - integrate.quad(dens, 0, x, limit=200)[0]


def acf_loop(x, j):
    n = len(x)
    m = sum(x) / n
    num = 0.0
    for t in range(j, n):
        num += (x[t] - m) * (x[t - j] - m)
    den = 0.0
    for t in range(n):
        den += (x[t] - m) ** 2
    return num / den


def two_pass_sd(x):
    n = len(x)
    m = math.fsum(x) / n
    return math.sqrt(math.fsum((v - m) ** 2 for v in x) / (n - 1))


def rel(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
