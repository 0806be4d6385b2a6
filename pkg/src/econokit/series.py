"""Quarterly series container, transforms and descriptive statistics."""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EconokitError

_ROMAN = ("I", "II", "III", "IV")
_QUARTER_RE = re.compile(r"^\s*(\d{4})\s*[Qq:]\s*(I{1,3}|IV|[1-4])\s*$")


@dataclass(frozen=True, order=True)
class QuarterIndex:
    year: int
    quarter: int

    def __post_init__(self):
        if self.quarter not in (1, 2, 3, 4):
            raise EconokitError(f"quarter must be in 1..4, got {self.quarter}")

    @classmethod
    def parse(cls, token: str) -> "QuarterIndex":
        """Parse ``1991Q1``; the report style ``1991:I`` is accepted as well."""
        m = _QUARTER_RE.match(token)
        if m is None:
            raise EconokitError(f"malformed quarter {token!r}, expected e.g. 1991Q1")
        q = m.group(2)
        quarter = int(q) if q.isdigit() else _ROMAN.index(q) + 1
        return cls(int(m.group(1)), quarter)

    @property
    def ordinal(self) -> int:
        return 4 * self.year + self.quarter - 1

    @classmethod
    def from_ordinal(cls, n: int) -> "QuarterIndex":
        return cls(n // 4, n % 4 + 1)

    def shift(self, steps: int) -> "QuarterIndex":
        return QuarterIndex.from_ordinal(self.ordinal + steps)

    def succ(self) -> "QuarterIndex":
        return self.shift(1)

    def __sub__(self, other: "QuarterIndex") -> int:
        return self.ordinal - other.ordinal

    def __str__(self) -> str:
        return f"{self.year}Q{self.quarter}"

    def label(self) -> str:
        """Report-style label, e.g. ``2014:I``."""
        return f"{self.year}:{_ROMAN[self.quarter - 1]}"


def _as_quarter(q) -> QuarterIndex:
    return q if isinstance(q, QuarterIndex) else QuarterIndex.parse(str(q))


@dataclass(frozen=True)
class Series:
    """A named, gap-free quarterly series. ``values[t]`` sits at ``start.shift(t)``."""

    name: str
    start: QuarterIndex
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 1:
            raise EconokitError(f"series {self.name!r} is empty")
        bad = np.flatnonzero(~np.isfinite(v))
        if bad.size:
            raise EconokitError(f"series {self.name!r} has a non-finite value at {self.start.shift(int(bad[0]))}")
        v.setflags(write=False)
        object.__setattr__(self, "start", _as_quarter(self.start))
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    @property
    def end(self) -> QuarterIndex:
        return self.start.shift(len(self) - 1)

    def dates(self) -> list[QuarterIndex]:
        return [self.start.shift(i) for i in range(len(self))]

    def position(self, q: QuarterIndex) -> int:
        """Integer position of quarter ``q``; raises if outside the series."""
        i = q - self.start
        if not 0 <= i < len(self):
            raise EconokitError(f"{q} is outside {self.name!r} ({self.start}..{self.end})")
        return i

    def window(self, first: QuarterIndex | None = None, last: QuarterIndex | None = None) -> "Series":
        first = self.start if first is None else _as_quarter(first)
        last = self.end if last is None else _as_quarter(last)
        if last < first:
            raise EconokitError(f"empty window {first}..{last}")
        i, j = self.position(first), self.position(last)
        return Series(self.name, first, self.values[i : j + 1])

    def rename(self, name: str) -> "Series":
        return Series(name, self.start, self.values)

    def to_rows(self) -> list[tuple[QuarterIndex, float]]:
        return [(self.start.shift(i), float(v)) for i, v in enumerate(self.values)]


def from_rows(rows: Iterable[tuple[QuarterIndex, float]], name: str = "y") -> Series:
    rows = list(rows)
    if not rows:
        raise EconokitError("no observations")
    start = _as_quarter(rows[0][0])
    prev = start
    values = [float(rows[0][1])]
    for q, v in rows[1:]:
        q = _as_quarter(q)
        expected = prev.succ()
        if q == prev or q < prev:
            raise EconokitError(f"duplicate or out-of-order quarter {q}")
        if q != expected:
            raise EconokitError(f"gap at {expected}")
        values.append(float(v))
        prev = q
    for i, v in enumerate(values):
        if not math.isfinite(v):
            raise EconokitError(f"non-finite value at {start.shift(i)}")
    return Series(name, start, np.array(values))


def log_diff(s: Series) -> Series:
    """Quarterly log growth rate ``ln(s_t) - ln(s_{t-1})``."""
    if len(s) < 2:
        raise EconokitError("log_diff needs at least two observations")
    bad = np.flatnonzero(s.values <= 0)
    if bad.size:
        raise EconokitError(f"non-positive value at {s.start.shift(int(bad[0]))}; log undefined")
    return Series(f"d_{s.name}", s.start.succ(), np.diff(np.log(s.values)))


def diff(s: Series) -> Series:
    if len(s) < 2:
        raise EconokitError("diff needs at least two observations")
    return Series(f"D_{s.name}", s.start.succ(), np.diff(s.values))


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    count: int


def summary(s: Series) -> SummaryStats:
    if len(s) < 2:
        raise EconokitError("standard deviation needs at least two observations")
    x = s.values
    m = x.mean()
    dev = x - m
    return SummaryStats(float(m), float(math.sqrt(dev @ dev / (x.size - 1))), x.size)


@dataclass(frozen=True)
class AcfTable:
    lags: tuple[int, ...]
    rho: tuple[float, ...]

    def __getitem__(self, lag: int) -> float:
        return self.rho[self.lags.index(lag)]


def acf(s: Series, max_lag: int, include_zero: bool = False) -> AcfTable:
    """Sample autocorrelations with the full-sample mean and variance denominator."""
    x = s.values
    T = x.size
    if max_lag < 0 or max_lag >= T - 1:
        raise EconokitError(f"max_lag must be in 0..{T - 2} for {T} observations")
    dev = x - x.mean()
    denom = dev @ dev
    if denom <= 0.0:
        raise EconokitError("zero variance: autocorrelation undefined for a constant series")
    first = 0 if include_zero else 1
    lags = tuple(range(first, max_lag + 1))
    rho = tuple(1.0 if j == 0 else float(dev[j:] @ dev[:-j] / denom) for j in lags)
    return AcfTable(lags, rho)


def align(*series: Series) -> tuple[QuarterIndex, list[np.ndarray]]:
    """Restrict several series to their common calendar span."""
    first = max(s.start for s in series)
    last = min(s.end for s in series)
    if last < first:
        raise EconokitError("series do not overlap: " + ", ".join(s.name for s in series))
    return first, [s.window(first, last).values for s in series]


def lead_lag_corr(a: Series, b: Series, p_min: int, p_max: int) -> list[tuple[int, float]]:
    """Pearson correlation of ``a_t`` with ``b_{t+p}`` over each calendar overlap, ``p_min <= p <= p_max``."""
    if p_max < p_min:
        raise EconokitError("p_max must be >= p_min")
    out = []
    for p in range(p_min, p_max + 1):
        # a at t pairs with b at t+p, i.e. b shifted back by p quarters
        first = max(a.start, b.start.shift(-p))
        last = min(a.end, b.end.shift(-p))
        n = last - first + 1
        if n < 3:
            raise EconokitError(f"insufficient overlap at p={p}: {max(n, 0)} aligned observations, need 3")
        x = a.values[a.position(first) : a.position(first) + n]
        i = b.position(first.shift(p))
        y = b.values[i : i + n]
        dx, dy = x - x.mean(), y - y.mean()
        den = math.sqrt((dx @ dx) * (dy @ dy))
        if den == 0.0:
            raise EconokitError(f"zero variance in the aligned sample at p={p}")
        out.append((p, float(dx @ dy / den)))
    return out


def annualized(x: float) -> float:
    """Quarterly-to-annual aggregation used in report text (four times the quarterly figure)."""
    return 4.0 * x


def read_csv(path, name: str | None = None, locale_comma: bool = False) -> Series:
    """Read the ``date,value`` format.

    With ``locale_comma`` the file is expected to use ``;`` as the field
    separator and ``,`` as the decimal mark.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise EconokitError(f"cannot read {path}: {e.strerror}") from None
    delim = ";" if locale_comma else ","
    reader = csv.reader(text.splitlines(), delimiter=delim)
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["date", "value"]:
        raise EconokitError(f"{path}: expected header 'date{delim}value'")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) != 2:
            hint = "; comma decimals? re-run with --locale-comma" if not locale_comma else ""
            raise EconokitError(f"{path}:{lineno}: expected 2 fields, got {len(rec)}{hint}")
        tok = rec[1].strip()
        if locale_comma:
            tok = tok.replace(",", ".")
        try:
            v = float(tok)
        except ValueError:
            raise EconokitError(f"{path}:{lineno}: not a number: {rec[1]!r}") from None
        rows.append((QuarterIndex.parse(rec[0]), v))
    try:
        return from_rows(rows, name=name or path.stem)
    except EconokitError as e:
        raise EconokitError(f"{path}: {e}") from None


def write_csv(s: Series, stream) -> None:
    stream.write("date,value\n")
    for q, v in s.to_rows():
        stream.write(f"{q},{v!r}\n")


def series_from_values(values: Sequence[float], start: QuarterIndex | str = "1991Q1", name: str = "y") -> Series:
    return Series(name, _as_quarter(start), np.asarray(values, dtype=float))
