"""Report documents rendered as aligned text or JSON, plus fan-chart CSV output.

JSON layout (``"schema": "econokit/1"``)::

    {"schema": "econokit/1", "command": str,
     "sections": [{"kind": str, "title": str, ...kind-specific fields}]}

Kinds and their fields:

* ``coefficients``: ``rows`` (name, coef, se, t, p), ``footer`` (SER, R2,
  adj_R2, AIC, BIC), ``T``, ``sample`` (first, last).
* ``criteria``: ``columns``, ``rows``, ``chosen`` (criterion -> p).
* ``verdicts``: ``items`` (test, statistic, critical, level, reject, text).
* ``forecast``: ``rows`` (quarter, forecast, error, lo95, hi95).
* ``table``: ``columns`` and ``rows`` (lists of cells).

Numbers are written at full precision; quarters use the ``2014Q1`` form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import EconokitError
from .linreg import Z95, FitResult
from .series import QuarterIndex, Series

SCHEMA = "econokit/1"


@dataclass
class Section:
    kind: str
    title: str
    data: dict[str, Any] = field(default_factory=dict)

    def is_empty(self) -> bool:
        key = {"verdicts": "items"}.get(self.kind, "rows")
        return key in self.data and len(self.data[key]) == 0


@dataclass
class ReportDocument:
    command: str
    sections: list[Section] = field(default_factory=list)

    def add(self, section: Section | None) -> "ReportDocument":
        if section is not None:
            self.sections.append(section)
        return self


def _num(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, QuarterIndex):
        return str(obj)
    return _num(obj)


# -- section builders -------------------------------------------------------

def _label(q) -> str:
    return q.label() if isinstance(q, QuarterIndex) else str(q)


def coefficient_section(fit: FitResult, title: str) -> Section:
    rows = [
        {"name": n, "coef": float(c), "se": float(s), "t": float(t), "p": float(p)}
        for n, c, s, t, p in zip(fit.names, fit.coef, fit.se, fit.t_stat, fit.p_value)
    ]
    footer = {"SER": fit.ser, "R2": fit.r2, "adj_R2": fit.adj_r2, "AIC": fit.aic, "BIC": fit.bic}
    sample = None if fit.start is None else [fit.start, fit.start.shift(fit.T - 1)]
    return Section("coefficients", title, {"rows": rows, "footer": footer, "T": fit.T, "sample": sample})


def ci_section(fit: FitResult, title: str = "95% confidence intervals") -> Section:
    rows = [[n, float(c), float(lo), float(hi)] for n, c, (lo, hi) in zip(fit.names, fit.coef, fit.ci95)]
    return Section("table", title, {"columns": ["Variable", "Coefficient", "Low", "High"], "rows": rows})


def criteria_section(title: str, candidates, columns: dict[str, Sequence[float]], chosen: dict[str, int]) -> Section:
    names = list(columns)
    rows = [[p] + [float(columns[c][i]) for c in names] for i, p in enumerate(candidates)]
    return Section("criteria", title, {"columns": ["p"] + names, "rows": rows, "chosen": chosen})


def verdict_item(test: str, statistic: float, critical: float | None, level: float, reject: bool, text: str) -> dict:
    return {"test": test, "statistic": statistic, "critical": critical, "level": level, "reject": reject, "text": text}


def forecast_section(path, title: str) -> Section | None:
    """Quarter / Forecast / Error table; ``None`` for an empty path."""
    if path.H == 0:
        return None
    ci = path.ci95
    rows = [
        {"quarter": q, "forecast": float(f), "error": float(e), "lo95": float(lo), "hi95": float(hi)}
        for q, f, e, (lo, hi) in zip(path.dates(), path.point, path.se, ci)
    ]
    return Section("forecast", title, {"rows": rows, "nonstationary": path.nonstationary})


def table_section(title: str, columns: Sequence[str], rows: Sequence[Sequence]) -> Section:
    return Section("table", title, {"columns": list(columns), "rows": [list(r) for r in rows]})


# -- rendering --------------------------------------------------------------

def fmt_coef(x: float) -> str:
    return f"{x:.6g}"


def fmt_stat(x: float) -> str:
    return f"{x:.4f}"


def _cell(x) -> str:
    if isinstance(x, QuarterIndex):
        return x.label()
    if isinstance(x, bool) or x is None:
        return {True: "yes", False: "no", None: "-"}[x]
    if isinstance(x, (int, np.integer)):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return fmt_coef(float(x))
    return str(x)


def _grid(header: Sequence[str], rows: Sequence[Sequence[str]], first_left: bool = True) -> list[str]:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    out = []
    for r in [list(header)] + [list(r) for r in rows]:
        cells = [
            c.ljust(w) if (i == 0 and first_left) else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))
        ]
        out.append("  ".join(cells).rstrip())
    return out


def _render_section(s: Section) -> list[str]:
    lines = [s.title, "-" * len(s.title)]
    d = s.data
    if s.kind == "coefficients":
        header = ["", "Coefficient", "Standard Error", "t-Statistic", "p-Value"]
        rows = [[r["name"], fmt_coef(r["coef"]), fmt_coef(r["se"]), fmt_stat(r["t"]), fmt_stat(r["p"])] for r in d["rows"]]
        lines += _grid(header, rows)
        f = d["footer"]
        lines.append("")
        lines += _grid(
            ["", "", "", ""],
            [["SER", fmt_coef(f["SER"]), "", ""],
             ["R^2", f"{f['R2']:.6f}", "Adjusted R^2", f"{f['adj_R2']:.6f}"],
             ["AIC", f"{f['AIC']:.3f}", "BIC", f"{f['BIC']:.3f}"]],
        )[1:]
        if d.get("sample"):
            a, b = d["sample"]
            lines.append(f"Sample {_label(a)}-{_label(b)} (T = {d['T']})")
    elif s.kind == "criteria":
        cols = d["columns"]
        rows = []
        for r in d["rows"]:
            cells = [str(r[0])]
            for name, v in zip(cols[1:], r[1:]):
                star = "*" if d["chosen"].get(name) == r[0] else ""
                cells.append((f"{v:.6f}" if abs(v) < 1e6 else fmt_coef(v)) + star)
            rows.append(cells)
        lines += _grid(cols, rows, first_left=False)
        lines.append("* minimizes the criterion")
    elif s.kind == "verdicts":
        lines += [it["text"] for it in d["items"]]
    elif s.kind == "forecast":
        header = ["Quarter", "Forecast", "Error", "Lo 95%", "Hi 95%"]
        rows = [[_label(r["quarter"]), fmt_coef(r["forecast"]), fmt_coef(r["error"]), fmt_coef(r["lo95"]), fmt_coef(r["hi95"])]
                for r in d["rows"]]
        lines += _grid(header, rows)
        if d.get("nonstationary"):
            lines.append("warning: fitted model is not stationary; error bands grow without bound")
    elif s.kind == "table":
        lines += _grid(d["columns"], [[_cell(c) for c in r] for r in d["rows"]])
    else:
        raise EconokitError(f"unknown section kind {s.kind!r}")
    return lines


def render_report(doc: ReportDocument, fmt: str = "text") -> str:
    sections = [s for s in doc.sections if not s.is_empty()]
    if fmt == "json":
        payload = {"schema": SCHEMA, "command": doc.command,
                   "sections": [{"kind": s.kind, "title": s.title, **_clean(s.data)} for s in sections]}
        return json.dumps(payload, indent=2) + "\n"
    if fmt != "text":
        raise EconokitError(f"unknown format {fmt!r}")
    blocks = ["\n".join(_render_section(s)) for s in sections]
    return "\n\n".join(blocks) + "\n"


def emit_fanchart(actual: Series, path, stream) -> None:
    """Write ``date,actual,forecast,lo95,hi95`` rows: observed history, then the forecast horizon."""
    if path.H and path.origin != actual.end:
        raise EconokitError(f"forecast origin {path.origin} does not match last observation {actual.end}")
    stream.write("date,actual,forecast,lo95,hi95\n")
    for q, v in actual.to_rows():
        stream.write(f"{q},{v!r},,,\n")
    for q, f, e in zip(path.dates(), path.point, path.se):
        f, e = float(f), float(e)
        stream.write(f"{q},,{f!r},{f - Z95 * e!r},{f + Z95 * e!r}\n")
