"""Command-line front end: ``econokit <command> [options]``.

Exit status is 0 on success, 2 on usage errors and 1 on data or numerical
errors. Output files are written only after the whole command succeeds.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from . import report as rp
from .autoregression import ar_design, fit_ar, forecast_ar, select_ar_lag
from .cointegration import egadf_test
from .errors import EconokitError
from .series import QuarterIndex, Series, acf, annualized, lead_lag_corr, log_diff, read_csv, summary, write_csv
from .simulate import (
    ArSpec, BreakSpec, PairSpec, VarSpec, VeronaSpec,
    gen_ar, gen_cointegrated_pair, gen_var, gen_verona_like, gen_with_break,
)
from .stability import LEVELS, AdfSpec, adf_critical, adf_test, qlr_critical, qlr_test
from .var import fit_var, forecast_var, granger_table, granger_test, select_var_lag


class UsageError(Exception):
    pass


def _quarter(tok: str) -> QuarterIndex:
    try:
        return QuarterIndex.parse(tok)
    except EconokitError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _pct(level: float) -> str:
    return f"{level:.0%}"


# -- input ------------------------------------------------------------------

def _load(args, path: str) -> Series:
    s = read_csv(path, locale_comma=args.locale_comma)
    if getattr(args, "transform", "level") == "logdiff":
        s = log_diff(s)
    return s


def _single(args) -> Series:
    if len(args.input) != 1:
        raise UsageError(f"{args.command} takes exactly one --input")
    s = _load(args, args.input[0])
    if args.start or args.end:
        s = s.window(args.start, args.end)
    return s


def _multi(args, n: int | None = None) -> list[Series]:
    if n is not None and len(args.input) != n:
        raise UsageError(f"{args.command} takes exactly {n} --input files")
    if n is None and len(args.input) < 2:
        raise UsageError(f"{args.command} needs at least two --input files")
    return [_load(args, p) for p in args.input]


def _sample(args):
    if args.start is None and args.end is None:
        return None
    if args.start is None or args.end is None:
        raise UsageError("--from and --to must be given together for multi-series commands")
    return (args.start, args.end)


# -- commands ---------------------------------------------------------------

def cmd_summarize(args, out):
    s = _single(args)
    st = summary(s)
    rows = [["count", st.count], ["mean", st.mean], ["sd", st.sd], ["annual mean (4 x quarterly)", annualized(st.mean)],
            ["first", s.start], ["last", s.end]]
    return rp.ReportDocument("summarize").add(rp.table_section(f"Summary of {s.name}", ["statistic", "value"], rows))


def cmd_acf(args, out):
    s = _single(args)
    t = acf(s, args.max_lag)
    rows = [[j, r] for j, r in zip(t.lags, t.rho)]
    return rp.ReportDocument("acf").add(rp.table_section(f"Autocorrelations of {s.name}", ["lag", "rho"], rows))


def cmd_fit_ar(args, out):
    s = _single(args)
    m = fit_ar(s, args.lags)
    doc = rp.ReportDocument("fit-ar")
    doc.add(rp.coefficient_section(m.fit, f"AR({m.p}) for {s.name}"))
    doc.add(rp.ci_section(m.fit))
    return doc


def cmd_select_lag(args, out):
    s = _single(args)
    sel = select_ar_lag(s, args.max_lag, args.min_lag)
    cols = {"BIC": sel.bic, "AIC": sel.aic, "Adjusted R^2": sel.adj_r2, "SER": sel.ser}
    sec = rp.criteria_section(f"Lag selection for {s.name} (common sample T = {sel.T})", sel.candidates, cols,
                              {"BIC": sel.chosen_bic, "AIC": sel.chosen_aic})
    verdicts = rp.Section("verdicts", "Chosen lag order", {"items": [
        rp.verdict_item("BIC", sel.chosen_bic, None, 0.0, False, f"BIC selects p = {sel.chosen_bic}"),
        rp.verdict_item("AIC", sel.chosen_aic, None, 0.0, False, f"AIC selects p = {sel.chosen_aic}"),
    ]})
    return rp.ReportDocument("select-lag").add(sec).add(verdicts)


def cmd_forecast(args, out):
    s = _single(args)
    m = fit_ar(s, args.lags)
    path = forecast_ar(m, s, args.horizon)
    if args.fanchart:
        buf = io.StringIO()
        rp.emit_fanchart(s, path, buf)
        out[args.fanchart] = buf.getvalue()
    doc = rp.ReportDocument("forecast")
    doc.add(rp.forecast_section(path, f"AR({m.p}) forecasts of {s.name} from {s.end.label()}"))
    return doc


def cmd_adf(args, out):
    level = _match_level(args.level)
    s = _single(args)
    det = "intercept_and_trend" if args.trend == "linear" else "intercept_only"
    res = adf_test(s, AdfSpec(det, args.lags))
    crit = adf_critical(det, level)
    reject = res.decisions[level]
    alt = "stationarity around a linear trend" if det == "intercept_and_trend" else "stationarity"
    verdict = "reject unit root" if reject else "fail to reject unit root"
    text = f"t = {res.t_stat:.4f}; {_pct(args.level)} critical {crit:.2f}; {verdict} (alternative: {alt})"
    items = [rp.verdict_item("ADF", res.t_stat, crit, args.level, reject, text)]
    table = [[_pct(L), adf_critical(det, L), res.decisions[L]] for L in LEVELS]
    doc = rp.ReportDocument("adf")
    doc.add(rp.coefficient_section(res.fit, f"ADF regression for {s.name} ({args.lags} lags, {det.replace('_', ' ')})"))
    doc.add(rp.table_section("Critical values", ["level", "critical", "reject"], table))
    doc.add(rp.Section("verdicts", "ADF test", {"items": items}))
    return doc


def _match_level(level: float) -> float:
    for L in LEVELS:
        if abs(L - level) < 1e-12:
            return L
    raise UsageError("--level must be one of 0.10, 0.05, 0.01")


def cmd_qlr(args, out):
    s = _single(args)
    base = ar_design(s, args.lags)
    res = qlr_test(base, args.trimming)
    doc = rp.ReportDocument("qlr")
    rows = [[d, f] for d, f in zip(res.candidates, res.f_values)]
    doc.add(rp.table_section(f"Chow F statistics, AR({args.lags}) for {s.name}, {res.trimming:.0%} trimming",
                             ["break", "F"], rows))
    items = []
    if res.decisions is None:
        text = (f"QLR = {res.qlr_stat:.4f} at {res.break_at.label()} ({res.q} restrictions); "
                f"critical values not tabulated for q = {res.q}")
        items.append(rp.verdict_item("QLR", res.qlr_stat, None, 0.0, False, text))
    else:
        for L in LEVELS:
            c = qlr_critical(res.q, L)
            word = "reject" if res.decisions[L] else "do not reject"
            text = (f"QLR = {res.qlr_stat:.4f} at {res.break_at.label()} ({res.q} restrictions); "
                    f"{_pct(L)} critical {c:.2f}; {word} coefficient stability")
            items.append(rp.verdict_item("QLR", res.qlr_stat, c, L, res.decisions[L], text))
    doc.add(rp.Section("verdicts", "QLR test", {"items": items}))
    return doc


def cmd_fit_var(args, out):
    ss = _multi(args)
    m = fit_var(ss, args.lags, _sample(args))
    doc = rp.ReportDocument("fit-var")
    for v, eq in zip(m.variables, m.equations):
        doc.add(rp.coefficient_section(eq, f"VAR({m.p}) equation for {v}"))
    cov = [[v] + list(row) for v, row in zip(m.variables, m.resid_cov)]
    doc.add(rp.table_section("Residual covariance", [""] + list(m.variables), cov))
    return doc


def cmd_var_select(args, out):
    ss = _multi(args)
    sel = select_var_lag(ss, args.max_lag, _sample(args))
    sec = rp.criteria_section(f"VAR lag lengths (common sample T = {sel.T})", sel.candidates,
                              {"AIC(p)": sel.aic, "BIC(p)": sel.bic},
                              {"AIC(p)": sel.chosen_aic, "BIC(p)": sel.chosen_bic})
    return rp.ReportDocument("var-select").add(sec)


def cmd_granger(args, out):
    level = _match_level(args.level)
    ss = _multi(args)
    m = fit_var(ss, args.lags, _sample(args))
    if args.cause or args.effect:
        if not (args.cause and args.effect):
            raise UsageError("--cause and --effect must be given together")
        results = [granger_test(m, args.cause, args.effect)]
    else:
        results = granger_table(m)
    rows = [[r.effect, r.cause, r.f.value, r.f.p_value] for r in results]
    items = []
    for r in results:
        text = f"F = {r.f.value:.4f}, p = {r.f.p_value:.4f}: {r.verdict(level)}"
        items.append(rp.verdict_item("Granger", r.f.value, None, level, r.decisions[level], text))
    doc = rp.ReportDocument("granger")
    doc.add(rp.table_section(f"Granger causality, VAR({m.p})", ["equation", "excluded", "F", "p-Value"], rows))
    doc.add(rp.Section("verdicts", "Granger verdicts", {"items": items}))
    return doc


def cmd_var_forecast(args, out):
    ss = _multi(args)
    m = fit_var(ss, args.lags, _sample(args))
    paths = forecast_var(m, ss, args.horizon)
    doc = rp.ReportDocument("var-forecast")
    for s, path in zip(ss, paths):
        doc.add(rp.forecast_section(path, f"VAR({m.p}) forecasts of {path.name} from {path.origin.label()}"))
        if args.fanchart:
            buf = io.StringIO()
            rp.emit_fanchart(s, path, buf)
            out[f"{args.fanchart}{path.name}.csv"] = buf.getvalue()
    return doc


def cmd_coint(args, out):
    y, x = _multi(args, 2)
    res = egadf_test(y, x, args.lags, _sample(args))
    doc = rp.ReportDocument("coint")
    doc.add(rp.coefficient_section(res.stage1, f"Cointegrating regression: {res.normalization}"))
    items = []
    for L in LEVELS:
        c = res.critical_values[L]
        word = "cointegrated" if res.cointegrated[L] else "not cointegrated"
        text = f"EG-ADF = {res.adf_stat:.5f}; {_pct(L)} critical {c:.2f}; {word} (theta = {res.theta:.6g})"
        items.append(rp.verdict_item("EG-ADF", res.adf_stat, c, L, res.cointegrated[L], text))
    doc.add(rp.Section("verdicts", f"Engle-Granger test on z = {y.name} - theta * {x.name}", {"items": items}))
    return doc


def cmd_xcorr(args, out):
    a, b = _multi(args, 2)
    rows = lead_lag_corr(a, b, args.min, args.max)
    return rp.ReportDocument("xcorr").add(
        rp.table_section(f"corr({a.name}_t ; {b.name}_t+p)", ["p", "corr"], [[p, c] for p, c in rows]))


def _floats(tok: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in tok.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {tok!r}") from None


# stylized three-variable VAR(2) used by `simulate var`
DEMO_VAR = VarSpec(
    A=(((0.3, 0.1, 0.0), (0.0, 0.3, 0.1), (0.1, 0.0, 0.3)),
       ((0.25, 0.0, 0.0), (0.0, -0.25, 0.0), (0.0, 0.0, 0.2))),
    c=(0.01, 0.02, 0.005), cov=((1e-3, 2e-4, 0.0), (2e-4, 1e-3, 0.0), (0.0, 0.0, 5e-4)),
    names=("dEXP", "dIMP", "dACTE"),
)


def cmd_simulate(args, out):
    kind, T, seed, start = args.kind, args.T, args.seed, str(args.start) if args.start else "1991Q1"
    if kind in ("var", "cointegrated_pair") and not args.out:
        raise UsageError(f"simulate {kind} writes one file per series; give --out DIRECTORY")
    if kind == "ar":
        ss = [gen_ar(ArSpec(args.phi, args.c, args.sigma, T or 100, seed, start, args.name or "y"))]
    elif kind == "break_shift":
        ar = ArSpec(args.phi, args.c, args.sigma, T or 200, seed, start, args.name or "y")
        at = (args.break_at - QuarterIndex.parse(start)) if args.break_at else ar.T // 2
        ss = [gen_with_break(BreakSpec(ar, at, args.shift))]
    elif kind == "var":
        spec = VarSpec(DEMO_VAR.A, DEMO_VAR.c, DEMO_VAR.cov, T or 200, seed, DEMO_VAR.names, start)
        ss = gen_var(spec)
    elif kind == "cointegrated_pair":
        ss = list(gen_cointegrated_pair(PairSpec(alpha=args.alpha, theta=args.theta, T=T or 400, seed=seed, start=start)))
    else:
        brk = None if args.no_break else str(args.break_at or "2010Q1")
        ss = [gen_verona_like(VeronaSpec(T=T or 92, start=start, break_at=brk, break_size=args.break_size,
                                         seed=seed, name=args.name or "EXP"))]
    if len(ss) == 1:
        buf = io.StringIO()
        write_csv(ss[0], buf)
        if args.out:
            out[args.out] = buf.getvalue()
            return None
        return buf.getvalue()
    for s in ss:
        buf = io.StringIO()
        write_csv(s, buf)
        out[str(Path(args.out) / f"{s.name}.csv")] = buf.getvalue()
    return None


COMMANDS: dict[str, Callable] = {
    "summarize": cmd_summarize, "acf": cmd_acf, "fit-ar": cmd_fit_ar, "select-lag": cmd_select_lag,
    "forecast": cmd_forecast, "adf": cmd_adf, "qlr": cmd_qlr, "fit-var": cmd_fit_var,
    "var-select": cmd_var_select, "granger": cmd_granger, "var-forecast": cmd_var_forecast,
    "coint": cmd_coint, "xcorr": cmd_xcorr, "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (simulate only; accepted everywhere)")
    common.add_argument("--out", help="also write the report (or generated data) to this path")
    common.add_argument("--format", choices=("text", "json"), default="text")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", action="append", required=True, metavar="CSV",
                      help="date,value CSV file; repeat for multi-series commands")
    data.add_argument("--locale-comma", action="store_true",
                      help="input uses ';' separators and ',' decimal marks")
    data.add_argument("--from", dest="start", type=_quarter, help="first quarter of the estimation window")
    data.add_argument("--to", dest="end", type=_quarter, help="last quarter of the estimation window")
    data.add_argument("--transform", choices=("level", "logdiff"), default="level",
                      help="analyse levels or quarterly log differences")

    p = argparse.ArgumentParser(prog="econokit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *parents):
        return sub.add_parser(name, help=help_, parents=[common, *parents])

    add("summarize", "mean and standard deviation", data)
    a = add("acf", "sample autocorrelations", data)
    a.add_argument("--max-lag", type=int, default=7)
    a = add("fit-ar", "fit an AR(p) by OLS", data)
    a.add_argument("--lags", type=int, required=True)
    a = add("select-lag", "AIC/BIC lag-order table", data)
    a.add_argument("--max-lag", type=int, default=6)
    a.add_argument("--min-lag", type=int, default=1)
    a = add("forecast", "iterated AR forecasts with 95%% bands", data)
    a.add_argument("--lags", type=int, required=True)
    a.add_argument("--horizon", type=int, default=4)
    a.add_argument("--fanchart", help="write date,actual,forecast,lo95,hi95 CSV here")
    a = add("adf", "augmented Dickey-Fuller unit-root test", data)
    a.add_argument("--lags", type=int, default=0)
    a.add_argument("--trend", choices=("none", "linear"), default="none")
    a.add_argument("--level", type=float, default=0.05)
    a = add("qlr", "QLR structural-break test on an AR(p)", data)
    a.add_argument("--lags", type=int, required=True)
    a.add_argument("--trimming", type=float, default=0.15)
    a = add("fit-var", "fit a VAR(p)", data)
    a.add_argument("--lags", type=int, required=True)
    a = add("var-select", "VAR lag-length table", data)
    a.add_argument("--max-lag", type=int, default=8)
    a = add("granger", "Granger-causality F-tests in a VAR(p)", data)
    a.add_argument("--lags", type=int, required=True)
    a.add_argument("--cause")
    a.add_argument("--effect")
    a.add_argument("--level", type=float, default=0.10)
    a = add("var-forecast", "iterated VAR forecasts", data)
    a.add_argument("--lags", type=int, required=True)
    a.add_argument("--horizon", type=int, default=4)
    a.add_argument("--fanchart", metavar="PREFIX", help="write PREFIX<name>.csv fan-chart files")
    a = add("coint", "Engle-Granger cointegration test (first input on second)", data)
    a.add_argument("--lags", type=int, default=0)
    a = add("xcorr", "lead-lag correlations corr(a_t, b_t+p)", data)
    a.add_argument("--min", type=int, default=-4)
    a.add_argument("--max", type=int, default=4)

    a = add("simulate", "generate synthetic series as CSV")
    a.add_argument("kind", choices=("ar", "var", "break_shift", "cointegrated_pair", "verona_like"))
    a.add_argument("--T", type=int)
    a.add_argument("--start", type=_quarter)
    a.add_argument("--name")
    a.add_argument("--phi", type=_floats, default=(0.5,))
    a.add_argument("--c", type=float, default=0.0)
    a.add_argument("--sigma", type=float, default=1.0)
    a.add_argument("--shift", type=float, default=5.0)
    a.add_argument("--alpha", type=float, default=2.0)
    a.add_argument("--theta", type=float, default=3.0)
    a.add_argument("--break", dest="break_at", type=_quarter)
    a.add_argument("--break-size", type=float, default=-0.25)
    a.add_argument("--no-break", action="store_true")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    files: dict[str, str] = {}
    try:
        result = COMMANDS[args.command](args, files)
        if isinstance(result, rp.ReportDocument):
            text = rp.render_report(result, args.format)
            if args.out:
                files[args.out] = text
        else:
            text = result or ""
    except UsageError as e:
        parser.print_usage(stderr)
        stderr.write(f"econokit {args.command}: error: {e}\n")
        return 2
    except (EconokitError, np.linalg.LinAlgError) as e:
        stderr.write(f"econokit {args.command}: error: {e}\n")
        return 1
    try:
        for path, content in files.items():
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            Path(path).write_text(content)
    except OSError as e:
        stderr.write(f"econokit {args.command}: error: cannot write {e.filename}: {e.strerror}\n")
        return 1
    stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
