#!/usr/bin/env python3
"""Size and power of the test battery on synthetic data.

    python3 scripts/run_monte_carlo.py --runs 500 --T 200
"""

import argparse
import time
from dataclasses import dataclass, asdict

from econokit.experiments import (
    adf_rejection_rate, ar_bic_hit_rate, eg_rejection_rate, granger_rejection_rate, qlr_exceedance_rate,
    qlr_localization_rate, var_bic_hit_rate,
)


@dataclass(frozen=True)
class Config:
    runs: int = 2000
    T: int = 200
    seed: int = 1
    level: float = 0.05


def experiments(cfg: Config):
    r, T, s, L = cfg.runs, cfg.T, cfg.seed, cfg.level
    yield "ADF size (phi=1)", lambda: adf_rejection_rate(1.0, runs=r, T=T, level=L, seed=s)
    yield "ADF power (phi=0.5)", lambda: adf_rejection_rate(0.5, runs=r, T=T, level=L, seed=s + 1)
    yield "Granger size", lambda: granger_rejection_rate(0.0, runs=r, T=T, level=L, seed=s + 2)
    yield "Granger power (0.8)", lambda: granger_rejection_rate(0.8, runs=r, T=T, level=L, seed=s + 3)
    yield "QLR no-break exceedance", lambda: qlr_exceedance_rate(runs=r // 4, T=T, seed=s + 4)
    yield "QLR localization", lambda: qlr_localization_rate(runs=r // 4, T=T, seed=s + 5)
    yield "EG-ADF size", lambda: eg_rejection_rate(False, runs=r, T=T, level=L, seed=s + 6)
    yield "EG-ADF power", lambda: eg_rejection_rate(True, runs=r, T=T, level=L, seed=s + 7)
    yield "AR(2) BIC hit rate", lambda: ar_bic_hit_rate(runs=r // 4, T=2 * T, seed=s + 8)
    yield "VAR(2) BIC hit rate", lambda: var_bic_hit_rate(runs=r // 8, T=2 * T, seed=s + 9)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(Config()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(p.parse_args()))
    print(f"# {cfg}")
    for name, run in experiments(cfg):
        t0 = time.perf_counter()
        rate = run()
        print(f"{name:<26} {rate:7.4f}   ({time.perf_counter() - t0:5.1f}s)")


if __name__ == "__main__":
    main()
