#!/usr/bin/env python3
"""Run every Monte Carlo vs closed-form claim and print a compact table."""
import argparse
import time
from dataclasses import dataclass

from randcoh.cli import CLAIMS, verify_rows


@dataclass
class Config:
    seed: int = 0
    samples: int = 0  # 0 keeps each claim's default
    threads: int = 0  # 0 means one per CPU


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    rows = verify_rows(list(CLAIMS), samples=cfg.samples or None, seed=cfg.seed,
                       threads=cfg.threads or None)
    print(f"{'claim':16s} {'N':>4s} {'alpha':>5s} {'target':>12s} {'estimate':>12s} {'z':>7s}")
    for r in rows:
        alpha = "" if r["alpha"] is None else f"{r['alpha']:g}"
        mark = "" if r["pass"] else "  <-- FAIL"
        print(f"{r['claim']:16s} {r['n']:4d} {alpha:>5s} {r['closed_form']:12.6g} "
              f"{r['estimate']:12.6g} {r['z']:+7.2f}{mark}")
    bad = sum(not r["pass"] for r in rows)
    print(f"{len(rows) - bad}/{len(rows)} rows pass in {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--threads", type=int, default=0)
    raise SystemExit(main(Config(**vars(p.parse_args()))))
