#!/usr/bin/env python3
"""Empirical tails of l1 coherence, scaled and unscaled, against the Levy and Chebyshev bounds.

Shows that the unscaled quantity does not concentrate (its tails at fixed
epsilon grow with N) while the scaled one does, and how loose the Levy
constant is at moderate N.
"""
import argparse
import math
from dataclasses import dataclass, field

from randcoh import closedform as cf
from randcoh import concentration as conc
from randcoh.montecarlo import QuantitySpec, run


@dataclass
class Config:
    ns: list = field(default_factory=lambda: [4, 16, 64, 256])
    epsilon_unscaled: float = 1.0
    epsilon_scaled: float = 0.05
    samples: int = 50_000
    seed: int = 0


def main(cfg: Config):
    print(f"{'N':>5s} {'tail(C, eps)':>13s} {'tail(C/(N-1))':>14s} {'Levy':>8s} {'Chebyshev':>10s}")
    for n in cfg.ns:
        u = run(QuantitySpec("l1", n), cfg.samples, cfg.seed,
                tails=[(cf.mean_l1_coherence(n).value, cfg.epsilon_unscaled)]).tails[0]
        s = run(QuantitySpec("l1_scaled", n), cfg.samples, cfg.seed,
                tails=[(math.pi / 4, cfg.epsilon_scaled)]).tails[0]
        levy = conc.bound_l1_scaled(n, cfg.epsilon_scaled).analytic_bound
        cheb = conc.chebyshev_bound(cf.variance_l1_scaled(n), cfg.epsilon_scaled)
        print(f"{n:5d} {u.fraction:13.4f} {s.fraction:14.4f} {min(levy, 1):8.4f} {cheb:10.4f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--ns", type=lambda s: [int(x) for x in s.split(",")], default=Config().ns)
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    main(Config(**vars(p.parse_args())))
