"""Reproducible Monte Carlo estimation of Haar averages.

Sample indices are split into contiguous blocks of ``BLOCK`` samples; block b
draws from ``substream(master_seed, b)``.  Each block is reduced to an
:class:`Accumulator` whose moment sums are exact rationals, so merging is
exactly associative and the final report does not depend on how blocks were
scheduled across workers.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Optional, Sequence

import numpy as np

from . import distances as dist
from . import measures as meas
from .concentration import TailCount, count_tail
from .states import haar_amplitudes, haar_bipartite_amplitudes, schmidt_lambdas, substream

BLOCK = 1024


@dataclass(frozen=True)
class Accumulator:
    """Count and exact shifted moment sums: s1 = sum(x - shift), s2 = sum((x - shift)^2)."""

    count: int = 0
    shift: float = 0.0
    s1: Fraction = Fraction(0)
    s2: Fraction = Fraction(0)

    @classmethod
    def from_values(cls, values) -> "Accumulator":
        x = np.asarray(values, dtype=float).ravel()
        if x.size == 0:
            return cls()
        shift = float(x[0])
        d = x - shift
        return cls(int(x.size), shift, Fraction(math.fsum(d)), Fraction(math.fsum(d * d)))

    def merge(self, other: "Accumulator") -> "Accumulator":
        if other.count == 0:
            return self
        if self.count == 0:
            return other
        delta = Fraction(other.shift) - Fraction(self.shift)
        s1 = self.s1 + other.s1 + other.count * delta
        s2 = self.s2 + other.s2 + 2 * delta * other.s1 + other.count * delta * delta
        return Accumulator(self.count + other.count, self.shift, s1, s2)

    def _exact_mean(self) -> Fraction:
        return Fraction(self.shift) + self.s1 / self.count

    @property
    def mean(self) -> float:
        if self.count == 0:
            raise ValueError("empty accumulator")
        return float(self._exact_mean())

    @property
    def variance(self) -> float:
        """Unbiased sample variance (0 for a single sample)."""
        if self.count < 2:
            return 0.0
        m2 = self.s2 - self.s1 * self.s1 / self.count
        return max(0.0, float(m2 / (self.count - 1)))

    def state(self) -> tuple:
        """Canonical exact state, independent of the shift."""
        if self.count == 0:
            return (0, Fraction(0), Fraction(0))
        m2 = self.s2 - self.s1 * self.s1 / self.count
        return (self.count, self._exact_mean(), m2)


# -- quantities ---------------------------------------------------------------

def _scaled(fn, denom):
    return lambda w: fn(w) / denom


@dataclass(frozen=True)
class QuantitySpec:
    quantity: str
    N: int
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}; choose from {sorted(QUANTITIES)}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")
        if self.quantity in ("l1_scaled", "negativity_scaled") and self.N < 2:
            raise ValueError(f"{self.quantity} needs N >= 2")
        if self.quantity == "alpha_purity":
            if self.alpha is None or not self.alpha > 0:
                raise ValueError("alpha_purity needs a positive alpha")
        elif self.alpha is not None:
            raise ValueError(f"alpha is only meaningful for alpha_purity, not {self.quantity}")

    @property
    def bipartite(self) -> bool:
        return QUANTITIES[self.quantity][0]

    def functional(self) -> Callable[[np.ndarray], np.ndarray]:
        """Map a (size, N) array of weights to (size,) values."""
        n = self.N
        q = self.quantity
        if q == "l1_scaled":
            return _scaled(meas.l1_from_weights, n - 1)
        if q == "negativity_scaled":
            return _scaled(meas.negativity_from_weights, (n - 1) / 2)
        if q == "alpha_purity":
            return lambda w: meas.alpha_purity_from_weights(w, self.alpha)
        return QUANTITIES[q][1]


# id -> (bipartite?, weights functional)
QUANTITIES: dict[str, tuple[bool, Optional[Callable]]] = {
    "l1": (False, meas.l1_from_weights),
    "l1_scaled": (False, None),
    "relent": (False, meas.relent_from_weights),
    "negativity": (True, meas.negativity_from_weights),
    "negativity_scaled": (True, None),
    "d2_tr_ent": (True, dist.trace_sq_from_weights),
    "d2_hs_ent": (True, dist.hs_sq_from_weights),
    "d2_b_ent": (True, dist.bures_sq_from_weights),
    "d2_tr_coh": (False, dist.trace_sq_from_weights),
    "d2_hs_coh": (False, dist.hs_sq_from_weights),
    "d2_b_coh": (False, dist.bures_sq_from_weights),
    "diag_trace_dist": (False, dist.diag_trace_from_weights),
    "alpha_purity": (False, None),
}


def sample_weights(spec: QuantitySpec, size: int, stream: np.random.Generator) -> np.ndarray:
    """Diagonals (single) or Schmidt weights (bipartite) of Haar-random states."""
    if spec.bipartite:
        return schmidt_lambdas(haar_bipartite_amplitudes(spec.N, size, stream))
    return np.abs(haar_amplitudes(spec.N, size, stream)) ** 2


def block_values(spec: QuantitySpec, block: int, samples: int, master_seed: int) -> np.ndarray:
    """Functional values for the sample indices of one block."""
    start = block * BLOCK
    size = min(BLOCK, samples - start)
    w = sample_weights(spec, size, substream(master_seed, block))
    return np.asarray(spec.functional()(w), dtype=float)


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class EstimateReport:
    quantity: str
    N: int
    alpha: Optional[float]
    samples: int
    mean: float
    variance: float
    stderr: float
    master_seed: int
    elapsed: float = 0.0
    batch_variance_stderr: Optional[float] = None


@dataclass(frozen=True)
class TailReport:
    quantity: str
    N: int
    alpha: Optional[float]
    center: float
    epsilon: float
    samples: int
    exceed: int
    tail: float
    stderr: float
    master_seed: int


@dataclass(frozen=True)
class RunResult:
    spec: QuantitySpec
    samples: int
    master_seed: int
    accumulator: Accumulator
    blocks: tuple
    tails: tuple
    elapsed: float


def default_threads() -> int:
    return os.cpu_count() or 1


def run(spec: QuantitySpec, samples: int, master_seed: int, *,
        tails: Sequence[tuple[float, float]] = (), threads: Optional[int] = None) -> RunResult:
    """Stream ``samples`` Haar samples through ``spec``'s functional.

    ``tails`` is a list of (center, epsilon) pairs whose exceedances are
    counted alongside the moments.
    """
    if int(samples) != samples or samples < 1:
        raise ValueError("samples must be a positive integer")
    samples = int(samples)
    nblocks = -(-samples // BLOCK)
    threads = default_threads() if threads is None else max(1, int(threads))

    def work(b):
        x = block_values(spec, b, samples, master_seed)
        return Accumulator.from_values(x), tuple(count_tail(x, c, e) for c, e in tails)

    t0 = time.perf_counter()
    try:
        if threads == 1 or nblocks == 1:
            parts = [work(b) for b in range(nblocks)]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(work, range(nblocks)))
    except MemoryError as exc:
        raise RuntimeError(f"out of memory sampling {spec.quantity} at N={spec.N}") from exc
    accs = tuple(p[0] for p in parts)
    total = reduce(Accumulator.merge, accs, Accumulator())
    tail_totals = tuple(
        reduce(TailCount.merge, (p[1][i] for p in parts), TailCount()) for i in range(len(tails))
    )
    return RunResult(spec, samples, master_seed, total, accs, tail_totals,
                     time.perf_counter() - t0)


def _batch_variance_stderr(blocks: Sequence[Accumulator]) -> Optional[float]:
    full = [b.variance for b in blocks if b.count == BLOCK]
    if len(full) < 8:
        return None
    return float(np.std(full, ddof=1) / math.sqrt(len(full)))


def report_from_run(res: RunResult) -> EstimateReport:
    acc = res.accumulator
    var = acc.variance
    return EstimateReport(
        res.spec.quantity, res.spec.N, res.spec.alpha, res.samples, acc.mean, var,
        math.sqrt(var / res.samples), res.master_seed, res.elapsed,
        _batch_variance_stderr(res.blocks),
    )


def estimate(spec: QuantitySpec, samples: int, master_seed: int, *,
             threads: Optional[int] = None) -> EstimateReport:
    return report_from_run(run(spec, samples, master_seed, threads=threads))


def estimate_tail(spec: QuantitySpec, center: float, epsilon: float, samples: int,
                  master_seed: int, *, threads: Optional[int] = None) -> TailReport:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    res = run(spec, samples, master_seed, tails=[(center, epsilon)], threads=threads)
    tc = res.tails[0]
    return TailReport(spec.quantity, spec.N, spec.alpha, center, epsilon, samples,
                      tc.exceed, tc.fraction, tc.stderr, master_seed)
