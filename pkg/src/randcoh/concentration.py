"""Levy-type concentration bounds, Chebyshev, and empirical tail frequencies.

A pure state of C^N is a point of the real sphere S^(2N-1), so the Levy
exponent uses k + 1 = 2N (and 2N^2 for an N x N bipartite state).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

LEVY_DENOM = 9 * math.pi ** 3 * math.log(2)


@dataclass(frozen=True)
class LevyParameters:
    sphere_dim_k: int
    lipschitz_eta: float
    epsilon: float

    def __post_init__(self):
        if not (self.sphere_dim_k > 0 and self.lipschitz_eta > 0 and self.epsilon > 0):
            raise ValueError("Levy parameters must all be strictly positive")


@dataclass(frozen=True)
class BoundReport:
    quantity: str
    N: int
    epsilon: float
    analytic_bound: float
    levy_reconstruction: Optional[float] = None
    empirical_tail: Optional[float] = None
    tail_stderr: Optional[float] = None
    samples: Optional[int] = None

    def sound(self, n_sigma: float = 3.0) -> Optional[bool]:
        """Whether the empirical tail respects the bound (None if not comparable)."""
        if self.empirical_tail is None or self.analytic_bound >= 1:
            return None
        return self.empirical_tail <= self.analytic_bound + n_sigma * (self.tail_stderr or 0.0)


def _exp_bound(exponent: float) -> float:
    return min(2.0, 2.0 * math.exp(-exponent))


def levy_bound(params: LevyParameters) -> float:
    """2 exp(-(k+1) eps^2 / (9 pi^3 eta^2 ln 2)), capped at 2."""
    k, eta, eps = params.sphere_dim_k, params.lipschitz_eta, params.epsilon
    return _exp_bound((k + 1) * eps ** 2 / (LEVY_DENOM * eta ** 2))


def _check(n, eps, lo=2):
    if int(n) != n or n < lo:
        raise ValueError(f"N must be an integer >= {lo}")
    if not eps > 0:
        raise ValueError("epsilon must be positive")


def bound_l1_unscaled(n: int, epsilon: float) -> BoundReport:
    """Tail of C_l1 around (N-1) pi / 4; does not vanish as N grows."""
    _check(n, epsilon)
    stated = _exp_bound(4 * epsilon ** 2 / (LEVY_DENOM * n))
    recon = levy_bound(LevyParameters(2 * n - 1, n / math.sqrt(2), epsilon))
    return BoundReport("l1", n, epsilon, stated, recon)


def bound_l1_scaled(n: int, epsilon: float) -> BoundReport:
    """Tail of C_l1 / (N-1) around pi / 4."""
    _check(n, epsilon)
    stated = _exp_bound(4 * (n - 1) ** 2 * epsilon ** 2 / (LEVY_DENOM * n))
    recon = levy_bound(LevyParameters(2 * n - 1, n / (math.sqrt(2) * (n - 1)), epsilon))
    return BoundReport("l1_scaled", n, epsilon, stated, recon)


def bound_negativity_scaled(n: int, epsilon: float) -> BoundReport:
    """Tail of Neg / Neg_max around its mean.

    ``analytic_bound`` carries the coefficient 16 (N-1)^2 as published; the
    Levy reconstruction from eta = N / (sqrt(2)(N-1)) and k + 1 = 2 N^2 gives
    4 (N-1)^2 and is attached as ``levy_reconstruction``.  The two differ.
    """
    _check(n, epsilon)
    stated = _exp_bound(16 * (n - 1) ** 2 * epsilon ** 2 / LEVY_DENOM)
    recon = levy_bound(LevyParameters(2 * n * n - 1, n / (math.sqrt(2) * (n - 1)), epsilon))
    return BoundReport("negativity_scaled", n, epsilon, stated, recon)


def negativity_exponent_ratio(n: int, epsilon: float = 1.0) -> float:
    """Published exponent over reconstructed exponent (4 for every N)."""
    _check(n, epsilon)
    published = 16 * (n - 1) ** 2 * epsilon ** 2 / LEVY_DENOM
    eta = n / (math.sqrt(2) * (n - 1))
    recon = 2 * n * n * epsilon ** 2 / (LEVY_DENOM * eta ** 2)
    return published / recon


def bound_tr_dist_coherent(n: int, epsilon: float) -> BoundReport:
    """Tail of the squared trace distance to the maximally coherent set."""
    _check(n, epsilon)
    stated = _exp_bound(n * epsilon ** 2 / (36 * math.pi ** 3 * math.log(2)))
    recon = levy_bound(LevyParameters(2 * n - 1, 2 * math.sqrt(2), epsilon))
    return BoundReport("d2_tr_coh", n, epsilon, stated, recon)


def bound_bures_coherent(n: int, epsilon: float) -> BoundReport:
    """Tail of the squared Bures distance to the maximally coherent set."""
    _check(n, epsilon)
    stated = _exp_bound(n * epsilon ** 2 / LEVY_DENOM)
    recon = levy_bound(LevyParameters(2 * n - 1, math.sqrt(2), epsilon))
    return BoundReport("d2_b_coh", n, epsilon, stated, recon)


def chebyshev_bound(variance: float, epsilon: float) -> float:
    if variance < 0:
        raise ValueError("variance must be non-negative")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return min(1.0, variance / epsilon ** 2)


@dataclass(frozen=True)
class TailCount:
    """Exceedance count; merging is integer addition, so it is exact and associative."""

    exceed: int = 0
    total: int = 0

    def merge(self, other: "TailCount") -> "TailCount":
        return TailCount(self.exceed + other.exceed, self.total + other.total)

    @property
    def fraction(self) -> float:
        if self.total == 0:
            raise ValueError("no samples")
        return self.exceed / self.total

    @property
    def stderr(self) -> float:
        p = self.fraction
        return math.sqrt(p * (1 - p) / self.total)


def count_tail(samples, center: float, epsilon: float) -> TailCount:
    x = np.asarray(samples, dtype=float).ravel()
    return TailCount(int(np.count_nonzero(np.abs(x - center) > epsilon)), int(x.size))


def empirical_tail(samples, center: float, epsilon: float) -> tuple[float, float]:
    """Fraction of samples with |x - center| > epsilon, and its binomial stderr."""
    tc = count_tail(samples, center, epsilon)
    if tc.total == 0:
        raise ValueError("empirical_tail needs at least one sample")
    return tc.fraction, tc.stderr
