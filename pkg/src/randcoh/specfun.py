"""Special functions: log-gamma, beta, Laguerre polynomials and the exact
half-integer Laguerre moments that enter the entangled-set Bures average."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ExactHalfInteger:
    """A number of the form ``(numerator / denominator) * sqrt(pi)``."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.numerator, self.denominator)
        if g != 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "ExactHalfInteger":
        return cls(q.numerator, q.denominator)

    @property
    def coefficient(self) -> Fraction:
        """The rational factor in front of sqrt(pi)."""
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other):
        if not isinstance(other, ExactHalfInteger):
            return NotImplemented
        return ExactHalfInteger.from_fraction(self.coefficient + other.coefficient)

    def __float__(self):
        return float(self.coefficient) * SQRT_PI


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0 (backed by the C library ``lgamma``)."""
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_beta(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise ValueError(f"beta requires positive arguments, got ({x!r}, {y!r})")
    return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)


def beta(x: float, y: float) -> float:
    """B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), evaluated in log space."""
    return math.exp(log_beta(x, y))


def laguerre(k: int, x):
    """L_k(x) by the three-term recurrence; ``x`` may be a scalar or an array."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 - x
    for n in range(1, k):
        prev, cur = cur, ((2 * n + 1 - x) * cur - n * prev) / (n + 1)
    return cur[()] if cur.ndim == 0 else cur


def double_factorial(n: int) -> int:
    """n!! as an exact integer (with (-1)!! = 0!! = 1)."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    out = 1
    for j in range(n, 1, -2):
        out *= j
    return out


@lru_cache(maxsize=None)
def laguerre_integral_half(k: int) -> ExactHalfInteger:
    """Exact value of the integral of exp(-x) x^(1/2) L_k(x)^2 over [0, inf).

    Uses the single alternating sum

        (-1)^k / k! * sum_n (-1)^n C(k, n) Gamma(n+3/2)^2 / (n! Gamma(n-k+3/2))

    with Gamma(n+3/2) = sqrt(pi) (2n+1)!! / 2^(n+1) and
    Gamma(n+3/2) / Gamma(n-k+3/2) = prod_{j<k} (2n+1-2j) / 2^k.
    Every term is scaled by k! 2^(k+1) so the sum is carried in integers.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    kfact = math.factorial(k)
    # P(n) = prod_{j<k} (2n+1-2j), advanced in n by an exact ratio
    prod = 1
    for j in range(k):
        prod *= 1 - 2 * j
    dfact = 1  # (2n+1)!!
    n_fact = 1
    total = 0
    for n in range(k + 1):
        if n > 0:
            dfact *= 2 * n + 1
            n_fact *= n
            prod = prod * (2 * n + 1) // (2 * n + 1 - 2 * k)
        term = math.comb(k, n) * dfact * prod * (kfact // n_fact) << (k - n)
        total += -term if n % 2 else term
    if k % 2:
        total = -total
    return ExactHalfInteger(total, kfact * kfact << (2 * k + 1))


@lru_cache(maxsize=None)
def laguerre_half_sum(n: int) -> ExactHalfInteger:
    """Sum of laguerre_integral_half(k) over k = 0 .. n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = Fraction(0)
    for k in range(n):
        acc += laguerre_integral_half(k).coefficient
    return ExactHalfInteger.from_fraction(acc)
