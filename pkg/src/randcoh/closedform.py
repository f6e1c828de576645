"""Closed-form Haar averages, variances and large-N limits.

Gamma ratios go through log-gamma differences; Gamma(N^2) alone overflows
for N around 13.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .specfun import SQRT_PI, laguerre_half_sum, log_beta

EULER_GAMMA = 0.57721566490153286061
NEGATIVITY_RATIO = 0.72037


@dataclass(frozen=True)
class ClosedFormValue:
    quantity: str
    N: int
    value: float
    alpha: Optional[float] = None
    limit_value: Optional[float] = None
    asymptotic: bool = False
    extras: dict = field(default_factory=dict)

    def __float__(self):
        return self.value


def _check_n(n, lo=1):
    if int(n) != n or n < lo:
        raise ValueError(f"N must be an integer >= {lo}, got {n!r}")
    return int(n)


def _check_alpha(alpha):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    return float(alpha)


def dirichlet_moment(n: int, exponents: Sequence[float]) -> float:
    """E[prod_i lambda_i^a_i] under the flat Dirichlet law on N weights.

    Missing trailing exponents are zero.
    """
    n = _check_n(n)
    a = [float(x) for x in exponents]
    if len(a) > n:
        raise ValueError("more exponents than weights")
    if any(x < 0 for x in a):
        raise ValueError("exponents must be non-negative")
    log = math.lgamma(n) - math.lgamma(n + sum(a)) + sum(math.lgamma(1 + x) for x in a)
    return math.exp(log)


def mean_l1_coherence(n: int) -> ClosedFormValue:
    n = _check_n(n)
    value = (n - 1) * math.pi / 4
    scaled = math.pi / 4 if n > 1 else 0.0
    return ClosedFormValue("mean_l1", n, value, extras={"scaled": scaled})


def mean_second_moment_l1(n: int) -> ClosedFormValue:
    n = _check_n(n)
    value = ((n - 1) * (n - 2) * (n - 3) * math.pi ** 2 / (16 * (n + 1))
             + (n - 1) * (n - 2) * math.pi / (n + 1)
             + 2 * (n - 1) / (n + 1))
    return ClosedFormValue("second_moment_l1", n, value)


def variance_l1_published(n: int) -> float:
    """(N-1)/(16(N+1)) [(16 - 5 pi) N + 7 pi^2 - 32 pi + 32], as printed.

    Kept for comparison only: it is not E[C^2] - E[C]^2 (off by a factor pi
    on the (16 - 5 pi) N term) and disagrees with sampling.
    """
    n = _check_n(n)
    pi = math.pi
    return (n - 1) / (16 * (n + 1)) * ((16 - 5 * pi) * n + (7 * pi ** 2 - 32 * pi + 32))


def variance_l1_coherence(n: int) -> ClosedFormValue:
    """Var[C_l1] = (N-1)/(16(N+1)) [(16 pi - 5 pi^2) N + 7 pi^2 - 32 pi + 32].

    This is exactly ``mean_second_moment_l1(n) - mean_l1_coherence(n)**2``.
    """
    n = _check_n(n)
    pi = math.pi
    value = (n - 1) / (16 * (n + 1)) * ((16 * pi - 5 * pi ** 2) * n + (7 * pi ** 2 - 32 * pi + 32))
    scaled = value / (n - 1) ** 2 if n > 1 else 0.0
    return ClosedFormValue("var_l1", n, value,
                           extras={"scaled": scaled, "published": variance_l1_published(n)})


def variance_l1_scaled(n: int) -> float:
    return variance_l1_coherence(n).extras["scaled"]


def mean_relative_entropy_coherence(n: int) -> ClosedFormValue:
    n = _check_n(n)
    value = math.fsum(1.0 / k for k in range(2, n + 1))
    ratio = value / math.log(n) if n > 1 else 0.0
    return ClosedFormValue("mean_relent", n, value, extras={"ratio_to_max": ratio})


def mean_bures_sq_to_max_coherent(n: int) -> ClosedFormValue:
    n = _check_n(n)
    value = 2.0 - math.exp(0.5 * math.log(n) + log_beta(0.5, n))
    return ClosedFormValue("mean_d2_b_coh", n, value, limit_value=2.0 - SQRT_PI)


def rms_trace_dist_to_max_coherent(n: int) -> ClosedFormValue:
    n = _check_n(n)
    mean_sq = (n - 1) * (4 - math.pi) / n
    return ClosedFormValue("rms_tr_coh", n, math.sqrt(mean_sq),
                           limit_value=math.sqrt(4 - math.pi),
                           extras={"mean_square": mean_sq})


def mean_trace_sq_to_max_coherent(n: int) -> float:
    return rms_trace_dist_to_max_coherent(n).extras["mean_square"]


def log_gamma_ratio_half(m: float) -> float:
    """ln[Gamma(m) / Gamma(m + 1/2)]."""
    return math.lgamma(m) - math.lgamma(m + 0.5)


def mean_root_sum_bipartite(n: int) -> float:
    """E[sum_i sqrt(lambda_i)] over Haar bipartite states, N x N."""
    n = _check_n(n)
    ratio = math.exp(log_gamma_ratio_half(n * n))
    return ratio * float(laguerre_half_sum(n))


def mean_bures_sq_to_max_entangled(n: int) -> ClosedFormValue:
    """2 [1 - N^(-1/2) Gamma(N^2)/Gamma(N^2+1/2) sum_{k<N} I_kk]."""
    n = _check_n(n)
    value = 2.0 * (1.0 - mean_root_sum_bipartite(n) / math.sqrt(n))
    return ClosedFormValue("mean_d2_b_ent", n, value)


def mean_negativity_reference(n: int) -> ClosedFormValue:
    """Large-N reference E Neg ~ 0.72037 Neg_max and the distances it implies.

    Not exact at finite N.
    """
    n = _check_n(n, lo=2)
    neg_max = (n - 1) / 2
    d2_tr = 4 * (1 - NEGATIVITY_RATIO) * (n - 1) / n
    return ClosedFormValue(
        "mean_negativity_ref", n, NEGATIVITY_RATIO * neg_max, asymptotic=True,
        extras={"scaled": NEGATIVITY_RATIO, "d2_tr": d2_tr, "d2_hs": d2_tr / 2,
                "d2_tr_limit": 4 * (1 - NEGATIVITY_RATIO),
                "d2_hs_limit": 2 * (1 - NEGATIVITY_RATIO)},
    )


def mean_diag_trace_distance(n: int) -> ClosedFormValue:
    n = _check_n(n)
    value = 2.0 * math.exp(n * math.log1p(-1.0 / n)) if n > 1 else 0.0
    return ClosedFormValue("mean_diag_trace", n, value, limit_value=2.0 / math.e)


def _log_purity_mean(n, alpha):
    return math.lgamma(alpha + 1) + math.lgamma(n + 1) - math.lgamma(alpha + n)


def mean_alpha_purity(n: int, alpha: float) -> ClosedFormValue:
    n, alpha = _check_n(n), _check_alpha(alpha)
    value = 1.0 if alpha == 1 else math.exp(_log_purity_mean(n, alpha))
    return ClosedFormValue("mean_alpha_purity", n, value, alpha=alpha)


def second_moment_alpha_purity(n: int, alpha: float) -> float:
    n, alpha = _check_n(n), _check_alpha(alpha)
    pre = math.lgamma(n + 1) - math.lgamma(n + 2 * alpha)
    return (math.exp(pre + math.lgamma(2 * alpha + 1))
            + (n - 1) * math.exp(pre + 2 * math.lgamma(alpha + 1)))


def variance_alpha_purity(n: int, alpha: float) -> ClosedFormValue:
    n, alpha = _check_n(n), _check_alpha(alpha)
    if alpha == 1 or n == 1:
        value = 0.0
    else:
        value = max(0.0, second_moment_alpha_purity(n, alpha) - math.exp(2 * _log_purity_mean(n, alpha)))
    if alpha > 1:
        trend = "vanishes"
    elif alpha < 1:
        trend = "diverges"
    else:
        trend = "zero"
    return ClosedFormValue("var_alpha_purity", n, value, alpha=alpha, extras={"large_n": trend})
