"""Distances from a pure state to the maximally entangled set and to the
maximally coherent set.

Both sets give the same closed forms in terms of s = sum_i sqrt(lambda_i),
with lambda the Schmidt weights (entangled case) or the diagonal (coherent
case):

    trace  = 2 sqrt(1 - s^2 / N)
    HS     = trace / sqrt(2)
    Bures  = sqrt(2) sqrt(1 - s / sqrt(N))

Radicands are clamped to [0, 1]; they dip to about -1e-15 next to members of
either set.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import l1_from_weights, negativity_from_weights, root_sum
from .states import PureState, SchmidtSpectrum, SimplexPoint


@dataclass(frozen=True)
class DistanceTriple:
    trace: float
    hilbert_schmidt: float
    bures: float


def trace_sq_from_weights(weights):
    w = np.asarray(weights, dtype=float)
    n = w.shape[-1]
    s = root_sum(w)
    return 4.0 * np.clip(1.0 - s * s / n, 0.0, 1.0)


def hs_sq_from_weights(weights):
    return 0.5 * trace_sq_from_weights(weights)


def bures_sq_from_weights(weights):
    w = np.asarray(weights, dtype=float)
    n = w.shape[-1]
    return 2.0 * np.clip(1.0 - root_sum(w) / np.sqrt(n), 0.0, 1.0)


def diag_trace_from_weights(weights):
    w = np.asarray(weights, dtype=float)
    return np.abs(w - 1.0 / w.shape[-1]).sum(axis=-1)


def _triple(weights) -> DistanceTriple:
    d2 = float(trace_sq_from_weights(weights))
    trace = np.sqrt(d2)
    return DistanceTriple(float(trace), float(trace / np.sqrt(2.0)),
                          float(np.sqrt(bures_sq_from_weights(weights))))


def distance_to_max_entangled(spectrum: SchmidtSpectrum) -> DistanceTriple:
    return _triple(spectrum.lambdas)


def distance_to_max_coherent(state: PureState) -> DistanceTriple:
    # matching each phase of the target state to psi attains the infimum
    return _triple(np.abs(state.amplitudes) ** 2)


def coherent_minimizer(state: PureState) -> PureState:
    """The phase-matched maximally coherent state closest to ``state``."""
    phases = np.angle(state.amplitudes)
    return PureState.uniform(state.dim, phases)


def complementarity_residuals(x, which: str) -> tuple[float, float, float, float]:
    """Residuals of the distance/measure complementarity identities.

    ``which="entangled"`` takes a SchmidtSpectrum and checks
    N D_Tr^2 / 8 + Neg = Neg_max and N D_HS^2 / 4 + Neg = Neg_max.
    ``which="coherent"`` takes a PureState (or SimplexPoint diagonal) and checks
    N D_Tr^2 / 4 + C_l1 = N - 1 and N D_HS^2 / 2 + C_l1 = N - 1.

    Returns the two absolute residuals followed by the same two relative to
    the maximum of the measure (0 when that maximum is 0).
    """
    if which == "entangled":
        if not isinstance(x, SchmidtSpectrum):
            raise TypeError("entangled residuals need a SchmidtSpectrum")
        w = x.lambdas
        n = w.size
        measure, cap = float(negativity_from_weights(w)), (n - 1) / 2
        c_tr, c_hs = n / 8, n / 4
    elif which == "coherent":
        if isinstance(x, PureState):
            w = np.abs(x.amplitudes) ** 2
        elif isinstance(x, SimplexPoint):
            w = x.weights
        else:
            raise TypeError("coherent residuals need a PureState or SimplexPoint")
        n = w.size
        measure, cap = float(l1_from_weights(w)), n - 1.0
        c_tr, c_hs = n / 4, n / 2
    else:
        raise ValueError(f"which must be 'entangled' or 'coherent', got {which!r}")
    r_tr = abs(c_tr * float(trace_sq_from_weights(w)) + measure - cap)
    r_hs = abs(c_hs * float(hs_sq_from_weights(w)) + measure - cap)
    rel = (lambda r: r / cap) if cap > 0 else (lambda r: 0.0)
    return r_tr, r_hs, rel(r_tr), rel(r_hs)


def diag_trace_distance_to_maxmixed(diag: SimplexPoint) -> float:
    """|| diag - I/N ||_1 for a diagonal state."""
    return float(diag_trace_from_weights(diag.weights))


def sqrt_trace_inequality_check(p: SimplexPoint, q: SimplexPoint) -> float:
    """||p - q||_1 - ||sqrt(p) - sqrt(q)||_2^2 for commuting (diagonal) pairs.

    Non-negative up to rounding.
    """
    if p.dim != q.dim:
        raise ValueError(f"length mismatch: {p.dim} vs {q.dim}")
    a, b = p.weights, q.weights
    return float(np.abs(a - b).sum() - ((np.sqrt(a) - np.sqrt(b)) ** 2).sum())
