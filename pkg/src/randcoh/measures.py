"""Coherence and entanglement measures of a single pure state.

The ``*_from_weights`` helpers act on arrays of probability vectors along the
last axis and are what the Monte Carlo harness calls; the object-level
functions wrap them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import PureState, SchmidtSpectrum, SimplexPoint


@dataclass(frozen=True)
class CoherenceValue:
    value: float
    dimension: int

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class NegativityValue:
    value: float
    max_value: float

    @property
    def scaled(self) -> float:
        return self.value / self.max_value if self.max_value > 0 else 0.0

    def __float__(self):
        return self.value


def root_sum(weights):
    """sum_i sqrt(w_i) along the last axis."""
    return np.sqrt(np.asarray(weights, dtype=float)).sum(axis=-1)


def l1_from_weights(weights):
    s = root_sum(weights)
    return s * s - 1.0


def relent_from_weights(weights):
    w = np.asarray(weights, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0, -w * np.log(np.where(w > 0, w, 1.0)), 0.0)
    return terms.sum(axis=-1)


def negativity_from_weights(weights):
    return 0.5 * l1_from_weights(weights)


def alpha_purity_from_weights(weights, alpha: float):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    w = np.asarray(weights, dtype=float)
    return np.where(w > 0, np.power(np.where(w > 0, w, 1.0), alpha), 0.0).sum(axis=-1)


def l1_coherence(state: PureState) -> CoherenceValue:
    """(sum_i |psi_i|)^2 - 1, the l1 norm of coherence of |psi><psi|."""
    s = float(np.abs(state.amplitudes).sum())
    return CoherenceValue(max(0.0, s * s - 1.0), state.dim)


def relative_entropy_coherence(state: PureState) -> CoherenceValue:
    """Shannon entropy (nats) of the diagonal in the reference basis."""
    w = np.abs(state.amplitudes) ** 2
    return CoherenceValue(float(relent_from_weights(w)), state.dim)


def negativity(spectrum: SchmidtSpectrum) -> NegativityValue:
    n = spectrum.dim
    return NegativityValue(max(0.0, float(negativity_from_weights(spectrum.lambdas))), (n - 1) / 2)


def alpha_classical_purity(diag: SimplexPoint, alpha: float) -> float:
    return float(alpha_purity_from_weights(diag.weights, alpha))
