"""Pure states, their Schmidt spectra and diagonals, and the samplers that
draw them from the Haar measure.

Every sampler takes an explicit ``numpy.random.Generator``.  Reproducible
substreams keyed on a master seed and an index come from :func:`substream`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
SPECTRUM_TOL = 1e-10
RENORM_SILENT = 1e-12
RENORM_MAX = 1e-9


class NormalizationError(ValueError):
    """Raised when a state or spectrum is too far from unit norm to repair."""


def substream(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for block ``index`` of a run seeded with ``master_seed``."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size < 1:
            raise ValueError("a pure state needs at least one amplitude")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"squared norm {norm!r} differs from 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def basis(cls, n: int, i: int = 0) -> "PureState":
        amps = np.zeros(n, dtype=complex)
        amps[i] = 1.0
        return cls(amps)

    @classmethod
    def uniform(cls, n: int, phases=None) -> "PureState":
        phases = np.zeros(n) if phases is None else np.asarray(phases, dtype=float)
        return cls(np.exp(1j * phases) / np.sqrt(n))


@dataclass(frozen=True)
class BipartitePureState:
    """Amplitude matrix: entry (i, j) multiplies |i>_A |j>_B."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1] or amps.shape[0] < 1:
            raise ValueError(f"expected a square N x N amplitude matrix, got shape {amps.shape}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"squared Frobenius norm {norm!r} differs from 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def as_vector(self) -> PureState:
        return PureState(self.amplitudes.ravel())

    @classmethod
    def maximally_entangled(cls, n: int) -> "BipartitePureState":
        return cls(np.eye(n) / np.sqrt(n))

    @classmethod
    def product(cls, n: int) -> "BipartitePureState":
        amps = np.zeros((n, n), dtype=complex)
        amps[0, 0] = 1.0
        return cls(amps)


def _check_probability_vector(w, tol):
    if w.ndim != 1 or w.size < 1:
        raise ValueError("expected a non-empty 1-d weight vector")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    if abs(w.sum() - 1.0) > tol:
        raise NormalizationError(f"weights sum to {w.sum()!r}")


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Squared Schmidt coefficients, sorted non-increasing."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.sort(np.asarray(self.lambdas, dtype=float).ravel())[::-1].copy()
        _check_probability_vector(lam, SPECTRUM_TOL)
        object.__setattr__(self, "lambdas", lam)

    @property
    def dim(self) -> int:
        return self.lambdas.size

    @classmethod
    def uniform(cls, n: int) -> "SchmidtSpectrum":
        return cls(np.full(n, 1.0 / n))


@dataclass(frozen=True)
class SimplexPoint:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        _check_probability_vector(w, NORM_TOL)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.weights.size


# -- batched samplers -------------------------------------------------------
# The draw for each sample is contiguous in the generator's output, so the
# k-th sample of a block does not depend on how many samples the block holds.

def haar_amplitudes(n: int, size: int, stream: np.random.Generator) -> np.ndarray:
    """``size`` Haar-random unit vectors in C^n, shape (size, n)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    g = stream.standard_normal((size, 2, n))
    z = g[:, 0, :] + 1j * g[:, 1, :]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_bipartite_amplitudes(n: int, size: int, stream: np.random.Generator) -> np.ndarray:
    """``size`` Haar-random N x N amplitude matrices, shape (size, n, n)."""
    return haar_amplitudes(n * n, size, stream).reshape(size, n, n)


def simplex_weights(n: int, size: int, stream: np.random.Generator) -> np.ndarray:
    """``size`` points of the flat Dirichlet(1, ..., 1) law, shape (size, n)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    e = stream.standard_exponential((size, n))
    return e / e.sum(axis=1, keepdims=True)


def schmidt_lambdas(amplitudes: np.ndarray) -> np.ndarray:
    """Squared singular values of (a stack of) amplitude matrices.

    Negative rounding is clamped to 0, sums drifting by more than 1e-12 are
    renormalized, and drift beyond 1e-9 raises ``NormalizationError``.
    Output is sorted non-increasing along the last axis.
    """
    s = np.linalg.svd(amplitudes, compute_uv=False)
    lam = np.clip(s * s, 0.0, None)
    total = lam.sum(axis=-1, keepdims=True)
    drift = np.abs(total - 1.0)
    if np.any(drift > RENORM_MAX):
        raise NormalizationError(f"Schmidt weights drift from unit sum by {drift.max():.3e}")
    lam = np.where(drift > RENORM_SILENT, lam / total, lam)
    return lam


# -- single-state API -------------------------------------------------------

def haar_sample(n: int, stream: np.random.Generator) -> PureState:
    return PureState(haar_amplitudes(n, 1, stream)[0])


def haar_sample_bipartite(n: int, stream: np.random.Generator) -> BipartitePureState:
    return BipartitePureState(haar_bipartite_amplitudes(n, 1, stream)[0])


def simplex_sample(n: int, stream: np.random.Generator) -> SimplexPoint:
    return SimplexPoint(simplex_weights(n, 1, stream)[0])


def schmidt_spectrum(state: BipartitePureState) -> SchmidtSpectrum:
    return SchmidtSpectrum(schmidt_lambdas(state.amplitudes))


def _same_dim(a: PureState, b: PureState):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def overlap(a: PureState, b: PureState) -> complex:
    """<a|b>."""
    _same_dim(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def pure_state_hs_distance(a: PureState, b: PureState) -> float:
    """Hilbert-Schmidt distance between the projectors |a><a| and |b><b|."""
    f = abs(overlap(a, b)) ** 2
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * f)))


def diagonal_part(state: PureState) -> SimplexPoint:
    w = np.abs(state.amplitudes) ** 2
    return SimplexPoint(w / w.sum())
