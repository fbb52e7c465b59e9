"""Correlated synthetic share vectors from the fitted PCA model.

A simulated election is mean + sum_j z_j * sqrt(lambda_j) * E_j with the
z_j independent standard normals.  Randomness is fully deterministic: trial
t of master seed s draws from a PCG64 stream keyed by SeedSequence((s, t)),
and normals come from the inverse normal CDF applied to 53-bit uniforms.
Trials are therefore independent substreams and safe to evaluate in any
order or in parallel.  Bit-equality is promised within this build, not
across languages or numpy major versions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .pca import PcaModel


class GeneratorError(Exception):
    pass


class DimensionMismatch(GeneratorError):
    """Noise length does not match the model's eigenpair count."""


@dataclass(frozen=True)
class NoiseVector:
    """Standard-normal draws for one trial, reproducible from (seed, trial)."""

    z: np.ndarray
    trial_index: int
    seed: int


@dataclass(frozen=True)
class SimulatedShares:
    """One simulated 51-state share vector, raw and clamped to [0, 1]."""

    raw: np.ndarray
    clamped: np.ndarray


_TWO53 = float(1 << 53)


def _uniform_bits(seed: int, trial_index: int, size: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, trial_index))))
    # integers in [1, 2^53 - 1] keep the uniforms strictly inside (0, 1)
    return rng.integers(1, 1 << 53, size=size).astype(float) / _TWO53


def draw_noise(seed: int, trial_index: int, size: int = 11) -> NoiseVector:
    """Independent standard normals for one trial via inverse-CDF transform."""
    if trial_index < 0:
        raise ValueError(f"trial_index must be >= 0, got {trial_index}")
    z = ndtri(_uniform_bits(seed, trial_index, size))
    z.flags.writeable = False
    return NoiseVector(z=z, trial_index=trial_index, seed=seed)


def draw_noise_batch(seed: int, start: int, count: int, size: int = 11) -> np.ndarray:
    """(count, size) noise matrix for trials start..start+count-1.

    Row i is bit-identical to draw_noise(seed, start + i, size).z.
    """
    u = np.empty((count, size))
    for i in range(count):
        u[i] = _uniform_bits(seed, start + i, size)
    return ndtri(u)


def generate_shares(model: PcaModel, noise) -> SimulatedShares:
    """Apply the mean-plus-scaled-eigenvector formula to one noise vector."""
    z = noise.z if isinstance(noise, NoiseVector) else np.asarray(noise, dtype=float)
    if z.shape != (model.n_components,):
        raise DimensionMismatch(
            f"noise has shape {z.shape}, model has {model.n_components} components"
        )
    raw = model.mean + (z * np.sqrt(model.eigenvalues)) @ model.eigenvectors
    clamped = np.clip(raw, 0.0, 1.0)
    raw.flags.writeable = False
    clamped.flags.writeable = False
    return SimulatedShares(raw=raw, clamped=clamped)


def generate_shares_batch(model: PcaModel, z: np.ndarray) -> np.ndarray:
    """Raw share matrix (n_trials, 51) for a batch of noise rows."""
    z = np.asarray(z, dtype=float)
    if z.ndim != 2 or z.shape[1] != model.n_components:
        raise DimensionMismatch(
            f"noise batch has shape {z.shape}, model has {model.n_components} components"
        )
    return model.mean + (z * np.sqrt(model.eigenvalues)) @ model.eigenvectors
