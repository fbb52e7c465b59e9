"""Principal-components model of the state share history.

Centers the share matrix, forms the sample covariance, and keeps the
nonzero eigenpairs (eleven of them for the full 12-election history, since
the centered columns sum to zero).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import STATE_NAMES, ElectionDataset

# Eigenvalues below lam_max * ZERO_CUTOFF are numerically zero and dropped.
ZERO_CUTOFF = 1e-10


class PcaError(Exception):
    pass


class DegenerateSample(PcaError):
    """Fewer than two observations; no sample covariance exists."""


class RankDeficient(PcaError):
    """Strict mode: fewer nonzero eigenvalues than expected."""


class IndexOutOfRange(PcaError, IndexError):
    """Component index outside 1..n_components."""


@dataclass(frozen=True)
class DeviationMatrix:
    """Share deviations from per-state means, plus the means themselves."""

    devs: np.ndarray  # (n, 51)
    mean: np.ndarray  # (51,)
    n: int


@dataclass(frozen=True)
class PcaModel:
    """Mean vector and descending nonzero eigenpairs of the sample covariance.

    eigenvectors[j] is the unit-norm direction for eigenvalues[j]; rows are
    mutually orthogonal.  Sign convention: each eigenvector's component sum
    is nonnegative (first nonzero component positive on an exact-zero sum).
    """

    mean: np.ndarray          # (51,)
    eigenvalues: np.ndarray   # (k,), descending, all > 0
    eigenvectors: np.ndarray  # (k, 51)
    n: int

    @property
    def n_components(self) -> int:
        return len(self.eigenvalues)


def center(dataset) -> DeviationMatrix:
    """Subtract each state's mean share across elections.

    Accepts an ElectionDataset or a bare (n, n_states) share matrix.
    """
    shares = dataset.shares if isinstance(dataset, ElectionDataset) else np.asarray(dataset, dtype=float)
    mean = shares.mean(axis=0)
    devs = shares - mean
    return DeviationMatrix(devs=devs, mean=mean, n=shares.shape[0])


def covariance(devs: DeviationMatrix) -> np.ndarray:
    """Sample covariance (devs' devs) / (n - 1)."""
    if devs.n < 2:
        raise DegenerateSample(f"need n >= 2 observations, got {devs.n}")
    return devs.devs.T @ devs.devs / (devs.n - 1)


def _apply_sign_convention(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for j in range(out.shape[0]):
        total = out[j].sum()
        if total < -1e-12:
            out[j] = -out[j]
        elif abs(total) <= 1e-12:
            nonzero = np.nonzero(out[j])[0]
            if len(nonzero) and out[j, nonzero[0]] < 0:
                out[j] = -out[j]
    return out


def fit_pca(dataset, strict: bool = False, expected_rank: int | None = None) -> PcaModel:
    """Eigendecompose the sample covariance and keep the nonzero spectrum.

    In strict mode the model must have at least expected_rank (default n-1)
    nonzero eigenvalues, else RankDeficient is raised.
    """
    dm = center(dataset)
    cov = covariance(dm)
    lam, vecs = np.linalg.eigh(cov)
    order = np.argsort(lam)[::-1]
    lam = lam[order]
    vecs = vecs[:, order].T  # rows are eigenvectors
    cutoff = lam[0] * ZERO_CUTOFF
    keep = lam > cutoff
    lam = lam[keep]
    vecs = _apply_sign_convention(vecs[keep])
    if strict:
        want = expected_rank if expected_rank is not None else dm.n - 1
        if len(lam) < want:
            raise RankDeficient(f"{len(lam)} nonzero eigenvalues, expected {want}")
    lam.flags.writeable = False
    vecs.flags.writeable = False
    mean = dm.mean.copy()
    mean.flags.writeable = False
    return PcaModel(mean=mean, eigenvalues=lam, eigenvectors=vecs, n=dm.n)


def variance_explained(model: PcaModel, k: int) -> float:
    """Fraction of total variance carried by the top k components."""
    if not 1 <= k <= model.n_components:
        raise IndexOutOfRange(f"k={k} outside 1..{model.n_components}")
    lam = model.eigenvalues
    return float(lam[:k].sum() / lam.sum())


def loadings_report(model: PcaModel, j: int) -> list[tuple[str, float]]:
    """All 51 state coefficients of component j (1-based), sorted ascending."""
    if not 1 <= j <= model.n_components:
        raise IndexOutOfRange(f"j={j} outside 1..{model.n_components}")
    coeffs = model.eigenvectors[j - 1]
    order = np.argsort(coeffs, kind="stable")
    return [(STATE_NAMES[i], float(coeffs[i])) for i in order]
