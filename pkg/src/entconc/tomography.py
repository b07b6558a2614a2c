"""Simulated two-qubit state tomography.

16 product projectors built from the single-qubit states {H, V, D, R} form
an informationally complete set; reconstruction is linear inversion of the
Born probabilities followed by projection onto the nearest (Frobenius)
PSD unit-trace matrix, i.e. projection of the eigenvalue vector onto the
probability simplex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .qmath import DensityMatrix, kron

_SQ_KETS = {
    "H": np.array([1.0, 0.0], dtype=complex),
    "V": np.array([0.0, 1.0], dtype=complex),
    "D": np.array([1.0, 1.0], dtype=complex) / np.sqrt(2),
    "A": np.array([1.0, -1.0], dtype=complex) / np.sqrt(2),
    "R": np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2),
    "L": np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2),
}

DEFAULT_BASES = ("H", "V", "D", "R")


@dataclass(frozen=True)
class TomographySettings:
    labels: tuple[str, ...]
    projectors: tuple[np.ndarray, ...]
    shots: int = 0

    def __post_init__(self):
        gram = np.array(
            [[np.vdot(p, q).real for q in self.projectors] for p in self.projectors]
        )
        if abs(np.linalg.det(gram)) < 1e-12:
            raise ConfigError("tomography settings are not informationally complete")


def default_settings(shots: int = 0) -> TomographySettings:
    labels = []
    projectors = []
    for x in DEFAULT_BASES:
        for y in DEFAULT_BASES:
            ket = kron(
                np.outer(_SQ_KETS[x], _SQ_KETS[x].conj()),
                np.outer(_SQ_KETS[y], _SQ_KETS[y].conj()),
            )
            labels.append(x + y)
            projectors.append(ket)
    return TomographySettings(tuple(labels), tuple(projectors), shots)


def simulate_counts(
    rho: DensityMatrix,
    settings: TomographySettings,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Born probabilities per setting, or Poisson counts when shots > 0."""
    if rho.dims != (2, 2):
        raise DimensionError(f"simulate_counts: dims {rho.dims}")
    probs = np.array(
        [np.trace(p @ rho.mat).real for p in settings.projectors]
    )
    probs = np.clip(probs, 0.0, 1.0)
    if settings.shots == 0:
        return probs
    if rng is None:
        rng = np.random.default_rng()
    return rng.poisson(settings.shots * probs).astype(float)


def _simplex_projection(w: np.ndarray) -> np.ndarray:
    # Euclidean projection of a real vector onto {x >= 0, sum x = 1}.
    u = np.sort(w)[::-1]
    css = np.cumsum(u)
    rho_idx = np.nonzero(u * np.arange(1, len(w) + 1) > (css - 1.0))[0][-1]
    theta = (css[rho_idx] - 1.0) / (rho_idx + 1)
    return np.clip(w - theta, 0.0, None)


def reconstruct(counts: np.ndarray, settings: TomographySettings) -> DensityMatrix:
    """Linear inversion followed by nearest PSD unit-trace projection."""
    freqs = np.asarray(counts, dtype=float)
    if settings.shots > 0:
        freqs = freqs / settings.shots
    basis = np.array([p.reshape(-1).conj() for p in settings.projectors])
    vec = np.linalg.solve(basis, freqs.astype(complex))
    raw = vec.reshape(4, 4)
    herm = (raw + raw.conj().T) / 2.0
    w, v = np.linalg.eigh(herm)
    w = _simplex_projection(w)
    mat = (v * w) @ v.conj().T
    return DensityMatrix(mat, (2, 2))
