"""Dense complex linear-algebra kernel for few-qubit density matrices.

Everything here works on plain ``numpy`` arrays; :class:`DensityMatrix` is a
thin validated carrier that remembers the subsystem split.  All matrices in
this package are 2x2 up to 8x8, so nothing is optimized for size.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    InvariantViolation,
    NotHermitianError,
    NotPSDError,
    ZeroProbabilityError,
)

# Invariant checks use ATOL, reconstruction checks use RTOL (both absolute).
ATOL = 1e-10
RTOL = 1e-9


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two square matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"kron: first factor not square, shape {a.shape}")
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DimensionError(f"kron: second factor not square, shape {b.shape}")
    return np.kron(a, b)


def kron_all(*mats: np.ndarray) -> np.ndarray:
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = kron(out, m)
    return out


def partial_trace(rho: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` gives the local dimension of each subsystem in tensor order;
    ``keep`` is a set of subsystem indices to retain (order preserved as in
    ``dims``).  Satisfies Tr[(X_keep x I) rho] = Tr[X_keep ptrace(rho)].
    """
    rho = np.asarray(rho, dtype=complex)
    n = len(dims)
    d = int(np.prod(dims))
    if rho.shape != (d, d):
        raise DimensionError(f"partial_trace: shape {rho.shape} vs dims {dims}")
    keep = tuple(sorted(set(keep)))
    if not keep or any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"partial_trace: invalid keep set {keep} for {n} subsystems")
    tensor = rho.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # Trace the dropped subsystems one at a time, highest axis first.
    for i in sorted(traced, reverse=True):
        tensor = np.trace(tensor, axis1=i, axis2=i + tensor.ndim // 2)
    dk = int(np.prod([dims[i] for i in keep]))
    return tensor.reshape(dk, dk)


def herm_eigen(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, V)`` with columns of ``V`` the eigenvectors, so that
    ``V @ diag(w) @ V.conj().T`` reconstructs ``m``.
    """
    m = np.asarray(m, dtype=complex)
    if not np.allclose(m, m.conj().T, atol=ATOL):
        raise NotHermitianError(f"herm_eigen: deviation {np.abs(m - m.conj().T).max():.3e}")
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    return w[order].real, v[:, order]


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in [-ATOL, 0) are clamped to zero; anything more negative is
    rejected.
    """
    w, v = herm_eigen(m)
    if w.min() < -ATOL:
        raise NotPSDError(f"psd_sqrt: eigenvalue {w.min():.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix over a list of qubit/qudit subsystems."""

    mat: np.ndarray
    dims: tuple[int, ...] = field(default=(2, 2))

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        d = int(np.prod(self.dims))
        if mat.shape != (d, d):
            raise DimensionError(f"DensityMatrix: shape {mat.shape} vs dims {self.dims}")
        tr = np.trace(mat)
        if abs(tr - 1.0) > ATOL:
            raise InvariantViolation(f"DensityMatrix: trace {tr:.12f} != 1")
        if not np.allclose(mat, mat.conj().T, atol=ATOL):
            raise NotHermitianError("DensityMatrix: not Hermitian")
        w = np.linalg.eigvalsh(mat)
        if w.min() < -ATOL:
            raise NotPSDError(f"DensityMatrix: eigenvalue {w.min():.3e}")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def ptrace(self, keep: tuple[int, ...]) -> "DensityMatrix":
        keep = tuple(sorted(set(keep)))
        out = partial_trace(self.mat, self.dims, keep)
        return DensityMatrix(out, tuple(self.dims[i] for i in keep))

    def eigenvalues(self) -> np.ndarray:
        w, _ = herm_eigen(self.mat)
        return w

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(kron(self.mat, other.mat), self.dims + other.dims)


def normalize(unnorm: np.ndarray, dims: tuple[int, ...]) -> tuple[DensityMatrix, float]:
    """Split an unnormalized positive operator into (state, weight)."""
    weight = float(np.trace(unnorm).real)
    # Relative cutoff: a PSD operator with any appreciable entry has a trace
    # of the same order, so only a genuinely vanishing operator is rejected.
    scale = float(np.abs(unnorm).max())
    if scale == 0.0 or weight <= ATOL * scale:
        raise ZeroProbabilityError("normalize: zero-measure operator")
    return DensityMatrix(unnorm / weight, dims), weight


def random_psd(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit-trace PSD matrix built as G†G / tr."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g.conj().T @ g
    return m / np.trace(m).real


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary from the QR of a Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
