"""Dense complex linear algebra for small bipartite systems.

Everything here operates on plain numpy arrays; `DensityMatrix` is a thin
validated wrapper carrying the subsystem dimensions (system first,
environment second).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERM_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
DEGENERACY_GAP = 1e-9


class NumericalError(ArithmeticError):
    """An internal numerical consistency check failed."""


def _as_array(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.mat
    return np.asarray(m, dtype=complex)


def hermiticity_defect(m: np.ndarray) -> float:
    """Max absolute deviation from m = m^dagger."""
    return float(np.abs(m - m.conj().T).max())


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    return hermiticity_defect(m) <= tol


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix with subsystem dimension metadata."""

    mat: np.ndarray
    dims: tuple[int, ...] = (2, 2)

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        n = mat.shape[0]
        if mat.ndim != 2 or mat.shape[1] != n:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if int(np.prod(self.dims)) != n:
            raise ValueError(f"dims {self.dims} incompatible with dimension {n}")
        defect = hermiticity_defect(mat)
        if defect > HERM_TOL:
            raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {tr}")
        wmin = float(np.linalg.eigvalsh(mat)[0])
        if wmin < -PSD_TOL:
            raise ValueError(f"matrix is not positive semidefinite (min eig {wmin:.3e})")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def to_json(self) -> dict:
        d = matrix_to_json(self.mat)
        d["dims"] = list(self.dims)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "DensityMatrix":
        return cls(matrix_from_json(d), tuple(d["dims"]))


@dataclass(frozen=True)
class HermEigResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, matched to eigenvalues
    degenerate: bool = False


def matrix_to_json(m: np.ndarray) -> dict:
    """Serialize a complex matrix to {"rows", "cols", "entries"} (row-major)."""
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(d: dict) -> np.ndarray:
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    if len(entries) != rows * cols:
        raise ValueError("entries length does not match rows*cols")
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape(rows, cols)


def kron(a, b) -> np.ndarray:
    """Kronecker product; composite row index = s*b.rows + e."""
    return np.kron(_as_array(a), _as_array(b))


def partial_trace(rho: DensityMatrix, keep: int) -> DensityMatrix:
    """Marginal of a bipartite state on subsystem `keep` (0 = system)."""
    if len(rho.dims) != 2:
        raise ValueError(f"partial_trace needs a bipartite state, dims {rho.dims}")
    if keep not in (0, 1):
        raise ValueError(f"keep must be 0 or 1, got {keep}")
    d0, d1 = rho.dims
    t = rho.mat.reshape(d0, d1, d0, d1)
    if keep == 0:
        marg = np.trace(t, axis1=1, axis2=3)
    else:
        marg = np.trace(t, axis1=0, axis2=2)
    return DensityMatrix(marg, (rho.dims[keep],))


def partial_trace_mat(rho: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    """partial_trace on a raw array, without density-matrix validation."""
    d0, d1 = dims
    t = rho.reshape(d0, d1, d0, d1)
    return np.trace(t, axis1=1, axis2=3) if keep == 0 else np.trace(t, axis1=0, axis2=2)


def herm_eig(h) -> HermEigResult:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues sorted descending; each eigenvector's first component with
    modulus > 1e-9 is made real and positive so output is deterministic.
    """
    h = _as_array(h)
    defect = hermiticity_defect(h)
    if defect > HERM_TOL:
        raise ValueError(f"herm_eig requires a Hermitian matrix (defect {defect:.3e})")
    w, v = np.linalg.eigh(h)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-9)[0]
        phase = col[idx] / abs(col[idx])
        v[:, k] = col / phase
    degenerate = bool(np.any(np.abs(np.diff(w)) < DEGENERACY_GAP))
    return HermEigResult(w, v, degenerate)


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues (Hermitian input)."""
    return float(np.abs(np.linalg.eigvalsh(_as_array(m))).sum())


def trace_distance(a, b) -> float:
    """Half the trace norm of the difference of two states."""
    a, b = _as_array(a), _as_array(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return 0.5 * trace_norm(a - b)


def trace_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched trace distance over stacked (..., d, d) Hermitian arrays."""
    w = np.linalg.eigvalsh(a - b)
    return 0.5 * np.abs(w).sum(axis=-1)


def random_density(rng: np.random.Generator, dim: int, dims=None) -> DensityMatrix:
    """Random full-rank state (Ginibre construction), for tests and sweeps."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    m /= m.trace()
    return DensityMatrix(m, dims if dims is not None else (dim,))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
