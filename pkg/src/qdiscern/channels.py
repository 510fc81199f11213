"""Global and local operations: eigenbasis dephasing, the conditional
phase gate on the environment's channel 1, and local system unitaries
(half-wave plate rotations)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, herm_eig, kron, partial_trace
from .states import KET_H, projector

UNITARY_TOL = 1e-9


@dataclass(frozen=True)
class Projector:
    """Rank-1 system projector, flagged if it came from a degenerate marginal."""

    matrix: np.ndarray
    degenerate_source: bool = False

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if np.abs(m - m.conj().T).max() > 1e-9:
            raise ValueError("projector must be Hermitian")
        if np.abs(m @ m - m).max() > 1e-9:
            raise ValueError("projector must be idempotent")
        if abs(m.trace() - 1.0) > 1e-9:
            raise ValueError("projector must have rank 1")

    @property
    def complement(self) -> np.ndarray:
        return np.eye(self.matrix.shape[0]) - self.matrix


def half_wave_plate(alpha: float) -> np.ndarray:
    """HWP at plate angle alpha: [[cos 2a, sin 2a], [sin 2a, -cos 2a]]."""
    c, s = np.cos(2 * alpha), np.sin(2 * alpha)
    return np.array([[c, s], [s, -c]], dtype=complex)


def phase_gate(phi: float) -> np.ndarray:
    """U(phi) = 1 x |0><0| + Diag(e^{i phi}, 1) x |1><1| (system first)."""
    e0 = np.diag([1.0, 0.0]).astype(complex)
    e1 = np.diag([0.0, 1.0]).astype(complex)
    d = np.diag([np.exp(1j * phi), 1.0])
    return kron(np.eye(2), e0) + kron(d, e1)


def system_eigenprojector(rho_se: DensityMatrix) -> Projector:
    """Projector onto the leading eigenvector of the system marginal.

    A degenerate marginal has no preferred eigenbasis; by convention we
    fall back to |H><H| and flag the result.
    """
    if rho_se.dims != (2, 2):
        raise ValueError(f"expected a 2x2-subsystem bipartite state, dims {rho_se.dims}")
    marg = partial_trace(rho_se, 0)
    eig = herm_eig(marg.mat)
    if eig.degenerate:
        return Projector(projector(KET_H), degenerate_source=True)
    v = eig.eigenvectors[:, 0]
    return Projector(np.outer(v, v.conj()), degenerate_source=False)


def dephase(rho_se: DensityMatrix, proj: Projector) -> DensityMatrix:
    """Pinch the state in the system basis {Pi, 1-Pi} (lifted as Pi x 1)."""
    d_env = rho_se.dims[1]
    if proj.matrix.shape[0] != rho_se.dims[0]:
        raise ValueError("projector dimension does not match the system factor")
    p = kron(proj.matrix, np.eye(d_env))
    q = kron(proj.complement, np.eye(d_env))
    out = p @ rho_se.mat @ p + q @ rho_se.mat @ q
    return DensityMatrix(out, rho_se.dims)


def phase_gate_evolve(rho_se: DensityMatrix, phi: float) -> DensityMatrix:
    """Conjugate by the conditional phase gate U(phi)."""
    u = phase_gate(phi)
    return DensityMatrix(u @ rho_se.mat @ u.conj().T, rho_se.dims)


def apply_local_system(rho_se: DensityMatrix, v: np.ndarray) -> DensityMatrix:
    """(V x 1) rho (V^dagger x 1); leaves the environment marginal unchanged."""
    v = np.asarray(v, dtype=complex)
    if np.abs(v.conj().T @ v - np.eye(v.shape[0])).max() > UNITARY_TOL:
        raise ValueError("v is not unitary")
    if v.shape[0] != rho_se.dims[0]:
        raise ValueError("unitary dimension does not match the system factor")
    w = kron(v, np.eye(rho_se.dims[1]))
    return DensityMatrix(w @ rho_se.mat @ w.conj().T, rho_se.dims)
