"""Independent brute-force oracle for the witness and channel math.

Builds every 4x4 operator explicitly with numpy and takes trace norms by
eigenvalue summation. Deliberately shares no code with the package so it
can certify the implementation's derived values.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
KET_H = np.array([1, 0], dtype=complex)
KET_V = np.array([0, 1], dtype=complex)


def proj(v):
    return np.outer(v, v.conj())


def theta_ket(t):
    return np.array([np.cos(t), np.sin(t)], dtype=complex)


def cc(lam):
    return lam * np.kron(proj(KET_H), np.diag([1.0, 0.0])) \
        + (1 - lam) * np.kron(proj(KET_V), np.diag([0.0, 1.0]))


def qc(lam, th):
    return lam * np.kron(proj(KET_H), np.diag([1.0, 0.0])) \
        + (1 - lam) * np.kron(proj(theta_ket(th)), np.diag([0.0, 1.0]))


def fact(lam):
    return np.kron(lam * proj(KET_H) + (1 - lam) * proj(KET_V), I2 / 2)


def ptrace_sys(r):
    return r.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)


def tdist(a, b):
    return 0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum()


def leading_projector(r4):
    m = ptrace_sys(r4)
    w, v = np.linalg.eigh(m)
    if w[1] - w[0] < 1e-9:
        return proj(KET_H)
    return proj(v[:, 1])


def dephase(r, p):
    pl = np.kron(p, I2)
    ql = np.kron(I2 - p, I2)
    return pl @ r @ pl + ql @ r @ ql


def gate(phi):
    return np.kron(I2, np.diag([1.0, 0.0])) \
        + np.kron(np.diag([np.exp(1j * phi), 1.0]), np.diag([0.0, 1.0]))


def evolve(r, phi):
    u = gate(phi)
    return u @ r @ u.conj().T


def hwp(alpha):
    c, s = np.cos(2 * alpha), np.sin(2 * alpha)
    return np.array([[c, s], [s, -c]], dtype=complex)


def discord(r):
    return tdist(dephase(r, leading_projector(r)), r)


def td_witness(r, phi):
    d = dephase(r, leading_projector(r))
    return tdist(ptrace_sys(evolve(d, phi)), ptrace_sys(evolve(r, phi)))


def growth(r, v, phi):
    vl = np.kron(v, I2)
    ru = vl @ r @ vl.conj().T
    t0 = tdist(ptrace_sys(ru), ptrace_sys(r))
    t1 = tdist(ptrace_sys(evolve(ru, phi)), ptrace_sys(evolve(r, phi)))
    return t1 - t0
