"""Simulated projective tomography with finite shot budgets.

Counts are multinomial per measurement setting; reconstruction is linear
inversion followed by projection onto the physical set, with parametric
bootstrap for error bars. Seeding is deterministic: setting i of a run
seeded with s uses stream s + i, so per-setting sampling is independent
of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, hermiticity_defect

PROB_DRIFT_TOL = 1e-9
_BOOT_SEED_OFFSET = 1_000_003  # keeps bootstrap streams clear of setting streams

_KETS = {
    "H": np.array([1, 0], dtype=complex),
    "V": np.array([0, 1], dtype=complex),
    "D": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "A": np.array([1, -1], dtype=complex) / np.sqrt(2),
    "R": np.array([1, 1j], dtype=complex) / np.sqrt(2),
    "L": np.array([1, -1j], dtype=complex) / np.sqrt(2),
}
_BASES = {"Z": ("H", "V"), "X": ("D", "A"), "Y": ("R", "L")}


@dataclass(frozen=True)
class MeasurementSetting:
    """One measurement basis: orthonormal rank-1 projectors summing to 1."""

    label: str
    projectors: tuple

    def __post_init__(self):
        total = sum(self.projectors)
        if np.abs(total - np.eye(total.shape[0])).max() > 1e-12:
            raise ValueError(f"projectors of setting {self.label!r} do not sum to identity")

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]


def _basis_setting(label: str) -> MeasurementSetting:
    projs = tuple(np.outer(_KETS[k], _KETS[k].conj()) for k in _BASES[label])
    return MeasurementSetting(label, projs)


def setting_from_label(label: str) -> MeasurementSetting:
    """Rebuild a default setting from its label ('Z' or 'ZX' etc.)."""
    if label in _BASES:
        return _basis_setting(label)
    if len(label) == 2 and all(c in _BASES for c in label):
        a, b = _basis_setting(label[0]), _basis_setting(label[1])
        projs = tuple(np.kron(p, q) for p in a.projectors for q in b.projectors)
        return MeasurementSetting(label, projs)
    raise ValueError(f"unknown setting label {label!r}")


def default_settings(n_qubits: int) -> list[MeasurementSetting]:
    """Three Pauli bases per qubit: 3 settings for n=1, 9 for n=2."""
    if n_qubits == 1:
        return [_basis_setting(b) for b in "ZXY"]
    if n_qubits == 2:
        return [setting_from_label(a + b) for a in "ZXY" for b in "ZXY"]
    raise ValueError(f"unsupported n_qubits {n_qubits}")


@dataclass(frozen=True)
class TomographyRecord:
    settings: tuple
    counts: tuple  # one integer tuple per setting
    shots_per_setting: int
    seed: int

    def __post_init__(self):
        for setting, c in zip(self.settings, self.counts):
            if len(c) != len(setting.projectors):
                raise ValueError("counts shape does not match settings")
            if sum(c) != self.shots_per_setting:
                raise ValueError("counts within a setting must sum to the shot budget")

    def frequencies(self) -> np.ndarray:
        return np.concatenate([np.asarray(c) for c in self.counts]) / self.shots_per_setting

    def to_json(self) -> dict:
        return {
            "settings": [s.label for s in self.settings],
            "shots": self.shots_per_setting,
            "seed": self.seed,
            "counts": [list(map(int, c)) for c in self.counts],
        }

    @classmethod
    def from_json(cls, d: dict) -> "TomographyRecord":
        settings = tuple(setting_from_label(lbl) for lbl in d["settings"])
        counts = tuple(tuple(c) for c in d["counts"])
        return cls(settings, counts, d["shots"], d["seed"])


@dataclass(frozen=True)
class ReconstructedState:
    estimate: DensityMatrix
    std_errors: np.ndarray | None
    bootstrap_samples: int


def outcome_probabilities(rho_mat: np.ndarray, setting: MeasurementSetting) -> np.ndarray:
    """Born probabilities for one setting, clamped and renormalized within
    PROB_DRIFT_TOL; larger drift signals an invalid state."""
    p = np.array([np.trace(proj @ rho_mat).real for proj in setting.projectors])
    if p.min() < -PROB_DRIFT_TOL or abs(p.sum() - 1.0) > PROB_DRIFT_TOL:
        raise ValueError(f"outcome probabilities drifted beyond tolerance: {p}")
    p = np.clip(p, 0.0, 1.0)
    return p / p.sum()


def simulate_counts(rho: DensityMatrix, settings, shots: int, seed: int) -> TomographyRecord:
    """One multinomial draw of `shots` per setting; setting i uses stream seed+i."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    counts = []
    for i, setting in enumerate(settings):
        p = outcome_probabilities(rho.mat, setting)
        rng = np.random.default_rng(seed + i)
        counts.append(tuple(int(k) for k in rng.multinomial(shots, p)))
    return TomographyRecord(tuple(settings), tuple(counts), shots, seed)


_PINV_CACHE: dict = {}


def _design_pinv(settings) -> tuple[np.ndarray, np.ndarray, int]:
    """Least-squares inverse of the map vec(rho) -> outcome probabilities."""
    dim = settings[0].dim
    key = (tuple(s.label for s in settings), dim)
    if key not in _PINV_CACHE:
        rows = [p.conj().ravel() for s in settings for p in s.projectors]
        a = np.array(rows)
        if np.linalg.matrix_rank(a) < dim * dim:
            raise ValueError("singular design: settings are not informationally complete")
        _PINV_CACHE[key] = (a, np.linalg.pinv(a), dim)
    return _PINV_CACHE[key]


def linear_inversion(settings, frequencies: np.ndarray) -> np.ndarray:
    """Hermitian unit-trace estimate from outcome frequencies (may be unphysical)."""
    _, pinv, dim = _design_pinv(settings)
    m = (pinv @ np.asarray(frequencies, dtype=complex)).reshape(dim, dim)
    m = (m + m.conj().T) / 2
    return m / m.trace().real


def _repair_spectrum(w: np.ndarray) -> np.ndarray:
    """Truncate-and-rescale sweep over ascending eigenvalues; preserves the sum."""
    out = w.copy()
    d = len(w)
    shift = 0.0
    for i in range(d):
        rest = d - i
        if out[i] + shift / rest < 0:
            shift += out[i]
            out[i] = 0.0
        else:
            out[i:] += shift / rest
            break
    return out


def _repair_spectrum_batch(w: np.ndarray) -> np.ndarray:
    out = w.copy()
    n, d = out.shape
    shift = np.zeros(n)
    done = np.zeros(n, dtype=bool)
    for i in range(d):
        rest = d - i
        neg = (out[:, i] + shift / rest < 0) & ~done
        shift[neg] += out[neg, i]
        out[neg, i] = 0.0
        fin = ~neg & ~done
        out[fin, i:] += (shift[fin] / rest)[:, None]
        done |= fin
    return out


def project_to_physical(h: np.ndarray, dims=None) -> DensityMatrix:
    """Nearest density matrix: clip negative eigenvalue mass, keep the trace."""
    h = np.asarray(h, dtype=complex)
    if hermiticity_defect(h) > 1e-9:
        raise ValueError("project_to_physical expects a Hermitian matrix")
    tr = h.trace().real
    if abs(tr - 1.0) > 0.1:
        raise ValueError(f"trace {tr} too far from 1")
    w, v = np.linalg.eigh(h / tr)
    w = _repair_spectrum(w)
    w /= w.sum()
    out = (v * w) @ v.conj().T
    d = h.shape[0]
    if dims is None:
        dims = (2, 2) if d == 4 else (d,)
    return DensityMatrix(out, dims)


def _project_batch(ms: np.ndarray) -> np.ndarray:
    """Batched physicality projection on stacked Hermitian matrices."""
    tr = np.einsum("bii->b", ms).real
    w, v = np.linalg.eigh(ms / tr[:, None, None])
    w = _repair_spectrum_batch(w)
    w /= w.sum(axis=1, keepdims=True)
    return np.einsum("bik,bk,bjk->bij", v, w, v.conj())


def reconstruct_batch(settings, freqs: np.ndarray) -> np.ndarray:
    """Batched linear inversion + physicality projection on (n, M) frequencies."""
    _, pinv, dim = _design_pinv(settings)
    vecs = np.asarray(freqs, dtype=complex) @ pinv.T
    ms = vecs.reshape(-1, dim, dim)
    ms = (ms + ms.conj().transpose(0, 2, 1)) / 2
    return _project_batch(ms)


def sample_frequencies(probs_per_setting, shots: int, n_samples: int, seed: int) -> np.ndarray:
    """Multinomial frequency samples, concatenated over settings into (n, M).

    Each entry of probs_per_setting is either one probability vector or a
    per-sample (n, k) array; setting i uses stream seed + i as in
    simulate_counts.
    """
    blocks = []
    for i, p in enumerate(probs_per_setting):
        rng = np.random.default_rng(seed + i)
        p = np.asarray(p)
        if p.ndim == 1:
            blocks.append(rng.multinomial(shots, p, size=n_samples) / shots)
        else:
            blocks.append(rng.multinomial(shots, p) / shots)
    return np.concatenate(blocks, axis=1)


def sample_reconstructions(rho_mat: np.ndarray, settings, shots: int,
                           n_samples: int, seed: int) -> np.ndarray:
    """Reconstructions of n_samples independent synthetic runs on rho_mat."""
    probs = [outcome_probabilities(rho_mat, s) for s in settings]
    return reconstruct_batch(settings, sample_frequencies(probs, shots, n_samples, seed))


def reconstruct(record: TomographyRecord, bootstrap_samples: int = 200,
                bootstrap_seed: int | None = None) -> ReconstructedState:
    """Linear inversion + physicality projection, with parametric bootstrap
    per-entry standard errors (skipped when bootstrap_samples = 0)."""
    estimate = project_to_physical(linear_inversion(record.settings, record.frequencies()))
    std_errors = None
    if bootstrap_samples > 0:
        if bootstrap_seed is None:
            bootstrap_seed = record.seed + _BOOT_SEED_OFFSET
        replicas = sample_reconstructions(
            estimate.mat, record.settings, record.shots_per_setting,
            bootstrap_samples, bootstrap_seed)
        std_errors = np.sqrt(replicas.real.var(axis=0) + replicas.imag.var(axis=0))
    return ReconstructedState(estimate, std_errors, bootstrap_samples)
