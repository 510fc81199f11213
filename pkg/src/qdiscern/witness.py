"""Scalar figures of merit.

* ``discord_T``: trace distance between a state and its eigenbasis-dephased
  version (a quantifier of quantum discord).
* ``witness_Td``: the same distance measured on system marginals after the
  conditional phase-gate evolution (a local discord witness).
* ``witness_growth``: growth of the system-marginal distinguishability
  between a state and its locally rotated twin (a classical-correlation
  witness).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import Projector, apply_local_system, dephase, phase_gate_evolve, system_eigenprojector
from .linalg import DensityMatrix, NumericalError, kron, partial_trace, trace_distance, trace_norm

DISCORD_QUANTIFIER = "discord_quantifier"
DISCORD_WITNESS = "discord_witness"
CORRELATION_WITNESS = "correlation_witness"


@dataclass(frozen=True)
class WitnessReport:
    value: float
    kind: str
    inputs_digest: dict = field(default_factory=dict)
    degenerate_basis: bool = False
    sigma: float | None = None  # bootstrap standard error, simulated mode only

    def __post_init__(self):
        lo = -1.0 if self.kind == CORRELATION_WITNESS else 0.0
        if not lo - 1e-9 <= self.value <= 1.0 + 1e-9:
            raise ValueError(f"{self.kind} value {self.value} outside [{lo}, 1]")

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "kind": self.kind,
            "inputs_digest": dict(self.inputs_digest),
            "degenerate_basis": self.degenerate_basis,
            "sigma": self.sigma,
        }


def discord_T(rho_se: DensityMatrix, proj: Projector | None = None) -> WitnessReport:
    """Trace distance between rho and its dephased version.

    Cross-checks the equivalent anticommutator form
    || Pi rho Pi - (Pi rho + rho Pi)/2 ||_1 and raises NumericalError if
    the two disagree, guarding the projector-lifting convention.
    """
    if proj is None:
        proj = system_eigenprojector(rho_se)
    value = trace_distance(dephase(rho_se, proj), rho_se)
    p = kron(proj.matrix, np.eye(rho_se.dims[1]))
    r = rho_se.mat
    alt = trace_norm(p @ r @ p - 0.5 * (p @ r + r @ p))
    if abs(value - alt) > 1e-9:
        raise NumericalError(f"discord forms disagree: {value} vs {alt}")
    return WitnessReport(
        value=max(value, 0.0),
        kind=DISCORD_QUANTIFIER,
        degenerate_basis=proj.degenerate_source,
    )


def witness_Td(rho_se: DensityMatrix, phi: float, proj: Projector | None = None) -> WitnessReport:
    """Trace distance of the system marginals of rho and its dephased
    version after the phase-gate evolution at angle phi."""
    if proj is None:
        proj = system_eigenprojector(rho_se)
    rho_d = dephase(rho_se, proj)
    m = partial_trace(phase_gate_evolve(rho_se, phi), 0)
    m_d = partial_trace(phase_gate_evolve(rho_d, phi), 0)
    return WitnessReport(
        value=trace_distance(m_d, m),
        kind=DISCORD_WITNESS,
        inputs_digest={"phi": phi},
        degenerate_basis=proj.degenerate_source,
    )


def witness_growth(rho_se: DensityMatrix, v: np.ndarray, phi: float) -> WitnessReport:
    """T_u(t) - T_u(0): growth of the system-marginal trace distance between
    rho and (V x 1) rho (V x 1)^dagger under the phase-gate evolution."""
    rho_u = apply_local_system(rho_se, v)
    t0 = trace_distance(partial_trace(rho_u, 0), partial_trace(rho_se, 0))
    t1 = trace_distance(
        partial_trace(phase_gate_evolve(rho_u, phi), 0),
        partial_trace(phase_gate_evolve(rho_se, phi), 0),
    )
    return WitnessReport(
        value=t1 - t0,
        kind=CORRELATION_WITNESS,
        inputs_digest={"phi": phi},
    )


def zero_line_residual(lam: float, theta: float) -> float:
    """lam (cos 2theta - 1) - cos 2theta; zero on the undetectable QC locus
    of the phi = pi witness."""
    c = np.cos(2 * theta)
    return float(lam * (c - 1.0) - c)


def zero_line_lambda(theta: float) -> float:
    """The lambda putting (lambda, theta) on the zero line (theta in (pi/4, pi/2))."""
    c = np.cos(2 * theta)
    return float(c / (c - 1.0))
