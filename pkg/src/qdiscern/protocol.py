"""The cascading two-stage classifier.

Stage 1 dephases the state in its system eigenbasis and tests the
phase-gate discord witness; a firing witness means quantum correlations
(QC). Otherwise stage 2 rotates the system with a half-wave plate and
tests for growth of the marginal trace distance: growth means classical
correlations (CC), no growth means factorized (F).

In simulated mode every state that the experiment would measure is
tomographed from multinomial counts. Stage 1 fires when the measured
witness exceeds threshold_sigma null-bootstrap standard deviations above
the null expectation, where the null replicas rerun the whole pipeline
(full-state tomography, projector extraction, dephasing, evolution,
marginal tomography) on a zero-discord surrogate of the estimated state.
The naive rule "value > threshold_sigma * standard error" is biased for
this folded statistic and misfires on correlation-free states far too
often; it also ignores the distance that projector misestimation alone
induces. Stage 2's growth statistic is not folded, so the plain rule
applies there.

Seeding: tomography experiment j of a run uses stream seed + 100*j in
the order the experiments are performed, so a fixed master seed
reproduces every count, estimate and verdict bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import Projector, apply_local_system, dephase, half_wave_plate, phase_gate, phase_gate_evolve, system_eigenprojector
from .linalg import DensityMatrix, partial_trace, partial_trace_mat, trace_distance, trace_distances
from .states import FamilyParams
from .tomography import (
    default_settings,
    outcome_probabilities,
    reconstruct,
    reconstruct_batch,
    sample_frequencies,
    sample_reconstructions,
    simulate_counts,
)
from .witness import CORRELATION_WITNESS, DISCORD_WITNESS, WitnessReport, witness_Td, witness_growth

VERDICT_QC = "QC"
VERDICT_CC = "CC"
VERDICT_F = "F"

_EXPERIMENT_STRIDE = 100  # > settings per experiment, keeps seed streams disjoint


@dataclass(frozen=True)
class ProtocolConfig:
    phi: float = np.pi
    hwp_angle: float = np.pi / 8
    mode: str = "exact"
    shots: int = 100_000
    bootstrap_samples: int = 200
    threshold_sigma: float = 3.0
    exact_epsilon: float = 1e-9
    seed: int = 0
    retry_phis: tuple = ()
    emit_states: bool = False

    def __post_init__(self):
        if self.mode not in ("exact", "simulated"):
            raise ValueError(f"mode must be 'exact' or 'simulated', got {self.mode!r}")
        if self.threshold_sigma <= 0 or self.exact_epsilon <= 0:
            raise ValueError("threshold_sigma and exact_epsilon must be positive")
        if self.shots <= 0 or self.bootstrap_samples <= 0:
            raise ValueError("shots and bootstrap_samples must be positive")

    def to_json(self) -> dict:
        return {
            "phi": self.phi,
            "hwp_angle": self.hwp_angle,
            "mode": self.mode,
            "shots": self.shots,
            "bootstrap_samples": self.bootstrap_samples,
            "threshold_sigma": self.threshold_sigma,
            "exact_epsilon": self.exact_epsilon,
            "seed": self.seed,
            "retry_phis": list(self.retry_phis),
        }


@dataclass(frozen=True)
class ClassificationResult:
    verdict: str
    td_report: WitnessReport
    growth_report: WitnessReport | None
    degenerate_basis: bool
    thresholds_used: dict
    intermediate_states: dict | None = None

    def __post_init__(self):
        if self.verdict == VERDICT_QC and self.growth_report is not None:
            raise ValueError("QC verdict must not carry a growth report")
        if self.verdict in (VERDICT_CC, VERDICT_F) and self.growth_report is None:
            raise ValueError(f"{self.verdict} verdict requires a growth report")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "td_report": self.td_report.to_json(),
            "growth_report": self.growth_report.to_json() if self.growth_report else None,
            "degenerate_basis": self.degenerate_basis,
            "thresholds_used": self.thresholds_used,
            "intermediate_states": (
                {k: v.to_json() for k, v in self.intermediate_states.items()}
                if self.intermediate_states is not None else None
            ),
        }


def classify(rho_se: DensityMatrix, config: ProtocolConfig,
             digest: dict | None = None) -> ClassificationResult:
    """Run the two-stage procedure on a prepared state."""
    if config.mode == "exact":
        return _classify_exact(rho_se, config, digest or {})
    return _classify_simulated(rho_se, config, digest or {})


def classify_simulated(params: FamilyParams, config: ProtocolConfig) -> ClassificationResult:
    """Build a family state and classify it through simulated tomography."""
    if config.mode != "simulated":
        raise ValueError("classify_simulated requires simulated mode")
    return classify(params.build(), config, digest=params.to_json())


def _digest(base: dict, config: ProtocolConfig, phi: float) -> dict:
    d = dict(base)
    d.update({"phi": phi, "hwp_angle": config.hwp_angle})
    return d


def _classify_exact(rho: DensityMatrix, config: ProtocolConfig, digest: dict) -> ClassificationResult:
    proj = system_eigenprojector(rho)
    states: dict = {}

    td_report = None
    fired_phi = None
    for phi in (config.phi, *config.retry_phis):
        rep = witness_Td(rho, phi, proj=proj)
        if td_report is None:
            td_report = rep
        if rep.value > config.exact_epsilon:
            td_report = rep
            fired_phi = phi
            break

    thresholds = {
        "stage1_threshold": config.exact_epsilon,
        "stage2_threshold": config.exact_epsilon,
        "threshold_sigma": config.threshold_sigma,
        "exact_epsilon": config.exact_epsilon,
    }
    td_report = WitnessReport(td_report.value, DISCORD_WITNESS,
                              _digest(digest, config, fired_phi if fired_phi is not None else config.phi),
                              td_report.degenerate_basis)

    if config.emit_states:
        rho_d = dephase(rho, proj)
        states["rho_s_0"] = partial_trace(rho, 0)
        states["rho_s_t"] = partial_trace(phase_gate_evolve(rho, config.phi), 0)
        states["rho_s_d_t"] = partial_trace(phase_gate_evolve(rho_d, config.phi), 0)

    if fired_phi is not None:
        return ClassificationResult(VERDICT_QC, td_report, None, proj.degenerate_source,
                                    thresholds, states if config.emit_states else None)

    v = half_wave_plate(config.hwp_angle)
    growth = witness_growth(rho, v, config.phi)
    growth = WitnessReport(growth.value, CORRELATION_WITNESS, _digest(digest, config, config.phi),
                           proj.degenerate_source)
    if config.emit_states:
        rho_u = apply_local_system(rho, v)
        states["rho_s_u_0"] = partial_trace(rho_u, 0)
        states["rho_s_u_t"] = partial_trace(phase_gate_evolve(rho_u, config.phi), 0)

    verdict = VERDICT_CC if growth.value > config.exact_epsilon else VERDICT_F
    return ClassificationResult(verdict, td_report, growth, proj.degenerate_source,
                                thresholds, states if config.emit_states else None)


def _batch_probabilities(states: np.ndarray, setting) -> np.ndarray:
    """Born probabilities per stacked state, clipped and renormalized."""
    projs = np.stack(setting.projectors)
    p = np.einsum("kij,bji->bk", projs, states).real
    p = np.clip(p, 0.0, 1.0)
    return p / p.sum(axis=1, keepdims=True)


def _null_td_samples(rho_null: DensityMatrix, phi: float, shots: int, n: int,
                     settings1, settings2, seeds: tuple[int, int, int]) -> np.ndarray:
    """Stage-1 witness values under the no-discord null.

    Each replica reruns the full measurement pipeline on the zero-discord
    surrogate: 2-qubit tomography -> projector -> dephase -> evolve ->
    1-qubit tomography of both marginals -> trace distance.
    """
    seed2, seed_m, seed_d = seeds
    r = rho_null.mat

    probs2 = [outcome_probabilities(r, s) for s in settings2]
    est2 = reconstruct_batch(settings2, sample_frequencies(probs2, shots, n, seed2))

    margs = np.trace(est2.reshape(n, 2, 2, 2, 2), axis1=2, axis2=4)
    w, v = np.linalg.eigh(margs)
    lead = v[:, :, 1]
    projs = np.einsum("bi,bj->bij", lead, lead.conj())
    projs[(w[:, 1] - w[:, 0]) < 1e-9] = np.diag([1.0, 0.0])  # degenerate fallback |H><H|

    eye2 = np.eye(2)
    lifted = np.einsum("bij,kl->bikjl", projs, eye2).reshape(n, 4, 4)
    comp = np.eye(4) - lifted
    dephased = lifted @ r @ lifted + comp @ r @ comp

    u = phase_gate(phi)
    ud = u.conj().T
    md_t = np.trace((u @ dephased @ ud).reshape(n, 2, 2, 2, 2), axis1=2, axis2=4)
    m_t = partial_trace_mat(u @ r @ ud, (2, 2), 0)

    probs_m = [outcome_probabilities(m_t, s) for s in settings1]
    est_m = reconstruct_batch(settings1, sample_frequencies(probs_m, shots, n, seed_m))
    probs_d = [_batch_probabilities(md_t, s) for s in settings1]
    est_d = reconstruct_batch(settings1, sample_frequencies(probs_d, shots, n, seed_d))
    return trace_distances(est_d, est_m)


def _classify_simulated(rho: DensityMatrix, config: ProtocolConfig, digest: dict) -> ClassificationResult:
    settings1 = default_settings(1)
    settings2 = default_settings(2)
    counter = [0]

    def next_seed() -> int:
        s = config.seed + _EXPERIMENT_STRIDE * counter[0]
        counter[0] += 1
        return s

    def tomo1(true_marginal: DensityMatrix) -> DensityMatrix:
        rec = simulate_counts(true_marginal, settings1, config.shots, next_seed())
        return reconstruct(rec, bootstrap_samples=0).estimate

    states: dict = {}

    # Pi from full-state tomography, as the experiment extracts it
    rec0 = simulate_counts(rho, settings2, config.shots, next_seed())
    rho_hat = reconstruct(rec0, bootstrap_samples=0).estimate
    proj = system_eigenprojector(rho_hat)
    rho_d = dephase(rho, proj)
    if config.emit_states:
        states["rho_se_0_hat"] = rho_hat

    b = config.bootstrap_samples
    td_report = None
    fired = False
    stage1_threshold = None
    for phi in (config.phi, *config.retry_phis):
        m_t = tomo1(partial_trace(phase_gate_evolve(rho, phi), 0))
        md_t = tomo1(partial_trace(phase_gate_evolve(rho_d, phi), 0))
        td_hat = trace_distance(md_t, m_t)

        # null distribution from the zero-discord surrogate of the estimate
        rho_null = dephase(rho_hat, proj)
        td_null = _null_td_samples(rho_null, phi, config.shots, b, settings1, settings2,
                                   (next_seed(), next_seed(), next_seed()))
        threshold = float(td_null.mean() + config.threshold_sigma * td_null.std())

        # parametric bootstrap around the two point estimates, for the error bar
        rep_a = sample_reconstructions(m_t.mat, settings1, config.shots, b, next_seed())
        rep_b = sample_reconstructions(md_t.mat, settings1, config.shots, b, next_seed())
        sigma = float(trace_distances(rep_b, rep_a).std())

        rep = WitnessReport(td_hat, DISCORD_WITNESS, _digest(digest, config, phi),
                            proj.degenerate_source, sigma=sigma)
        if td_report is None or td_hat > threshold:
            td_report = rep
            stage1_threshold = threshold
        if td_hat > threshold:
            fired = True
            if config.emit_states:
                states["rho_s_t_hat"] = m_t
                states["rho_s_d_t_hat"] = md_t
            break
        if config.emit_states and phi == config.phi:
            states["rho_s_t_hat"] = m_t
            states["rho_s_d_t_hat"] = md_t

    thresholds = {
        "stage1_threshold": stage1_threshold,
        "threshold_sigma": config.threshold_sigma,
        "exact_epsilon": config.exact_epsilon,
    }

    if fired:
        thresholds["stage2_threshold"] = None
        return ClassificationResult(VERDICT_QC, td_report, None, proj.degenerate_source,
                                    thresholds, states if config.emit_states else None)

    v = half_wave_plate(config.hwp_angle)
    rho_u = apply_local_system(rho, v)
    e_s0 = tomo1(partial_trace(rho, 0))
    e_u0 = tomo1(partial_trace(rho_u, 0))
    e_st = tomo1(partial_trace(phase_gate_evolve(rho, config.phi), 0))
    e_ut = tomo1(partial_trace(phase_gate_evolve(rho_u, config.phi), 0))
    growth_hat = trace_distance(e_ut, e_st) - trace_distance(e_u0, e_s0)

    reps = [sample_reconstructions(e.mat, settings1, config.shots, b, next_seed())
            for e in (e_s0, e_u0, e_st, e_ut)]
    growth_star = trace_distances(reps[3], reps[2]) - trace_distances(reps[1], reps[0])
    sigma2 = float(growth_star.std())
    stage2_threshold = config.threshold_sigma * sigma2

    growth_report = WitnessReport(growth_hat, CORRELATION_WITNESS,
                                  _digest(digest, config, config.phi),
                                  proj.degenerate_source, sigma=sigma2)
    thresholds["stage2_threshold"] = stage2_threshold
    if config.emit_states:
        states.update({"rho_s_0_hat": e_s0, "rho_s_u_0_hat": e_u0,
                       "rho_s_t_hat2": e_st, "rho_s_u_t_hat": e_ut})

    verdict = VERDICT_CC if growth_hat > stage2_threshold else VERDICT_F
    return ClassificationResult(verdict, td_report, growth_report, proj.degenerate_source,
                                thresholds, states if config.emit_states else None)
