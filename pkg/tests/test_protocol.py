import json

import numpy as np
import pytest

from qdiscern.protocol import (
    VERDICT_CC,
    VERDICT_F,
    VERDICT_QC,
    ClassificationResult,
    ProtocolConfig,
    classify,
    classify_simulated,
)
from qdiscern.states import FamilyParams, make_cc, make_f, make_qc
from qdiscern.witness import zero_line_lambda

EXACT = ProtocolConfig(mode="exact")


class TestExactMode:
    def test_qc_reference_point(self):
        res = classify(make_qc(0.7, np.pi / 4), EXACT)
        assert res.verdict == VERDICT_QC
        assert res.growth_report is None

    def test_cc_reference_point(self):
        res = classify(make_cc(0.64), EXACT)
        assert res.verdict == VERDICT_CC
        assert res.td_report.value < 1e-12
        assert abs(res.growth_report.value - 0.321240) < 1e-6

    def test_f_reference_point(self):
        res = classify(make_f(0.65), EXACT)
        assert res.verdict == VERDICT_F
        assert res.growth_report.value < 0

    def test_confusion_grid(self):
        lams = np.arange(0.1, 0.95, 0.1)
        thetas = (np.pi / 8, np.pi / 4, 3 * np.pi / 8)
        for lam in lams:
            for theta in thetas:
                assert classify(make_qc(lam, theta), EXACT).verdict == VERDICT_QC
            assert classify(make_cc(lam), EXACT).verdict == VERDICT_CC
            assert classify(make_f(lam), EXACT).verdict == VERDICT_F

    def test_pure_product_cc_endpoints_are_factorized(self):
        for lam in (0.0, 1.0):
            assert classify(make_cc(lam), EXACT).verdict == VERDICT_F

    def test_qc_degenerate_angles(self):
        # theta = 0 collapses QC to a product state, theta = pi/2 to CC
        assert classify(make_qc(0.3, 0.0), EXACT).verdict == VERDICT_F
        assert classify(make_qc(0.3, np.pi / 2), EXACT).verdict == VERDICT_CC

    def test_zero_line_states_fall_through_to_stage_2(self):
        # stage 1 is blind on the zero line, but these discordant states do
        # carry correlations, so the growth witness reports CC
        for theta in (np.pi / 3, 1.2, 1.4):
            res = classify(make_qc(zero_line_lambda(theta), theta), EXACT)
            assert res.td_report.value < 1e-9
            assert res.verdict == VERDICT_CC
            assert res.growth_report.value > 0.1

    def test_degenerate_marginal_flagged(self):
        res = classify(make_f(0.5), EXACT)
        assert res.degenerate_basis
        assert res.verdict == VERDICT_F

    def test_emit_states(self):
        cfg = ProtocolConfig(mode="exact", emit_states=True)
        res = classify(make_cc(0.64), cfg)
        assert {"rho_s_0", "rho_s_t", "rho_s_d_t", "rho_s_u_0", "rho_s_u_t"} \
            <= set(res.intermediate_states)

    def test_retry_phis(self):
        # phi = 0 alone sees nothing; a pi retry rescues the detection
        blind = ProtocolConfig(mode="exact", phi=0.0)
        rescued = ProtocolConfig(mode="exact", phi=0.0, retry_phis=(np.pi,))
        rho = make_qc(0.5, np.pi / 4)
        assert classify(rho, blind).verdict != VERDICT_QC
        assert classify(rho, rescued).verdict == VERDICT_QC


class TestSimulatedMode:
    CFG = ProtocolConfig(mode="simulated", shots=100_000, seed=7)

    def test_single_seed_verdicts(self):
        assert classify_simulated(FamilyParams("QC", 0.7, np.pi / 4), self.CFG).verdict == VERDICT_QC
        assert classify_simulated(FamilyParams("CC", 0.64), self.CFG).verdict == VERDICT_CC
        assert classify_simulated(FamilyParams("F", 0.65), self.CFG).verdict == VERDICT_F

    def test_reports_carry_uncertainties(self):
        res = classify_simulated(FamilyParams("CC", 0.64), self.CFG)
        assert res.td_report.sigma is not None and res.td_report.sigma > 0
        assert res.growth_report.sigma is not None and res.growth_report.sigma > 0
        assert res.thresholds_used["stage1_threshold"] > 0

    def test_bit_exact_reproducibility(self):
        a = classify_simulated(FamilyParams("QC", 0.55, 0.9), self.CFG)
        b = classify_simulated(FamilyParams("QC", 0.55, 0.9), self.CFG)
        assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)

    def test_requires_simulated_mode(self):
        with pytest.raises(ValueError):
            classify_simulated(FamilyParams("CC", 0.64), EXACT)


class TestStructure:
    def test_qc_forbids_growth_report(self):
        res = classify(make_qc(0.7, np.pi / 4), EXACT)
        with pytest.raises(ValueError):
            ClassificationResult(VERDICT_QC, res.td_report, res.td_report, False, {})

    def test_cc_requires_growth_report(self):
        res = classify(make_qc(0.7, np.pi / 4), EXACT)
        with pytest.raises(ValueError):
            ClassificationResult(VERDICT_CC, res.td_report, None, False, {})

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ProtocolConfig(mode="other")
        with pytest.raises(ValueError):
            ProtocolConfig(threshold_sigma=0.0)
        with pytest.raises(ValueError):
            ProtocolConfig(shots=0)

    def test_result_json_shape(self):
        res = classify(make_cc(0.64), EXACT)
        d = res.to_json()
        assert d["verdict"] == VERDICT_CC
        assert d["growth_report"]["kind"] == "correlation_witness"
        assert d["intermediate_states"] is None
