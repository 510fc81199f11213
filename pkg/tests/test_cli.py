import json

import numpy as np
import pytest

from qdiscern.cli import main

PI = repr(float(np.pi))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestClassify:
    def test_qc_exact(self, capsys):
        code, out, _ = run(capsys, "classify", "--family", "qc", "--lambda", "0.7",
                           "--theta", "0.7853981634", "--mode", "exact")
        assert code == 0
        assert json.loads(out)["verdict"] == "QC"

    def test_f_exact(self, capsys):
        code, out, _ = run(capsys, "classify", "--family", "f", "--lambda", "0.65",
                           "--mode", "exact")
        assert code == 0
        assert json.loads(out)["verdict"] == "F"

    def test_simulated_deterministic(self, capsys):
        argv = ["classify", "--family", "cc", "--lambda", "0.64", "--mode", "simulated",
                "--shots", "100000", "--seed", "7"]
        code, out1, _ = run(capsys, *argv)
        assert code == 0
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2
        assert json.loads(out1)["verdict"] == "CC"

    def test_emit_states(self, capsys):
        code, out, _ = run(capsys, "classify", "--family", "cc", "--lambda", "0.64",
                           "--mode", "exact", "--emit-states")
        states = json.loads(out)["intermediate_states"]
        assert "rho_s_0" in states

    def test_missing_lambda_is_exit_2(self, capsys):
        code, _, err = run(capsys, "classify", "--family", "cc", "--mode", "exact")
        assert code == 2
        assert "lambda" in err

    def test_bad_lambda_is_exit_2(self, capsys):
        code, _, _ = run(capsys, "classify", "--family", "cc", "--lambda", "1.4",
                         "--mode", "exact")
        assert code == 2

    def test_config_file_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"mode": "exact", "phi": 0.0}))
        # config phi=0 blinds the witness; CLI flag must override it
        code, out, _ = run(capsys, "classify", "--family", "qc", "--lambda", "0.5",
                           "--theta", "0.7853981634", "--config", str(cfg), "--phi", PI)
        assert code == 0
        assert json.loads(out)["verdict"] == "QC"


class TestSweep:
    def test_td_golden_point(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep", "--quantity", "Td",
                         "--lambda-grid", "0.25:0.75:3", "--theta-grid",
                         f"0.7853981633974483:{np.pi / 2}:2", "--output", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0].startswith("# {")
        assert lines[1] == "lambda,theta,phi,value"
        row = lines[2 + 1 * 2].split(",")  # lambda=0.5, theta=pi/4
        assert abs(float(row[0]) - 0.5) < 1e-12
        assert abs(float(row[3]) - 0.25) < 1e-9

    def test_t_golden_point(self, capsys):
        code, out, _ = run(capsys, "sweep", "--quantity", "T",
                           "--lambda-grid", "0.5:0.6:2",
                           "--theta-grid", "0.7853981633974483:1.5:2")
        assert code == 0
        first = out.splitlines()[2].split(",")
        assert abs(float(first[3]) - np.sqrt(2) / 4) < 1e-9

    def test_all_quantities_header(self, capsys):
        code, out, _ = run(capsys, "sweep", "--lambda-grid", "0.2:0.8:2",
                           "--theta-grid", "0.3:1.2:2")
        lines = out.splitlines()
        assert lines[1] == "lambda,theta,phi,T,Td,growth"
        assert len(lines) == 2 + 4

    def test_zero_line_samples_blind(self, capsys):
        from qdiscern.witness import zero_line_lambda
        theta = 1.2
        lam = zero_line_lambda(theta)
        code, out, _ = run(capsys, "sweep", "--quantity", "Td",
                           "--lambda-grid", f"{lam}:{lam + 1e-12}:2",
                           "--theta-grid", f"{theta}:{theta + 1e-12}:2")
        assert code == 0
        for line in out.splitlines()[2:]:
            assert float(line.split(",")[3]) < 1e-9

    def test_byte_identical_output(self, capsys):
        argv = ["sweep", "--lambda-grid", "0.1:0.9:4", "--theta-grid", "0.1:1.4:4"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_grid_out_of_range(self, capsys):
        code, _, _ = run(capsys, "sweep", "--lambda-grid", "0.5:1.5:3",
                         "--theta-grid", "0.1:1.0:3")
        assert code == 2

    def test_unwritable_output(self, capsys):
        code, _, _ = run(capsys, "sweep", "--lambda-grid", "0.1:0.9:2",
                         "--theta-grid", "0.1:1.0:2",
                         "--output", "/nonexistent-dir/x.csv")
        assert code == 2


class TestPhaseScan:
    def test_monotone_scan_ends_at_quarter(self, capsys):
        code, out, _ = run(capsys, "phase-scan", "--family", "qc", "--lambda", "0.5",
                           "--theta", "0.7853981634",
                           "--phis", f"{np.pi / 4},{np.pi / 2},{np.pi}")
        assert code == 0
        vals = [float(line.split(",")[1]) for line in out.splitlines()[2:]]
        assert vals == sorted(vals)
        assert abs(vals[-1] - 0.25) < 1e-9

    def test_cc_all_zero(self, capsys):
        code, out, _ = run(capsys, "phase-scan", "--family", "cc", "--lambda", "0.64",
                           "--phis", "0.5,1.5,3.0")
        assert code == 0
        assert all(float(line.split(",")[1]) < 1e-12 for line in out.splitlines()[2:])

    def test_zero_phase_blind(self, capsys):
        code, out, _ = run(capsys, "phase-scan", "--family", "qc", "--lambda", "0.6",
                           "--theta", "0.9", "--phis", "0.0")
        assert float(out.splitlines()[2].split(",")[1]) < 1e-12
