"""Command-line front end.

Subcommands:
  classify    run the two-stage procedure on a family state, JSON to stdout
  sweep       witness values over a (lambda, theta) grid, CSV output
  phase-scan  discord witness of one state across phase-gate angles, CSV

All angles are radians. Exit codes: 0 verdict/output produced, 2 invalid
input, 3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import kernels
from .channels import half_wave_plate
from .linalg import NumericalError
from .protocol import ProtocolConfig, classify_simulated
from .states import FamilyParams, make_qc
from .witness import discord_T, witness_Td, witness_growth

_CLASSIFY_DEFAULTS = {
    "phi": float(np.pi),
    "hwp_angle": float(np.pi / 8),
    "mode": "exact",
    "shots": 100_000,
    "seed": 0,
    "bootstrap": 200,
    "threshold_sigma": 3.0,
    "exact_epsilon": 1e-9,
    "retry_phis": "",
}


def _fmt(x: float) -> str:
    return repr(float(x))


def _parse_grid(text: str) -> np.ndarray:
    try:
        start, stop, count = text.split(":")
        count = int(count)
        if count < 2:
            raise ValueError
        return np.linspace(float(start), float(stop), count)
    except ValueError:
        raise ValueError(f"grid must be start:stop:count with count >= 2, got {text!r}")


def _parse_phis(text: str) -> tuple:
    if not text:
        return ()
    return tuple(float(p) for p in text.split(","))


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must contain a JSON object")
    return cfg


def _resolve(args, defaults: dict) -> dict:
    """Flag > config file > default, per option."""
    file_cfg = _load_config(args.config)
    out = {}
    for key, default in defaults.items():
        v = getattr(args, key, None)
        if v is None:
            v = file_cfg.get(key, default)
        out[key] = v
    return out


def _family_params(args, file_cfg_theta_ok=True) -> FamilyParams:
    if args.family is None:
        raise ValueError("--family is required")
    if args.lam is None:
        raise ValueError("--lambda is required")
    return FamilyParams(args.family.upper(), args.lam, args.theta or 0.0)


def _write_lines(lines: list[str], output: str | None):
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    opts = _resolve(args, _CLASSIFY_DEFAULTS)
    params = _family_params(args)
    config = ProtocolConfig(
        phi=opts["phi"],
        hwp_angle=opts["hwp_angle"],
        mode=opts["mode"],
        shots=int(opts["shots"]),
        bootstrap_samples=int(opts["bootstrap"]),
        threshold_sigma=opts["threshold_sigma"],
        exact_epsilon=opts["exact_epsilon"],
        seed=int(opts["seed"]),
        retry_phis=_parse_phis(opts["retry_phis"]) if isinstance(opts["retry_phis"], str) else tuple(opts["retry_phis"]),
        emit_states=bool(args.emit_states),
    )
    if config.mode == "exact":
        from .protocol import classify
        result = classify(params.build(), config, digest=params.to_json())
    else:
        result = classify_simulated(params, config)
    out = result.to_json()
    out["config"] = config.to_json()
    out["family_params"] = params.to_json()
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def cmd_sweep(args) -> int:
    defaults = {"phi": float(np.pi), "hwp_angle": float(np.pi / 8), "quantity": "all"}
    opts = _resolve(args, defaults)
    lams = _parse_grid(args.lambda_grid)
    thetas = _parse_grid(args.theta_grid)
    if lams.min() < 0 or lams.max() > 1 or thetas.min() < 0 or thetas.max() > np.pi / 2:
        raise ValueError("grids must lie within lambda in [0,1], theta in [0, pi/2]")
    quantity = opts["quantity"]
    phi = opts["phi"]
    hwp = half_wave_plate(opts["hwp_angle"])

    resolved = {
        "command": "sweep", "quantity": quantity, "phi": phi,
        "hwp_angle": opts["hwp_angle"], "backend": kernels.BACKEND,
        "lambda_grid": args.lambda_grid, "theta_grid": args.theta_grid,
    }
    lines = ["# " + json.dumps(resolved, sort_keys=True)]

    td_grid = kernels.td_qc_grid(lams, thetas, phi) if quantity in ("Td", "all") else None
    if quantity == "all":
        lines.append("lambda,theta,phi,T,Td,growth")
    else:
        lines.append("lambda,theta,phi,value")
    for i, lam in enumerate(lams):
        for j, theta in enumerate(thetas):
            prefix = f"{_fmt(lam)},{_fmt(theta)},{_fmt(phi)}"
            if quantity == "Td":
                lines.append(f"{prefix},{_fmt(td_grid[i, j])}")
                continue
            rho = make_qc(float(lam), float(theta))
            if quantity == "T":
                lines.append(f"{prefix},{_fmt(discord_T(rho).value)}")
            elif quantity == "growth":
                lines.append(f"{prefix},{_fmt(witness_growth(rho, hwp, phi).value)}")
            else:
                t = discord_T(rho).value
                g = witness_growth(rho, hwp, phi).value
                lines.append(f"{prefix},{_fmt(t)},{_fmt(td_grid[i, j])},{_fmt(g)}")
    _write_lines(lines, args.output)
    return 0


def cmd_phase_scan(args) -> int:
    defaults = {"hwp_angle": float(np.pi / 8)}
    _resolve(args, defaults)
    params = _family_params(args)
    phis = _parse_phis(args.phis)
    if not phis:
        raise ValueError("--phis must list at least one angle")
    rho = params.build()
    resolved = {"command": "phase-scan", "family_params": params.to_json(), "phis": list(phis)}
    lines = ["# " + json.dumps(resolved, sort_keys=True), "phi,value"]
    for phi in phis:
        lines.append(f"{_fmt(phi)},{_fmt(witness_Td(rho, phi).value)}")
    _write_lines(lines, args.output)
    return 0


def _add_family_flags(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=["cc", "qc", "f", "CC", "QC", "F"])
    p.add_argument("--lambda", dest="lam", type=float, help="weight lambda in [0,1]")
    p.add_argument("--theta", type=float, help="QC rotation angle in [0, pi/2] (radians)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdiscern", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("classify", help="classify one family state")
    _add_family_flags(pc)
    pc.add_argument("--mode", choices=["exact", "simulated"])
    pc.add_argument("--phi", type=float)
    pc.add_argument("--hwp-angle", dest="hwp_angle", type=float)
    pc.add_argument("--shots", type=int)
    pc.add_argument("--seed", type=int)
    pc.add_argument("--bootstrap", type=int)
    pc.add_argument("--threshold-sigma", dest="threshold_sigma", type=float)
    pc.add_argument("--exact-epsilon", dest="exact_epsilon", type=float)
    pc.add_argument("--retry-phis", dest="retry_phis", help="comma-separated fallback phases")
    pc.add_argument("--emit-states", action="store_true")
    pc.add_argument("--config", help="JSON config file; flags override")
    pc.set_defaults(func=cmd_classify)

    ps = sub.add_parser("sweep", help="witness values over a (lambda, theta) grid")
    ps.add_argument("--quantity", choices=["T", "Td", "growth", "all"])
    ps.add_argument("--lambda-grid", dest="lambda_grid", required=True, help="start:stop:count")
    ps.add_argument("--theta-grid", dest="theta_grid", required=True, help="start:stop:count")
    ps.add_argument("--phi", type=float)
    ps.add_argument("--hwp-angle", dest="hwp_angle", type=float)
    ps.add_argument("--output")
    ps.add_argument("--config")
    ps.set_defaults(func=cmd_sweep)

    pp = sub.add_parser("phase-scan", help="Td of one state across phase angles")
    _add_family_flags(pp)
    pp.add_argument("--phis", required=True, help="comma-separated phase angles")
    pp.add_argument("--output")
    pp.add_argument("--config")
    pp.set_defaults(func=cmd_phase_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
