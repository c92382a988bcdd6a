"""Command-line front end.

Physics parameters come from a JSON config file; sweep/scan geometry comes
from flags.  Every CSV artifact is accompanied by a manifest JSON echoing the
fully resolved inputs, so a run can be reproduced byte-identically (modulo
the manifest timestamp).  Exit codes: 0 success, 2 invalid input, 3 I/O or
numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import MaglevError, NoSignChange, NonPositiveInput
from .gaussian import bogoliubov_transform, covariance, mode_metrics, state_scan
from .hamiltonian import build_C, build_model
from .params import PhysicalConstants, SystemParams, derive_quantities, validate_regime
from .stability import (Classification, classify_point, crosscheck_spectrum,
                        pt_coefficients, sweep_grid)

_CONFIG_KEYS = ("rho_M", "rho_mu", "k_a", "R", "B0", "Bp", "Bpp", "omega_S")
_CONSTANT_KEYS = ("hbar", "mu_B", "amu", "gamma0", "g_grav")


class ConfigError(MaglevError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def load_config(path: str) -> tuple[PhysicalConstants, SystemParams]:
    """Parse and validate the physics config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    unknown = set(raw) - set(_CONFIG_KEYS) - {"constants"}
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    missing = [k for k in _CONFIG_KEYS if k != "omega_S" and k not in raw]
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(missing)}")

    const_kwargs = {}
    for k, v in (raw.get("constants") or {}).items():
        if k not in _CONSTANT_KEYS:
            raise ConfigError(f"unknown constants key: {k}")
        const_kwargs[k] = float(v)
    try:
        constants = PhysicalConstants(**const_kwargs)
        params = SystemParams(
            rho_M=float(raw["rho_M"]), rho_mu=float(raw["rho_mu"]),
            k_a=float(raw["k_a"]), R=float(raw["R"]), B0=float(raw["B0"]),
            Bp=float(raw["Bp"]), Bpp=float(raw["Bpp"]),
            omega_S=float(raw.get("omega_S", 0.0)),
        )
    except (TypeError, ValueError, NonPositiveInput) as exc:
        raise ConfigError(str(exc)) from exc
    return constants, params


def _atomic_write(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".maglev-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_manifest(out_path: str, command: str, args_echo: dict,
                    constants: PhysicalConstants, params: SystemParams,
                    tolerances: dict) -> None:
    manifest = {
        "command": command,
        "args": args_echo,
        "params_echo": {
            "system": {k: getattr(params, k) for k in _CONFIG_KEYS},
            "constants": {k: getattr(constants, k) for k in _CONSTANT_KEYS},
        },
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "tolerances": tolerances,
    }
    _atomic_write(out_path + ".manifest.json",
                  json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _resolve_threads(value) -> int:
    if value is not None:
        return max(1, int(value))
    env = os.environ.get("MAGLEV_THREADS")
    return max(1, int(env)) if env else 1


def _derived_dict(d) -> dict:
    keys = ("V", "M", "I", "mu", "S", "J", "eta", "D", "omega_L", "omega_D",
            "omega_I", "omega_Z", "omega_Z_sq", "omega_T", "omega_plus",
            "omega_minus", "omega_k", "omega_mu", "omega_S", "g_coupling",
            "z0", "r0")
    return {k: getattr(d, k) for k in keys}


def cmd_derive(args) -> int:
    constants, params = load_config(args.config)
    d = derive_quantities(constants, params)
    report = validate_regime(constants, params, d)
    if args.json:
        payload = {"derived": _derived_dict(d),
                   "regime": {k: getattr(report, k) for k in
                              ("gravity_ratio", "gravity_ok",
                               "slow_rotation_ratio", "slow_rotation_ok",
                               "macrospin_ok", "omega_T_real",
                               "trap_z_confining")}}
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(f"derived quantities  (R = {_fmt(params.R)} m, B0 = {_fmt(params.B0)} T)")
    for k, v in _derived_dict(d).items():
        print(f"  {k:12s} = {_fmt(v)}")
    print("regime checks")
    print(f"  gravity_ratio       = {report.gravity_ratio:.6e}  ok={report.gravity_ok}")
    print(f"  slow_rotation_ratio = {report.slow_rotation_ratio:.6e}  ok={report.slow_rotation_ok}")
    print(f"  macrospin_ok        = {report.macrospin_ok}")
    print(f"  omega_T_real        = {report.omega_T_real}")
    print(f"  trap_z_confining    = {report.trap_z_confining}")
    return 0


def cmd_stability(args) -> int:
    constants, params = load_config(args.config)
    if args.B0 is not None or args.R is not None:
        params = SystemParams(
            rho_M=params.rho_M, rho_mu=params.rho_mu, k_a=params.k_a,
            R=args.R if args.R is not None else params.R,
            B0=args.B0 if args.B0 is not None else params.B0,
            Bp=params.Bp, Bpp=params.Bpp, omega_S=params.omega_S)
    d = derive_quantities(constants, params)
    model = build_model(d)
    verdict = classify_point(d, model, args.tol)
    residual = crosscheck_spectrum(model, pt_coefficients(d))

    label = verdict.classification.name
    if not verdict.z_stable:
        label = "UNSTABLE (z-axis)"
    if args.json:
        print(json.dumps({
            "classification": verdict.classification.name,
            "label": label,
            "z_stable": verdict.z_stable,
            "t_stable": verdict.t_stable,
            "max_offaxis": verdict.max_offaxis,
            "roots_nu_re": [r.real for r in verdict.roots_nu],
            "roots_nu_im": [r.imag for r in verdict.roots_nu],
            "crosscheck_residual": residual,
        }, indent=2, sort_keys=True))
    else:
        print(f"classification: {label}")
        print(f"z_stable={verdict.z_stable}  t_stable={verdict.t_stable}  "
              f"max_offaxis={verdict.max_offaxis:.3e}")
        print("roots nu (rad/s):")
        for r in verdict.roots_nu:
            print(f"  {r.real:+.12e}  {r.imag:+.3e}j")
        print(f"crosscheck residual: {residual:.3e}")
    if args.dump_model:
        dump = {"C": build_C(d).entries.tolist(),
                "MT": model.MT.tolist(),
                "KT": model.KT.tolist()}
        print(json.dumps(dump, sort_keys=True))
    return 0


def _parse_grid(spec: str) -> tuple[int, int]:
    try:
        a, b = spec.lower().split("x")
        n_b0, n_r = int(a), int(b)
    except ValueError as exc:
        raise ConfigError(f"bad --grid '{spec}', expected NxM") from exc
    if n_b0 < 2 or n_r < 2 or n_b0 > 2000 or n_r > 2000:
        raise ConfigError("grid dimensions must lie in [2, 2000]")
    return n_b0, n_r


def cmd_sweep(args) -> int:
    constants, params = load_config(args.config)
    n_b0, n_r = _parse_grid(args.grid)
    if not (0 < args.B0_min < args.B0_max and 0 < args.R_min < args.R_max):
        raise ConfigError("sweep ranges must be positive and increasing")
    threads = _resolve_threads(args.threads)

    diagram = sweep_grid(constants, params, (args.B0_min, args.B0_max),
                         (args.R_min, args.R_max), n_b0, n_r,
                         tol=args.tol, log_spacing=not args.linear,
                         threads=threads)

    wD = constants.gamma0 * params.k_a / params.rho_mu
    lines = ["B0_T,R_m,classification,max_offaxis,omega_L,omega_D,omega_I"]
    for i, R in enumerate(diagram.R_axis):
        wI = 2.5 * params.rho_mu / (params.rho_M * constants.gamma0 * R**2)
        for j, B0 in enumerate(diagram.B0_axis):
            lines.append(",".join([
                _fmt(B0), _fmt(R), str(int(diagram.cells[i, j])),
                _fmt(diagram.max_offaxis[i, j]),
                _fmt(constants.gamma0 * B0), _fmt(wD), _fmt(wI),
            ]))
    _atomic_write(args.out, "\n".join(lines) + "\n")

    borders = diagram.borders
    rc_b0 = np.geomspace(args.B0_min, args.B0_max, 49)
    borders_path = os.path.splitext(args.out)[0] + ".borders.json"
    _atomic_write(borders_path, json.dumps({
        "B_c1": borders.B_c1,
        "B_c2": borders.B_c2,
        "R_c_samples": [[float(b), borders.R_c(float(b))] for b in rc_b0],
    }, indent=2, sort_keys=True) + "\n")

    _write_manifest(args.out, "sweep",
                    {"B0_min": args.B0_min, "B0_max": args.B0_max,
                     "R_min": args.R_min, "R_max": args.R_max,
                     "grid": args.grid, "linear": bool(args.linear),
                     "out": args.out},
                    constants, params, {"classify_tol": args.tol})
    n_notes = len(diagram.notes)
    if n_notes:
        print(f"warning: {n_notes} cells recorded numerical issues", file=sys.stderr)
    print(f"wrote {args.out} ({n_b0 * n_r} cells), {borders_path}")
    return 0


def _parse_scan(spec: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise ConfigError(f"bad --B0-scan '{spec}', expected min:max:n") from exc
    if not (0 < lo <= hi) or n < 1:
        raise ConfigError("scan range must be positive with n >= 1")
    return np.geomspace(lo, hi, n)


def cmd_state(args) -> int:
    constants, params = load_config(args.config)
    b0s = _parse_scan(args.B0_scan)
    rows = state_scan(constants, params, args.R, b0s, tol=args.tol)

    lines = ["B0_T,P_bR,P_bL,P_m,P_k,P_s,entanglement,squeezing"]
    for row in rows:
        lines.append(",".join(
            [_fmt(row.B0)] + [_fmt(p) for p in row.purities]
            + [_fmt(row.entanglement), _fmt(row.squeezing)]))
    _atomic_write(args.out, "\n".join(lines) + "\n")
    _write_manifest(args.out, "state",
                    {"R": args.R, "B0_scan": args.B0_scan, "out": args.out},
                    constants, params, {"classify_tol": args.tol})
    n_stable = sum(1 for r in rows if r.stable)
    if n_stable == 0:
        print("warning: no stable points in scan", file=sys.stderr)
    d = derive_quantities(constants, SystemParams(
        rho_M=params.rho_M, rho_mu=params.rho_mu, k_a=params.k_a, R=args.R,
        B0=float(b0s[0]), Bp=params.Bp, Bpp=params.Bpp, omega_S=params.omega_S))
    # the axial mode is decoupled and carries no CSV metrics of its own
    print(f"axial mode: decoupled, vacuum purity 1, squeezing 1 "
          f"(omega_Z = {_fmt(d.omega_Z)} rad/s at the scan start)")
    print(f"wrote {args.out} ({len(rows)} rows, {n_stable} stable)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maglev",
        description="Stability and Gaussian vacuum properties of a levitated nanomagnet.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="print derived quantities and regime checks")
    p.add_argument("config")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("stability", help="classify a single parameter point")
    p.add_argument("config")
    p.add_argument("--B0", type=float)
    p.add_argument("--R", type=float)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.add_argument("--dump-model", action="store_true",
                   help="also dump C, MT, KT as JSON")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("sweep", help="classify a (B0, R) grid and write CSV")
    p.add_argument("config")
    p.add_argument("--B0-min", type=float, required=True)
    p.add_argument("--B0-max", type=float, required=True)
    p.add_argument("--R-min", type=float, required=True)
    p.add_argument("--R-max", type=float, required=True)
    p.add_argument("--grid", default="200x200", help="N_B0 x N_R, e.g. 200x200")
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--linear", action="store_true", help="linear axis spacing")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: MAGLEV_THREADS or 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("state", help="quantum-state metrics along a B0 scan")
    p.add_argument("config")
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--B0-scan", required=True, help="min:max:n (log spacing)")
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_state)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, NonPositiveInput, NoSignChange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MaglevError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
