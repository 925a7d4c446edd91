"""Command-line front end.

    ppshg run   --alpha0 100,0 --squeeze-r 1 --squeeze-quad x --out run.csv
    ppshg sweep --pump 0:x --pump 0.5:x --pump 1:y --out sweep.csv

A config file (plain ``key = value`` lines, keys matching the long flag
names) can supply any flag; explicit flags override it.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import kernel
from .fock import evolve, fock_observables, prepare_input
from .observables import SCALARS
from .runner import (
    CSV_HEADER,
    ConfigError,
    D_ZETA_DEFAULT,
    RECORD_EVERY_DEFAULT,
    SimConfig,
    run,
    sweep,
)
from .states import PumpSpec

PROFILES = {
    # CI-runnable scale; the paper-scale profile is gated behind --profile paper.
    "desk": {"alpha0": "100,0", "trajectories": 200_000},
    "paper": {"alpha0": "1000,0", "trajectories": 10_000_000},
}

DEFAULTS = {
    "alpha0": "100,0",
    "squeeze_r": 0.0,
    "squeeze_quad": "x",
    "kappa": 1e-2,
    "zeta_max": 6.0,
    "d_zeta": D_ZETA_DEFAULT,
    "record_every": RECORD_EVERY_DEFAULT,
    "trajectories": 200_000,
    "batches": 100,
    "scheme": "midpoint",
    "seed": 0,
    "workers": 1,
}


def parse_alpha0(text: str) -> complex:
    try:
        if "," in text:
            re_s, im_s = text.split(",")
            return complex(float(re_s), float(im_s))
        return complex(float(text), 0.0)
    except ValueError as exc:
        raise ConfigError(f"cannot parse alpha0 {text!r} (expected 're,im')") from exc


def parse_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="config file of 'key = value' lines")
    p.add_argument("--profile", choices=sorted(PROFILES))
    p.add_argument("--alpha0", help="coherent amplitude as 're,im'")
    p.add_argument("--kappa", type=float)
    p.add_argument("--zeta-max", type=float)
    p.add_argument("--d-zeta", type=float, help="integration step in zeta units")
    p.add_argument("--record-every", type=float, help="recorded grid spacing in zeta")
    p.add_argument("--trajectories", type=int)
    p.add_argument("--batches", type=int)
    p.add_argument("--scheme", choices=["euler", "midpoint"])
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--deterministic", action="store_true", default=None,
                   help="disable the stochastic terms")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppshg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single pump setting")
    _add_common(p_run)
    p_run.add_argument("--squeeze-r", type=float)
    p_run.add_argument("--squeeze-quad", choices=["x", "y"])
    p_run.add_argument("--oracle", action="store_true",
                       help="also write exact number-state reference values "
                            "(small alpha0 only)")

    p_sweep = sub.add_parser("sweep", help="one run per pump spec")
    _add_common(p_sweep)
    p_sweep.add_argument("--pump", action="append", default=None,
                         metavar="R:QUAD", help="e.g. 0.5:x (repeatable)")

    return parser


def _setting(args, file_cfg: dict[str, str], profile: dict, key: str, cast=str):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in file_cfg:
        raw = file_cfg[key]
        return cast(raw) if cast is not bool else raw.lower() in ("1", "true", "yes")
    if key in profile:
        return profile[key]
    return DEFAULTS.get(key)


def _build_config(args) -> SimConfig:
    file_cfg = parse_config_file(args.config) if args.config else {}
    profile_name = args.profile or file_cfg.get("profile")
    profile = PROFILES.get(profile_name, {}) if profile_name else {}

    def get(key, cast=str):
        return _setting(args, file_cfg, profile, key, cast)

    pump = PumpSpec(
        alpha0=parse_alpha0(str(get("alpha0"))),
        r=float(get("squeeze_r", float) or 0.0),
        phi=0.0 if (get("squeeze_quad") or "x") == "x" else math.pi / 2,
    )
    return SimConfig(
        pump=pump,
        kappa=float(get("kappa", float)),
        zeta_max=float(get("zeta_max", float)),
        d_zeta=float(get("d_zeta", float)),
        record_every=float(get("record_every", float)),
        trajectories=int(get("trajectories", int)),
        batches=int(get("batches", int)),
        scheme=str(get("scheme")),
        master_seed=int(get("seed", int)),
        workers=int(get("workers", int)),
        output_path=args.out,
        deterministic=bool(get("deterministic", bool) or False),
    )


def _write_fock_reference(config: SimConfig, path: str):
    """Exact observables on the same zeta grid, same CSV schema (SE = 0)."""
    state = prepare_input(config.pump)
    dz = (
        config.record_every / config.scale
        if len(config.zeta_grid) > 1
        else 0.0
    )
    lines = [CSV_HEADER]
    for zeta in config.zeta_grid:
        scalars = fock_observables(state)
        row = [format(float(zeta), ".12g")]
        for name in SCALARS:
            v = scalars[name]
            row.append("" if math.isnan(v) else format(v, ".12g"))
            row.append("0")
        row.append("0")
        lines.append(",".join(row))
        if dz:
            state = evolve(state, config.kappa, dz)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_pump(text: str, alpha0: complex) -> PumpSpec:
    try:
        r_s, quad = text.split(":")
        r = float(r_s)
    except ValueError as exc:
        raise ConfigError(f"cannot parse pump {text!r} (expected 'R:QUAD')") from exc
    if quad not in ("x", "y"):
        raise ConfigError(f"pump quadrature must be x or y, got {quad!r}")
    return PumpSpec(alpha0=alpha0, r=r, phi=0.0 if quad == "x" else math.pi / 2)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        if args.command == "run":
            reports = run(config)
            last = reports[-1]
            print(f"backend={kernel.BACKEND} rows={len(reports)} out={args.out}")
            print(
                f"zeta={last.zeta:g} Na={last.Na:.6g} efficiency="
                f"{last.efficiency:.4g} DS_minus={last.DS_minus:.4g}"
            )
            if args.oracle:
                oracle_path = args.out + ".fock.csv"
                _write_fock_reference(config, oracle_path)
                print(f"oracle reference written to {oracle_path}")
        else:
            pump_specs = [
                _parse_pump(text, config.pump.alpha0) for text in (args.pump or [])
            ]
            paths = sweep(config, pump_specs)
            for path in paths:
                print(path)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
