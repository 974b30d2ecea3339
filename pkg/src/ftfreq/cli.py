"""Command-line interface.

    ftfreq simulate --config scenario.cfg [--out DIR] [--seed N]
    ftfreq estimate --config scenario.cfg --input trace.csv [--out DIR]
    ftfreq scenario NAME [--out DIR] [--seed N]

Exit codes: 0 success, 2 invalid configuration or input file, 3 numeric
fault during estimation, 4 run completed without enough excitation to
extract the finite-time estimate.
"""

from __future__ import annotations

import argparse
import sys

from .config import load_config, with_seed
from .errors import ConfigError, NumericFault
from .harness import RunResult, estimate_from_file, run_scenario
from .scenarios import BUILTIN_NAMES, builtin_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_NOT_EXCITED = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftfreq",
        description="Finite-time frequency estimation for multi-sinusoidal signals.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate a configured scenario")
    sim.add_argument("--config", required=True, help="scenario config file")
    sim.add_argument("--out", default="out", help="output directory")
    sim.add_argument("--seed", type=int, default=None,
                     help="override the uniform-noise seed")

    est = sub.add_parser("estimate", help="estimate frequencies from a recorded trace")
    est.add_argument("--config", required=True, help="config file (signal section ignored)")
    est.add_argument("--input", required=True, help="input CSV with columns time,y")
    est.add_argument("--out", default="out", help="output directory")

    scen = sub.add_parser("scenario", help="run a built-in scenario")
    scen.add_argument("name", choices=BUILTIN_NAMES)
    scen.add_argument("--out", default="out", help="output directory")
    scen.add_argument("--seed", type=int, default=None,
                      help="override the uniform-noise seed")
    return parser


def _apply_seed(cfg, seed):
    if seed is None:
        return cfg
    cfg, applied = with_seed(cfg, seed)
    if not applied:
        print("note: --seed ignored (scenario has no seeded disturbance)",
              file=sys.stderr)
    return cfg


def _report(result: RunResult) -> int:
    final = result.final
    print(f"samples: {len(result.records)}")
    if result.estimate_path:
        print(f"estimates: {result.estimate_path}")
    if result.trace_path:
        print(f"trace: {result.trace_path}")
    if result.metadata_path:
        print(f"metadata: {result.metadata_path}")
    grad = " ".join(f"{w:.6f}" for w in final.omega_grad)
    print(f"omega_grad(final): {grad}")
    if final.omega_ft is not None:
        ft = " ".join(f"{w:.6f}" for w in final.omega_ft)
        print(f"omega_ft: {ft}")
        return EXIT_OK
    print("omega_ft: not extracted (insufficient excitation)")
    return EXIT_NOT_EXCITED


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            cfg = _apply_seed(load_config(args.config), args.seed)
            result = run_scenario(cfg, out_dir=args.out)
        elif args.command == "estimate":
            cfg = load_config(args.config)
            result = estimate_from_file(args.input, cfg, out_dir=args.out)
        else:
            cfg = _apply_seed(builtin_scenario(args.name), args.seed)
            result = run_scenario(cfg, out_dir=args.out)
    except ConfigError as exc:
        for violation in exc.violations:
            print(f"config error: {violation}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFault as exc:
        print(f"numeric fault: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return _report(result)


if __name__ == "__main__":
    sys.exit(main())
