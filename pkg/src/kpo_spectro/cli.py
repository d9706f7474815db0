"""Command-line interface.

    kpo-spectro <subcommand> [--config NAME_OR_PATH] [--set key=value ...]
                [--out-dir DIR] [--jobs N] [--force]

Subcommands: spectrum2d, spectrum1d, levels, populations, nominal, eta,
wigner, steady, validate-config.  --config accepts a path to a JSON file or
the name of a shipped scenario (see ``kpo-spectro validate-config --list``).
Exit codes: 0 success, 1 solver failure, 2 configuration error.
"""

import argparse
import os
import sys

from .config import (
    ScenarioConfig,
    apply_overrides,
    load_scenario,
    scenario_names,
    validate_config,
)
from .errors import ConfigError, SolverError
from . import sweeps

_RUNNERS = {
    "spectrum2d": sweeps.run_spectrum_2d,
    "spectrum1d": sweeps.run_spectrum_1d,
    "populations": sweeps.run_populations,
    "nominal": sweeps.run_nominal,
    "eta": sweeps.run_eta,
    "steady": sweeps.run_steady,
}


def _default_jobs() -> int:
    env = os.environ.get("KPO_SPECTRO_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpo-spectro",
        description="Reflection spectroscopy simulator for pumped Kerr parametrons",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="default",
                        help="scenario name or path to a JSON config (default: 'default')")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config field")
    common.add_argument("--out-dir", default="out", help="artifact directory")
    common.add_argument("--jobs", type=int, default=_default_jobs(),
                        help="parallel workers (default: $KPO_SPECTRO_JOBS or 1)")
    common.add_argument("--force", action="store_true",
                        help="overwrite artifacts with mismatched provenance")
    for name in ("spectrum2d", "levels", "populations", "nominal", "eta",
                 "wigner", "steady"):
        sub.add_parser(name, parents=[common])
    p1d = sub.add_parser("spectrum1d", parents=[common])
    p1d.add_argument("--per-transition", action="store_true",
                     help="emit per-transition contribution columns")
    val = sub.add_parser("validate-config", parents=[common])
    val.add_argument("--list", action="store_true", help="list shipped scenarios")
    return parser


def _load(args) -> ScenarioConfig:
    raw = load_scenario(args.config)
    raw = apply_overrides(raw, args.overrides)
    return validate_config(raw)


def _out_path(scenario: ScenarioConfig, kind: str, out_dir: str,
              index: int | None = None) -> str:
    default_name = f"{scenario.name}_{kind}.csv"
    name = scenario.outputs.get(kind, default_name)
    if index is not None:
        if "{i}" in name:
            name = name.format(i=index)
        else:
            stem, dot, suffix = name.rpartition(".")
            name = f"{stem}_{index}{dot}{suffix}" if dot else f"{name}_{index}"
    return os.path.join(out_dir, name)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate-config":
            if args.list:
                for name in scenario_names():
                    print(name)
                return 0
            scenario = _load(args)
            print(f"OK {scenario.name} config_hash={scenario.config_hash}")
            return 0
        scenario = _load(args)
        written = []
        if args.command == "levels":
            levels, transitions = sweeps.run_levels(scenario, jobs=args.jobs)
            written.append(sweeps.write_csv(
                levels, _out_path(scenario, "levels", args.out_dir), force=args.force))
            written.append(sweeps.write_csv(
                transitions, _out_path(scenario, "transitions", args.out_dir),
                force=args.force))
        elif args.command == "wigner":
            results = sweeps.run_wigner(scenario, jobs=args.jobs)
            for i, result in enumerate(results):
                written.append(sweeps.write_csv(
                    result, _out_path(scenario, "wigner", args.out_dir, index=i),
                    force=args.force))
        elif args.command == "spectrum1d":
            result = sweeps.run_spectrum_1d(scenario, jobs=args.jobs,
                                            per_transition=args.per_transition)
            written.append(sweeps.write_csv(
                result, _out_path(scenario, "spectrum1d", args.out_dir),
                force=args.force))
        else:
            result = _RUNNERS[args.command](scenario, jobs=args.jobs)
            written.append(sweeps.write_csv(
                result, _out_path(scenario, args.command, args.out_dir),
                force=args.force))
        for path in written:
            print(path)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
