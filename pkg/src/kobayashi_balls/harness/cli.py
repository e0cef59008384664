"""Command-line entry point.

Exit codes: 0 when every check passes, 1 on any violation, 2 on a
configuration error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys

from ..domains import DomainError, SolverError
from .config import ConfigError, ExperimentConfig, load_config
from .report import write_grid, write_report
from .suites import (
    export_slice,
    run_metric_properties,
    run_minimal_basis,
    run_projection_diagnostic,
    run_sandwich,
    run_sharpness,
    run_tau_decay,
)

SUITES = {
    "minimal-basis": run_minimal_basis,
    "sandwich": run_sandwich,
    "sharpness": run_sharpness,
    "metric-props": run_metric_properties,
    "tau-decay": run_tau_decay,
    "projection": run_projection_diagnostic,
}
# suites that run on built-in planar examples without a config file
CONFIG_OPTIONAL = {"sharpness", "metric-props"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kobayashi-balls",
                                description="Minimal bases and invariant-ball sandwich checks.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in [*SUITES, "slice"]:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON experiment configuration")
        s.add_argument("--seed", type=int, help="override the configured seed")
        s.add_argument("--out", help="output directory (default: configured 'out')")
        s.add_argument("--samples", type=int, help="override the configured sample count")
    return p


def _config(args) -> ExperimentConfig:
    if args.config is None:
        if args.command not in CONFIG_OPTIONAL:
            raise ConfigError(f"{args.command} needs --config")
        cfg = ExperimentConfig()
    else:
        cfg = load_config(args.config)
    return cfg.with_overrides(seed=args.seed, samples=args.samples, out=args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "slice":
            report, grid = export_slice(cfg)
            write_grid(grid, f"{cfg.out}/grid.csv")
        else:
            report = SUITES[args.command](cfg)
    except (ConfigError, DomainError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    path = write_report([report], cfg.out, config=dataclasses.asdict(cfg))
    status = "PASS" if report.passed else f"FAIL ({report.violation_count} violations)"
    print(f"{args.command}: {status} -> {path}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
