"""Command-line entry point: ``logminorant run <config> [--out DIR] [--seed N] [--scenario NAME]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import SCENARIOS, load_config
from .errors import ConfigError
from .report import emit_report
from .scenarios import run_scenario

log = logging.getLogger("logminorant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logminorant", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the scenarios of a JSON configuration")
    run.add_argument("config", help="path to the JSON configuration")
    run.add_argument("--out", help="output directory (overrides output.dir)")
    run.add_argument("--seed", type=int, help="seed (overrides the configuration)")
    run.add_argument("--scenario", action="append", choices=SCENARIOS,
                     help="run only this scenario; may be repeated")
    run.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg, warnings = load_config(args.config)
        cfg = cfg.with_overrides(seed=args.seed, scenarios=args.scenario, out_dir=args.out)
    except ConfigError as exc:
        for path, msg in exc.problems:
            print(f"config error: {path}: {msg}", file=sys.stderr)
        return 2
    for w in warnings:
        log.warning(w)
    report = run_scenario(cfg, base_dir=Path(args.config).parent, warnings=warnings)
    try:
        code = emit_report(report, cfg.output.dir, cfg.output.report, cfg.output.csv)
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return 2
    for s in report.scenarios:
        log.info("%s: %s (%s)", s.name, s.verdict, s.reason)
    print(f"{report.status}: {Path(cfg.output.dir) / cfg.output.report}")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
