"""Command-line entry point: ``kempeflip <experiment> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .harness import KINDS, ExperimentConfig, run_experiment


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kempeflip", description="Run a flip-dynamics experiment.")
    ap.add_argument("experiment", choices=KINDS)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--preset", help="preset name or flip-parameter file")
    ap.add_argument("--graph", help="G1:<Delta>, G2:<Delta>, random:<n>,<Delta>,<seed>, "
                                    "all:<n_max> (contract only) or an edge-list file")
    ap.add_argument("--steps", type=int)
    ap.add_argument("--step-cap", type=int, dest="step_cap")
    ap.add_argument("--list-size", type=int, dest="list_size")
    ap.add_argument("--ratio", type=float, help="k / Delta for the barrier sweep")
    ap.add_argument("--out", help="output prefix; writes <out>.csv and <out>.json")
    ap.add_argument("--config", help="JSON file whose keys override the flags")
    return ap


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    data = {k: v for k, v in vars(args).items() if v is not None and k not in ("experiment", "config")}
    data["kind"] = args.experiment
    if args.config:
        data.update(json.loads(Path(args.config).read_text()))
    return ExperimentConfig.from_mapping(data)


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        res = run_experiment(cfg)
    except (ValueError, OSError) as exc:
        print(f"kempeflip: error: {exc}", file=sys.stderr)
        return 2
    print(res.to_json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
