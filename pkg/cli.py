"""Command-line entry point: run a verification suite or export a root trajectory.

    python cli.py gram --k 7
    python cli.py all --config lgmirror.conf --out reports
    python cli.py trajectory --shape rotation --sectors 1 --k 5 --s 1e-6
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from pydantic import ValidationError

from config import Config, config
from lgmirror.errors import ConvergenceError, InvalidInputError
from lgmirror.models import LGSpec
from lgmirror.reports import constant_path, emit_trajectories, line_path, rotation_path
from lgmirror.suites import SUITES, get_all_suites, run_suite

logger = logging.getLogger("lgmirror")

TRAJECTORY = "trajectory"

# flag name -> config key
FLAGS = {
    "k": "K", "n": "N", "q": "Q", "s": "S", "delta": "DELTA", "steps": "STEPS",
    "tol": "TOL", "out": "OUT", "seed": "SEED",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lgmirror", description="Verification suites for the LG mirror of X_{k+1}")
    parser.add_argument("command", nargs="?", help=f"suite name or '{TRAJECTORY}'")
    parser.add_argument("--k", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--q", type=int)
    parser.add_argument("--s", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--steps", type=int)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--out")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--config", help="key=value file with K, N, Q, S, DELTA, STEPS, TOL, SEED, OUT, ...")
    parser.add_argument("--verbose", "-v", action="store_true")
    parser.add_argument("--list", action="store_true", help="list the suites and exit")

    traj = parser.add_argument_group("trajectory")
    traj.add_argument("--shape", choices=("rotation", "line", "constant"), default="rotation")
    traj.add_argument("--t0", type=complex)
    traj.add_argument("--t1", type=complex, help="end point of a line path")
    traj.add_argument("--sectors", type=int, default=1, help="rotation angle in units of 2 pi/(k-2)")
    traj.add_argument("--csv", help="output file (default <out>/trajectory_k<k>.csv)")
    return parser


def load_params(args: argparse.Namespace) -> Config:
    base = Config.from_file(args.config) if args.config else config
    return base.merged({key: getattr(args, flag) for flag, key in FLAGS.items()})


def cmd_list() -> int:
    for suite in get_all_suites():
        print(f"{suite.name:14s} {suite.description}")
    return 0


def cmd_trajectory(args: argparse.Namespace, params: Config) -> int:
    spec = LGSpec(k=params.K, s=params.S, delta=params.DELTA)
    t0 = args.t0 if args.t0 is not None else complex(params.T0)
    if args.shape == "rotation":
        path = rotation_path(t0, 2 * math.pi * args.sectors / (spec.k - 2), params.STEPS)
    elif args.shape == "line":
        if args.t1 is None:
            raise InvalidInputError("a line path needs --t1")
        path = line_path(t0, args.t1, params.STEPS)
    else:
        path = constant_path(t0, params.STEPS)
    out = Path(args.csv) if args.csv else Path(params.OUT) / f"trajectory_k{spec.k}.csv"
    traj = emit_trajectories(spec, path, out, max_step=params.MAX_STEP)
    logger.info(f"permutation {traj.permutation}, {traj.halvings} halvings, {len(traj.collisions)} near collisions")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s [%(name)s] %(levelname)s: %(message)s",
    )
    if args.list:
        return cmd_list()
    if not args.command:
        parser.print_usage()
        return 2

    try:
        params = load_params(args)
        if args.command == TRAJECTORY:
            return cmd_trajectory(args, params)
        if args.command not in SUITES:
            raise InvalidInputError(f"unknown suite {args.command!r}; try --list")
    except (InvalidInputError, ValidationError) as e:
        logger.error(str(e))
        return 2
    except ConvergenceError as e:
        logger.error(str(e))
        return 3

    report = run_suite(args.command, params, out=params.OUT)
    failed = [c.name for c in report.checks if not c.passed]
    logger.info(f"{report.suite}: {report.status.value}, {len(report.checks) - len(failed)}/{len(report.checks)} checks passed")
    if failed:
        logger.info(f"failed checks: {', '.join(failed)}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
