"""Command-line entry point.

Subcommands: ``run`` and ``sweep`` execute experiments from a config
file, ``lower-bound`` evaluates the regret lower bound on an instance,
``validate`` checks an instance, ``list-instances`` shows the builtins.
Exit codes: 0 success, 1 configuration/validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys

from .analysis import lower_bound_general
from .core import InstanceFileError
from .harness import load_config, run_experiment, sweep
from .instances import list_builtin_instances, resolve_instance

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drbandits",
        description="Simulate bandit policies that fuse reward and dueling feedback.",
    )
    sub = parser.add_subparsers(dest="command")

    def add_overrides(p):
        p.add_argument("--reps", type=int, help="override repetition count")
        p.add_argument("--seed", type=int, help="override base seed")
        p.add_argument("--horizon", type=int, help="override horizon T")
        p.add_argument("--out", help="override output directory")

    p_run = sub.add_parser("run", help="run the experiment described by a config file")
    p_run.add_argument("config")
    add_overrides(p_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep described by a config file")
    p_sweep.add_argument("config")
    add_overrides(p_sweep)

    p_lb = sub.add_parser("lower-bound", help="evaluate the regret lower bound on an instance")
    p_lb.add_argument("instance", help="builtin name, name(delta), or instance file path")
    p_lb.add_argument("--alpha", type=float, default=0.5)
    p_lb.add_argument("--out", help="write CSV here instead of stdout")

    p_val = sub.add_parser("validate", help="validate an instance")
    p_val.add_argument("instance")

    sub.add_parser("list-instances", help="list builtin instances")
    return parser


def _apply_overrides(config, args):
    updates = {}
    if args.reps is not None:
        updates["reps"] = args.reps
    if args.seed is not None:
        updates["base_seed"] = args.seed
    if args.horizon is not None:
        updates["T"] = args.horizon
    if args.out is not None:
        updates["output"] = args.out
    return dataclasses.replace(config, **updates)


def _cmd_run(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    run_experiment(config)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    sweep(config)
    return EXIT_OK


def _cmd_lower_bound(args) -> int:
    inst = resolve_instance(args.instance)
    report = lower_bound_general(inst, args.alpha)
    rows = [["arm", "reward_term", "dueling_term", "min_term", "best_competitor", "simplified_term"]]
    for k in sorted(report.per_arm_terms):
        r, d, m = report.per_arm_terms[k]
        rows.append([k, repr(float(r)), repr(float(d)), repr(float(m)),
                     report.best_competitor[k],
                     repr(float(report.simplified_terms[k]))])
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
    else:
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)
    return EXIT_OK


def _cmd_validate(args) -> int:
    resolve_instance(args.instance)
    print(f"{args.instance}: ok")
    return EXIT_OK


def _cmd_list_instances(args) -> int:
    for name in list_builtin_instances():
        print(name)
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "lower-bound": _cmd_lower_bound,
    "validate": _cmd_validate,
    "list-instances": _cmd_list_instances,
}


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage itself
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args)
    except (InstanceFileError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
