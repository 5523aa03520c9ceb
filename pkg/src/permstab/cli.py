"""Command-line entry point.

Every subcommand is a thin shell over one library call and adds no
semantics: outputs are canonical JSON (or CSV for experiments) with exact
rationals as "p/q".  Exit codes: 0 success, 1 domain error (one line
naming the violated precondition), 2 malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import files, words as W
from .actions import defect
from .cosets import BudgetExhausted, GroupDoc, class_data, todd_coxeter
from .hyperfinite import check as hf_check, decompose
from .irs import (
    AtomicIRS,
    amplify,
    build_cosofic_action,
    irs_of_action,
    weakstar_dist_trunc,
)
from .lab import make_challenge, repair, rows_to_csv, run_experiment, standard_action
from .metrics import d_gen_exact, d_gen_upper, d_stat_trunc, local_profile

DEFAULT_RADIUS = 3
DEFAULT_EXACT_CAP = 8
DEFAULT_MAX_COSETS = 10**6


class DomainError(Exception):
    pass


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInput(f"cannot read {path}: {e}") from e


class MalformedInput(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(files.dumps(obj))


def _words_arg(raw: str) -> list:
    items = [part for chunk in raw.split(",") for part in chunk.split()]
    return [W.from_str(s) for s in items]


def _action(path: str):
    return files.action_from_obj(_load(path))


def _irs_arg(path: str):
    obj = _load(path)
    if "classes" in obj:
        return files.irs_from_obj(obj, Path(path).parent)
    return irs_of_action(files.action_from_obj(obj), DEFAULT_RADIUS)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="permstab")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("defect", help="summed relator defect of an action")
    p.add_argument("--action", required=True)
    p.add_argument("--relators", required=True)

    p = sub.add_parser("dgen", help="generator-metric between two actions")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_EXACT_CAP)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("dstat", help="truncated statistical distance")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)

    p = sub.add_parser("cosets", help="coset enumeration")
    p.add_argument("--presentation", required=True)
    p.add_argument("--subgroup", default="")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)

    p = sub.add_parser("irs", help="IRS operations")
    irs_sub = p.add_subparsers(dest="irs_command", required=True)
    q = irs_sub.add_parser("of-action", help="trace profile of an action")
    q.add_argument("action")
    q.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
    q = irs_sub.add_parser("build", help="finite model of an atomic IRS")
    q.add_argument("--irs", required=True)
    q.add_argument("--precision", type=int, default=1)
    q = irs_sub.add_parser("dist", help="truncated cylinder distance")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--radius", type=int, default=DEFAULT_RADIUS)

    p = sub.add_parser("build", help="finite model of an atomic IRS")
    p.add_argument("--irs", required=True)
    p.add_argument("--precision", type=int, default=1)

    p = sub.add_parser("amplify", help="pad an action to a target size")
    p.add_argument("--action", required=True)
    p.add_argument("--target", type=int, required=True)

    p = sub.add_parser("hyperfinite", help="vertex-removal decomposition")
    p.add_argument("--action", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--strategy", default="bfs-tiling")

    p = sub.add_parser("challenge", help="perturb an exact catalog action")
    p.add_argument("--group", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--swaps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("repair", help="repair a challenge")
    p.add_argument("--challenge", required=True)
    p.add_argument("--strategy", default="descent")
    p.add_argument("--budget", type=int, default=100_000)

    p = sub.add_parser("experiment", help="run a challenge/repair sweep")
    p.add_argument("--spec", required=True)
    p.add_argument("--out")

    return top


def _run(args) -> None:
    if args.command == "defect":
        X = _action(args.action)
        _emit({"defect": files.format_fraction(defect(X, _words_arg(args.relators)))})
    elif args.command == "dgen":
        X, Y = _action(args.a), _action(args.b)
        if args.exact:
            _emit({"dgen": files.format_fraction(d_gen_exact(X, Y, args.limit))})
        else:
            value, witness = d_gen_upper(X, Y, args.restarts, args.seed)
            _emit(
                {
                    "dgen": files.format_fraction(value),
                    "witness": list(witness.images),
                }
            )
    elif args.command == "dstat":
        _emit(
            {
                "dstat": files.format_fraction(
                    d_stat_trunc(_action(args.a), _action(args.b), args.radius)
                )
            }
        )
    elif args.command == "cosets":
        pres = files.presentation_from_obj(_load(args.presentation))
        table = todd_coxeter(pres, tuple(_words_arg(args.subgroup)), args.max_cosets)
        size, _ = class_data(table)
        out = files.table_to_obj(table)
        out.update({"index": table.index, "class_size": size, "normalizer_index": size})
        _emit(out)
    elif args.command == "irs" and args.irs_command == "of-action":
        emp = irs_of_action(_action(args.action), args.radius)
        _emit(files.profile_to_obj(emp.profile))
    elif (args.command == "irs" and args.irs_command == "build") or args.command == "build":
        mu = files.irs_from_obj(_load(args.irs), Path(args.irs).parent)
        _emit(files.action_to_obj(build_cosofic_action(mu, args.precision)))
    elif args.command == "irs" and args.irs_command == "dist":
        value = weakstar_dist_trunc(_irs_arg(args.a), _irs_arg(args.b), args.radius)
        _emit({"dist": files.format_fraction(value)})
    elif args.command == "amplify":
        _emit(files.action_to_obj(amplify(_action(args.action), args.target)))
    elif args.command == "hyperfinite":
        X = _action(args.action)
        d = decompose(X, files.parse_fraction(args.epsilon), args.strategy)
        assert hf_check(X, d)
        _emit(files.decomposition_to_obj(d))
    elif args.command == "challenge":
        action, pres = standard_action(args.group, args.size)
        c = make_challenge(action, pres.relators, args.swaps, args.seed)
        obj = files.challenge_to_obj(c)
        if args.out:
            Path(args.out).write_text(files.dumps(obj))
        else:
            _emit(obj)
    elif args.command == "repair":
        c = files.challenge_from_obj(_load(args.challenge))
        report = repair(c, args.strategy, args.budget)
        _emit(
            {
                "succeeded": report.succeeded,
                "strategy": report.strategy,
                "distance": files.format_fraction(report.distance),
                "witness": list(report.witness.images),
                "solution": files.action_to_obj(report.solution),
            }
        )
    elif args.command == "experiment":
        spec = _load(args.spec)
        try:
            rows = run_experiment(
                spec["group"],
                spec["sizes"],
                spec.get("k", [0]),
                spec.get("strategies", ["descent"]),
                spec.get("seed", 0),
                spec.get("radius", DEFAULT_RADIUS),
                spec.get("budget", 100_000),
            )
        except KeyError as e:
            raise MalformedInput(f"experiment spec missing key {e}") from e
        text = rows_to_csv(rows)
        if spec_out := args.out:
            Path(spec_out).write_text(text)
        else:
            sys.stdout.write(text)
    else:  # pragma: no cover - argparse enforces the choices
        raise MalformedInput(f"unknown subcommand {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        _run(args)
    except MalformedInput as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, BudgetExhausted, ZeroDivisionError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (KeyError, json.JSONDecodeError) as e:
        print(f"error: malformed input ({e})", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
