"""Command-line entry point: check, classify, enumerate, expand, oracle."""
from __future__ import annotations

import argparse
import json
import sys

from .classify import classify_action
from .enumeration import SearchBounds, enumerate_actions, enumerate_arcs, enumerate_circles, infeasibility_oracle
from .invariants import invariant_report, rational_to_obj, signature_series, verify_expansion
from .lifts import build_config, config_to_obj
from .patterns import ActionDescription, ParseError, parse_action, validate_pattern

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INADMISSIBLE = 2


def _load(path: str) -> ActionDescription:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(path, str(exc)) from exc
    return parse_action(text, validate=False)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _structurally_valid(action: ActionDescription) -> bool:
    return all(not validate_pattern(p) for p in action.patterns)


def cmd_check(args) -> int:
    action = _load(args.file)
    result = classify_action(action)
    out = {
        "admissible": result.admissible,
        "violations": result.to_obj()["violations"],
    }
    if _structurally_valid(action):
        out["invariants"] = invariant_report(action).to_obj()
    _emit(out)
    return EXIT_OK if result.admissible else EXIT_INADMISSIBLE


def cmd_classify(args) -> int:
    result = classify_action(_load(args.file))
    if args.format == "json":
        _emit(result.to_obj())
    else:
        print(result.to_text())
    return EXIT_OK if result.admissible else EXIT_INADMISSIBLE


def cmd_enumerate(args) -> int:
    bounds = SearchBounds(
        max_weight=args.max_weight,
        max_self_int=args.max_self_int,
        max_chain_len=args.max_len,
    )
    runner = {"arcs": enumerate_arcs, "circles": enumerate_circles, "actions": enumerate_actions}[args.kind]
    result = runner(bounds, use_lemmas=args.use_lemmas, jobs=args.jobs)
    print(f"{args.kind}: {len(result.admissible)} admissible, {result.generated} generated", file=sys.stderr)
    _emit(result.to_obj())
    return EXIT_OK


def cmd_expand(args) -> int:
    action = _load(args.file)
    if not _structurally_valid(action):
        for i, p in enumerate(action.patterns):
            for v in validate_pattern(p, f"P{i}"):
                print(v, file=sys.stderr)
        return EXIT_INADMISSIBLE
    series = signature_series(action, args.window)
    check = verify_expansion(action, max(args.window, 0))
    _emit(
        {
            "window_top": series.window_top,
            "coefficients": {str(k): rational_to_obj(c) for k, c in sorted(series.terms().items())},
            "verification": check.to_obj(),
            "lift": config_to_obj(build_config(action)),
        }
    )
    return EXIT_OK if check.ok else EXIT_INADMISSIBLE


def cmd_oracle(args) -> int:
    bounds = SearchBounds(max_weight=args.max_weight, max_self_int=args.max_self_int)
    cert = infeasibility_oracle(args.family, bounds, min_self_int=args.min_self_int)
    _emit(cert.to_obj())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circle-patterns",
        description="Fixed-point patterns of circle actions on 4-manifolds with definite connections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an action and report its invariants")
    p.add_argument("file", help="JSON action description ('-' for stdin)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="diffeomorphism type of an action")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="bounded search for admissible patterns")
    p.add_argument("--kind", choices=("arcs", "circles", "actions"), required=True)
    p.add_argument("--max-weight", type=int, default=50)
    p.add_argument("--max-self-int", type=int, default=10)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--use-lemmas", action="store_true", help="take the structural shortcuts")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("expand", help="signature series coefficients and their check")
    p.add_argument("file")
    p.add_argument("--window", type=int, default=2)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("oracle", help="certificate that a chain length is impossible")
    p.add_argument("--family", choices=("arc3", "arc4", "circle_ge4"), required=True)
    p.add_argument("--max-weight", type=int, default=200)
    p.add_argument("--max-self-int", type=int, default=10)
    p.add_argument("--min-self-int", type=int, default=-1, help="adjunction floor (default -1)")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
