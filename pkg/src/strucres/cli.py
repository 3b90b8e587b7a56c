"""Command-line front end: solve queries, render trees, probe productivity.

Exit codes: 0 at least one answer (or a finite verdict), 1 finite
failure, 2 limits exhausted, 3 the productivity bound was exceeded,
64 usage, input, or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .derive import SearchLimits, solve
from .program import ParseError, Signature, parse_program, parse_query, pretty_term
from .program import clause_vars
from .rewrite import DEFAULT_FUEL, Verdict, productivity_probe, rew
from .render import to_ascii, to_dot
from .sld import sld_solve
from .term import IDENTITY

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_EXCEEDS = 3
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="strucres", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-p", "--program", required=True, metavar="FILE")
        p.add_argument("-q", "--query", required=True, metavar="STRING")
        p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    p_solve = sub.add_parser("solve", help="run a query and print its answers")
    common(p_solve)
    p_solve.add_argument("--engine", choices=("s", "sld"), default="s")
    p_solve.add_argument("--strategy", choices=("dfs", "bfs", "iddfs"), default="dfs")
    p_solve.add_argument("--max-depth", type=int, default=64)
    p_solve.add_argument("--max-steps", type=int, default=10000)
    p_solve.add_argument("--all-answers", action="store_true")

    p_render = sub.add_parser("render", help="render the query's rewriting tree")
    common(p_render)
    p_render.add_argument("--render", choices=("dot", "ascii"), default="dot", dest="format")

    p_prod = sub.add_parser("productivity", help="fuel-bounded finiteness probe")
    common(p_prod)
    return parser


def _load(program_path: str, query_text: str):
    try:
        with open(program_path, encoding="utf-8") as handle:
            source = handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read program file: {exc}") from exc
    program, signature = parse_program(source)
    goal = parse_query(query_text)
    for t in goal.body:
        signature.observe_term(t)
    return program, goal


def _format_answer(goal, bindings) -> str:
    qvars = clause_vars(goal)
    parts = [f"{v.name} = {pretty_term(bindings.apply(v))}" for v in qvars if bindings.apply(v) != v]
    return ", ".join(parts) if parts else "true"


def cmd_solve(args) -> int:
    program, goal = _load(args.program, args.query)
    if args.engine == "sld":
        stream = sld_solve(program, goal, max_steps=args.max_steps)
    else:
        limits = SearchLimits(
            fuel=args.fuel, max_depth=args.max_depth, max_steps=args.max_steps
        )
        stream = solve(program, goal, args.strategy, limits)
    found = False
    for answer in stream:
        found = True
        print(_format_answer(goal, answer.bindings))
        if not args.all_answers:
            return EXIT_OK
    if found:
        return EXIT_OK
    if stream.exhausted:
        print("unknown (limits exhausted)")
        return EXIT_UNKNOWN
    print("no")
    return EXIT_NO


def cmd_render(args) -> int:
    program, goal = _load(args.program, args.query)
    tree = rew(program, goal, IDENTITY, args.fuel)
    print(to_dot(tree) if args.format == "dot" else to_ascii(tree))
    return EXIT_OK


def cmd_productivity(args) -> int:
    program, goal = _load(args.program, args.query)
    verdict = productivity_probe(program, goal, args.fuel)
    print(f"{verdict.value} (fuel={args.fuel})")
    return EXIT_OK if verdict is Verdict.FINITE_WITHIN_BOUND else EXIT_EXCEEDS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "render":
            return cmd_render(args)
        return cmd_productivity(args)
    except _UsageError as exc:
        print(f"strucres: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"strucres: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
