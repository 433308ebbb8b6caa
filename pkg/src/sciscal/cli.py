"""Command-line entry point ``sciscal``.

Every command reads a context file (``--ctx`` or ``$SCISCAL_CTX``) and writes
one canonical JSON document to stdout.  Exit codes: 0 success, 1 a
verification verdict other than EQUAL, 2 unreadable input, 3 guards too
coarse to decide an ordering, 4 input violating a precondition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import DomainError, InvalidMorphism, PrecisionError
from .generators import GeneratorSpec, verify_generator
from .homology import SNAKE_SIGN, snake_closed_form, snake_pipeline
from .iet import IET
from .rect import rect_from_iets
from .regulator import measure_for, regulator_flag
from .scalar import ScalarContext

EXIT_OK = 0
EXIT_UNEQUAL = 1
EXIT_PARSE = 2
EXIT_PRECISION = 3
EXIT_DOMAIN = 4


class InputError(Exception):
    """Input could not be read or parsed."""


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_context(path: str | None) -> ScalarContext:
    path = path or os.environ.get("SCISCAL_CTX")
    if not path:
        raise InputError("no context file: pass --ctx or set SCISCAL_CTX")
    return ScalarContext.from_json(_read_json(path))


def load_iets(ctx: ScalarContext, path: str) -> list[IET]:
    data = _read_json(path)
    if isinstance(data, dict):
        data = data["flag"]
    if not isinstance(data, list):
        raise InputError("expected a list of IET objects")
    return [IET.from_json(ctx, item) for item in data]


def split_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def cmd_regulator(args, ctx: ScalarContext) -> tuple[dict, int]:
    flag = load_iets(ctx, args.flag)
    if not flag:
        raise InvalidMorphism("a flag needs at least one IET")
    chain = regulator_flag(flag, measure_for(args.measure))
    return chain.to_json(), EXIT_OK


def cmd_generator(args, ctx: ScalarContext) -> tuple[dict, int]:
    spec = GeneratorSpec(tuple(ctx.parse(x) for x in split_list(args.lengths)))
    report = verify_generator(spec)
    out = report.to_json(include_chain=args.emit_chain, timing=args.timing)
    if report.ok:
        return out, EXIT_OK
    if report.verdict == "ERROR:PrecisionError":
        return out, EXIT_PRECISION
    if report.verdict.startswith("ERROR"):
        return out, EXIT_DOMAIN
    return out, EXIT_UNEQUAL


def cmd_snake(args, ctx: ScalarContext) -> tuple[dict, int]:
    values = [ctx.parse(x) for x in split_list(args.values)]
    if not values:
        raise InvalidMorphism("the snake map needs at least one value")
    pipeline = snake_pipeline(values)
    closed = snake_closed_form(values)
    return {
        "values": [str(v) for v in values],
        "pipeline": pipeline.to_json(),
        "closed_form": closed.to_json(),
        "sign": SNAKE_SIGN,
        "agree": pipeline == closed.scale(SNAKE_SIGN),
    }, EXIT_OK


def cmd_rect(args, ctx: ScalarContext) -> tuple[dict, int]:
    factors = load_iets(ctx, args.iets)
    if not factors:
        raise InvalidMorphism("a rectangle exchange needs at least one factor")
    return rect_from_iets(factors).to_json(), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sciscal", description="Exact 1-D translational scissors congruence.")
    parser.add_argument("--ctx", help="context JSON file (default: $SCISCAL_CTX)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regulator", help="regulator chain of a flag of IETs")
    p.add_argument("flag", help="JSON list of IETs (or {\"flag\": [...]})")
    p.add_argument("--measure", choices=["vol", "universal"], default="vol")
    p.set_defaults(run=cmd_regulator)

    for name in ("generator", "verify"):
        p = sub.add_parser(name, help="verify the torus generator class for given lengths")
        p.add_argument("--lengths", required=True, help="comma-separated scalar expressions")
        p.add_argument("--emit-chain", action="store_true", help="include the regulator chain")
        p.add_argument("--verify", action="store_true", help="accepted for symmetry; verification always runs")
        p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-determinism)")
        p.set_defaults(run=cmd_generator)

    p = sub.add_parser("snake", help="snake map pipeline versus closed form")
    p.add_argument("--values", required=True, help="comma-separated scalar expressions")
    p.set_defaults(run=cmd_snake)

    p = sub.add_parser("rect", help="box form of the product of IETs")
    p.add_argument("iets", help="JSON list of IETs, one per coordinate")
    p.set_defaults(run=cmd_rect)

    for sp in sub.choices.values():
        sp.add_argument("--ctx", default=argparse.SUPPRESS, help="context JSON file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        ctx = load_context(args.ctx)
        out, code = args.run(args, ctx)
    except PrecisionError as exc:
        print(f"sciscal: precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except DomainError as exc:
        print(f"sciscal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InputError, KeyError, TypeError, ValueError) as exc:
        print(f"sciscal: cannot parse input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    json.dump(out, sys.stdout, sort_keys=True, separators=(",", ":"))
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
