"""Command-line front end: ``evensearch {gen,search,verify,oracle-stats}``.

Exit codes: 0 found / identical, 1 not found / differs, 2 usage error,
3 input format error, 4 oracle contract violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .criteria import as_indexed_function, gen_instance, load_items, load_spec, save_items, save_spec
from .errors import ContractError, FormatError, GenerationError, IndexRangeError
from .oracle import ExhaustiveOracle
from .qsim import amplified_oracle, oracle_stats
from .register import RegisterPattern
from .search import linear_scan, search_multi, search_single

EXIT_FOUND, EXIT_NOT_FOUND, EXIT_USAGE, EXIT_FORMAT, EXIT_CONTRACT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _positions(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if part:
            try:
                out.append(int(part))
            except ValueError:
                raise argparse.ArgumentTypeError(f"not an integer position: {part!r}") from None
    return out


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evensearch", description="Unstructured search through evenness-oracle calls."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a planted instance (items + spec files)")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--n", type=_positive, required=True, help="magnitude bits; list size 2**n")
    gen.add_argument("--m", type=_positive, required=True, help="item width in bits")
    gen.add_argument("--plant", type=_positions, action="append", default=[],
                     help="matching positions, comma separated; repeatable")
    gen.add_argument("--size", type=_positive, default=None, help="stored items (default 2**n)")
    gen.add_argument("--f2", default=None, help="force a transform instead of drawing one")
    gen.add_argument("--items", type=Path, required=True)
    gen.add_argument("--spec", type=Path, required=True)

    def add_run_args(p, default_algo):
        p.add_argument("--items", type=Path, required=True)
        p.add_argument("--spec", type=Path, required=True)
        p.add_argument("--algo", choices=("single", "multi"), default=default_algo)
        p.add_argument("--oracle", choices=("exhaustive", "sampled"), default="exhaustive")
        p.add_argument("--shots", type=_positive, default=1)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--adaptive", action="store_true",
                       help="multi only: skip the right probe when the left one is even")
        p.add_argument("--trace", type=Path, default=None, help="write the JSON trace here")

    add_run_args(sub.add_parser("search", help="run a search and print matching positions"), "single")
    add_run_args(sub.add_parser("verify", help="compare a search against a linear scan"), "multi")

    stats = sub.add_parser("oracle-stats", help="detection statistics of the sampling oracle")
    stats.add_argument("--items", type=Path, required=True)
    stats.add_argument("--spec", type=Path, required=True)
    stats.add_argument("--pattern", default=None, help="register pattern, e.g. +00 (default: +0..0)")
    stats.add_argument("--shots", type=_positive, default=1)
    return parser


def _fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy % (1 << 63))


def _run(args):
    items = load_items(args.items)
    spec = load_spec(args.spec)
    spec.check_item_width(items.item_width)
    if args.oracle == "sampled":
        seed = args.seed if args.seed is not None else _fresh_seed()
        oracle = amplified_oracle(args.shots, seed)
    else:
        seed = args.seed
        oracle = ExhaustiveOracle()
    if args.adaptive and args.algo != "multi":
        raise UsageError("--adaptive applies to --algo multi only")
    if args.adaptive and not oracle.exact:
        raise UsageError("--adaptive requires the exhaustive oracle")
    if args.algo == "single":
        result = search_single(spec, items, oracle, seed=seed)
    else:
        result = search_multi(spec, items, oracle, seed=seed, adaptive=args.adaptive)
    if args.trace is not None:
        args.trace.write_text(json.dumps(result.to_json(), indent=2) + "\n")
    return items, spec, result


def _ledger_line(result, seed):
    s = result.ledger.snapshot()
    line = "oracle_calls=%(oracle_calls)d point_evaluations=%(point_evaluations)d shots=%(shots)d" % s
    if seed is not None:
        line += f" seed={seed}"
    return line


def cmd_gen(args, out) -> int:
    planted = [p for group in args.plant for p in group]
    items, spec = gen_instance(args.seed, args.n, args.m, planted, size=args.size, f2=args.f2)
    save_items(items, args.items)
    save_spec(spec, args.spec)
    print(f"wrote {items.logical_size} items of {items.item_width} bits to {args.items}", file=out)
    print(f"spec {json.dumps(spec.to_json(), sort_keys=True)} -> {args.spec}", file=out)
    return EXIT_FOUND


def cmd_search(args, out) -> int:
    _, _, result = _run(args)
    if result.found:
        for p in result.positions:
            print(p, file=out)
    else:
        print("not present", file=out)
    print(_ledger_line(result, result.trace.seed), file=out)
    return EXIT_FOUND if result.found else EXIT_NOT_FOUND


def cmd_verify(args, out) -> int:
    items, spec, result = _run(args)
    expected = linear_scan(spec, items)
    got = result.positions
    print(_ledger_line(result, result.trace.seed), file=out)
    if got == expected:
        print(f"identical: {got}", file=out)
        return EXIT_FOUND
    print(f"search: {got}", file=out)
    print(f"scan:   {expected}", file=out)
    missing = sorted(set(expected) - set(got))
    extra = sorted(set(got) - set(expected))
    print(f"missing: {missing} extra: {extra}", file=out)
    if args.oracle == "sampled":
        n = items.n
        p = 1.0 / (1 << n)
        print(
            f"note: a single match is detected with probability {p:.3g} (= 1/2^{n}) per shot "
            f"over the full positive domain; with {args.shots} shot(s) a probe misses it with "
            f"probability {(1 - p) ** args.shots:.3g}",
            file=out,
        )
    return EXIT_NOT_FOUND


def cmd_oracle_stats(args, out) -> int:
    items = load_items(args.items)
    spec = load_spec(args.spec)
    f = as_indexed_function(spec, items)
    if args.pattern is None:
        pattern = RegisterPattern.positive(f.width)
    else:
        try:
            pattern = RegisterPattern.parse(args.pattern)
        except FormatError as exc:
            raise UsageError(str(exc)) from None
        if pattern.width != f.width:
            raise UsageError(f"pattern width {pattern.width} != index width {f.width}")
    stats = oracle_stats(f, pattern, args.shots)
    print(json.dumps({"pattern": str(pattern), **stats.to_json()}, sort_keys=True), file=out)
    return EXIT_FOUND


COMMANDS = {
    "gen": cmd_gen,
    "search": cmd_search,
    "verify": cmd_verify,
    "oracle-stats": cmd_oracle_stats,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, GenerationError, IndexRangeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ContractError as exc:
        print(f"oracle contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
