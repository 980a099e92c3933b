"""Command line entry point: ``twotrunc run | verify | ffk``.

Exit codes: 0 when every check passes, 1 on an invariant violation,
2 on usage, parse or script-execution errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .ffk import gamma_ffk_check
from .report import ScriptExecutionError, run, to_json, to_text
from .script import ScriptError
from .verify import verify


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _dims(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return _ints(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twotrunc", description="2-truncated cubes and their gamma-complexes")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute a truncation script and print its report")
    r.add_argument("script", help="script file, or - for stdin")
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.add_argument("--faces", choices=("all", "top"), default="top")
    r.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    v = sub.add_parser("verify", help="check every invariant over generated sequences")
    v.add_argument("--dim", type=_dims, default=[2, 3], help="dimension, list (2,3) or range (4-6)")
    v.add_argument("--steps", type=int, default=4)
    v.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--no-heredity", action="store_true", help="skip rebuilding faces from cubes")
    v.add_argument("--allow-large", action="store_true", help="lift the dim <= 6, steps <= 12 cap")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    f = sub.add_parser("ffk", help="check a gamma-vector against the FFK inequalities")
    f.add_argument("--gamma", type=_ints, required=True)
    f.add_argument("--dim", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    if args.command == "run":
        try:
            text = sys.stdin.read() if args.script == "-" else open(args.script, encoding="utf-8").read()
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        try:
            rep = run(text, faces=args.faces, fault=args.inject_fault)
        except (ScriptError, ScriptExecutionError) as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        sys.stdout.write(to_json(rep) if args.format == "json" else to_text(rep))
        return 0 if rep["passed"] else 1

    if args.command == "verify":
        try:
            summary = verify(
                args.dim, args.steps, args.mode, args.count, args.seed,
                heredity=not args.no_heredity, fault=args.inject_fault, allow_large=args.allow_large,
            )
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        sys.stdout.write(json.dumps(summary.as_dict(), indent=2) + "\n")
        for c in summary.failures:
            print(f"counterexample ({', '.join(c.invariants)}):\n{c.script()}", file=sys.stderr)
        return 0 if summary.ok else 1

    chk = gamma_ffk_check(args.gamma, args.dim)
    out = {"gamma": list(chk.gamma), "dim": chk.dim, "results": chk.results, "info": chk.info, "passed": chk.passed}
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0 if chk.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
