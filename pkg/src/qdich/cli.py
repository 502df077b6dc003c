#!/usr/bin/env python3
"""
qdich command line.

Compiles {H, Tdg, CZ} circuits into post-selected depth-1 QAOA, checks them
against a brute-force oracle, and simulates and samples degree-2 QAOA
instances. Machine-readable output goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 input error, 2 internal invariant failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from qdich import __version__
from qdich.config import settings, settings_from_env
from qdich.errors import FormatError, QdichError
from qdich.tools import compiler, oracle, simulator
from qdich.utils.jsonio import dumps

logger = logging.getLogger("qdich")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors become input errors (exit 1)."""

    def error(self, message: str):
        raise FormatError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdich", description="QAOA compiler and degree-2 simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("compile", help="compile a circuit into a QAOA instance")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", dest="out_path")
    p.add_argument("--iqp", action="store_true", help="emit the IQP specialisation")
    p.add_argument("--monotone", action="store_true", help="apply the monotone rewrite")

    p = commands.add_parser("marginal", help="marginal probability of a degree-2 instance")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--subset", default="")
    p.add_argument("--outcome", default="")

    p = commands.add_parser("sample", help="exact samples of a degree-2 instance")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", dest="out_path")

    p = commands.add_parser("oracle", help="brute-force output distribution")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--backend", choices=["auto", "exact", "float"], default="auto")
    p.add_argument("--subset")
    p.add_argument("--outcome")

    p = commands.add_parser("gadget", help="solve the Hadamard gadget for a completion gate")
    p.add_argument("--F", dest="F", required=True)
    p.add_argument("--lambda-phase", dest="lambda_phase", default="0")

    p = commands.add_parser("verify", help="compile and compare against the oracle")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--backend", choices=["auto", "exact", "float"], default="auto")
    p.add_argument("--iqp", action="store_true")
    p.add_argument("--monotone", action="store_true")

    p = commands.add_parser("graph-info", help="interaction graph, components and cut profile")
    p.add_argument("--in", dest="in_path", required=True)
    return parser


def _configure_logging() -> None:
    root = logging.getLogger("qdich")
    if root.handlers:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(settings.log_level)


def _dispatch(args: argparse.Namespace) -> int:
    """Execute the requested command."""
    if args.command == "compile":
        result = compiler.compile_circuit(args.in_path, args.out_path, args.iqp, args.monotone)
        if args.out_path is None:
            sys.stdout.write(dumps(result["instance"]))
        else:
            sys.stdout.write(dumps(result["report"]))
    elif args.command == "marginal":
        result = simulator.marginal_probability(args.in_path, args.subset, args.outcome)
        sys.stdout.write(dumps(result))
    elif args.command == "sample":
        samples = simulator.sample_bitstrings(args.in_path, args.count, args.seed, args.out_path)
        if args.out_path is None:
            sys.stdout.write("".join(s + "\n" for s in samples))
    elif args.command == "oracle":
        result = oracle.oracle(args.in_path, args.backend, args.subset, args.outcome)
        sys.stdout.write(dumps(result))
    elif args.command == "gadget":
        sys.stdout.write(dumps(compiler.gadget(args.F, args.lambda_phase)))
    elif args.command == "verify":
        result = compiler.verify(args.in_path, args.backend, args.iqp, args.monotone)
        sys.stdout.write(dumps(result))
        if not result["match"]:
            print("✗ Error: compiled distribution differs from the source", file=sys.stderr)
            return EXIT_INTERNAL
    elif args.command == "graph-info":
        sys.stdout.write(dumps(simulator.graph_info(args.in_path)))
    else:
        raise FormatError(f"unknown command: {args.command}")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one command and return its exit code."""
    try:
        settings_from_env()
        _configure_logging()
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except QdichError as e:
        print(f"✗ Error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print(f"✗ Internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
