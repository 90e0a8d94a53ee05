#!/usr/bin/env python3
"""
Hall kernel
Command-line entry point: gen, decompose, beta, verify, family
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from config.settings import KernelConfig, load_config
from hall_kernel.command_router import get_command_router
from hall_kernel.data_models import OUTPUT_FORMATS, SUITES, CommandMessage, ResponseMessage, RunConfig
from hall_kernel.families import FAMILIES
from hall_kernel.utils.error_handling import EXIT_CODES, ErrorCategory, exit_code_for


def _add_format(parser: argparse.ArgumentParser, default: str):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--format", dest="fmt", choices=OUTPUT_FORMATS, default=default)
    for fmt in OUTPUT_FORMATS:
        group.add_argument(f"--{fmt}", dest="fmt", action="store_const", const=fmt,
                           help=f"same as --format {fmt}")


def _add_order(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--order", required=required,
                        help="length, lyndon, fibo, supergeom or sharp:<n>")
    parser.add_argument("--alphabet", type=int, help="alphabet size k (defaults to 2, or n + 1 for sharp:<n>)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hall-kernel", description="Free Lie algebra Hall-basis kernel")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log more (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate and export a Hall set")
    _add_order(gen)
    gen.add_argument("--max-len", dest="max_len", type=int, required=True)
    _add_format(gen, "json")

    dec = sub.add_parser("decompose", help="decompose [a, b] on the Hall basis")
    _add_order(dec)
    dec.add_argument("--max-len", dest="max_len", type=int, help="defaults to |a| + |b|")
    dec.add_argument("-a", required=True, help="bracket text such as [X0,X1]")
    dec.add_argument("-b", required=True)
    dec.add_argument("--stats", action="store_true", help="report call depth and memo use")
    _add_format(dec, "json")

    beta = sub.add_parser("beta", help="β_n table with closed forms")
    _add_order(beta)
    beta.add_argument("--max-n", dest="max_n", type=int, required=True)
    _add_format(beta, "csv")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--budget", type=int, help="length budget of the two-letter sweeps")
    verify.add_argument("--jobs", type=int, default=None)
    _add_format(verify, "text")

    fam = sub.add_parser("family", help="check one equality family")
    fam.add_argument("family", choices=sorted(FAMILIES))
    fam.add_argument("params", nargs="*", metavar="KEY=VALUE", help="integer family parameters, e.g. n=4")
    fam.add_argument("--order", help="order for x3, two-letter and theta-lower")
    _add_format(fam, "text")
    return parser


def parse_family_params(items: List[str]) -> Dict[str, int]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"family parameter {item!r} must look like key=value")
        params[key] = int(value)
    return params


def run_config(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if k != "verbose" and v is not None}
    if args.command == "family":
        values["params"] = parse_family_params(args.params)
    return RunConfig(**values)


def configure_logging(config: KernelConfig, verbose: int):
    level = getattr(logging, config.log_level, logging.WARNING)
    if verbose:
        level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        stream=sys.stderr,
    )


def emit(response: ResponseMessage):
    data = response.data or {}
    if "output" in data:
        text = data["output"]
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if not response.success:
        print(response.error, file=sys.stderr)
    elif "elapsed_seconds" in data:
        print(f"elapsed {data['elapsed_seconds']}s", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    load_dotenv()  # Load environment variables
    config = load_config()

    args = build_parser().parse_args(argv)
    configure_logging(config, args.verbose)

    try:
        run = run_config(args)
    except (ValidationError, ValueError) as e:
        print(f"INVALID_CONFIG: {e}", file=sys.stderr)
        return EXIT_CODES[ErrorCategory.VALIDATION]

    params = run.to_params()
    params["limits"] = config.suite_limits()
    params["r_cap"] = config.sweep.r_cap
    if getattr(args, "jobs", None) is None:
        params["jobs"] = config.sweep.jobs

    response = get_command_router().route_command(CommandMessage(run.command, params))
    emit(response)
    return exit_code_for(response)


if __name__ == "__main__":
    sys.exit(main())
