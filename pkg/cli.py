#!/usr/bin/env python3
"""Exact Green's functions of the flat Laplacian on the Tate curve.

Subcommands dump the level-k Green table, the C matrix, the operator matrix,
its spectrum or an enclosure of B, or run the verification suite. Output goes
to stdout (or --out); logs go to stderr.

Exit codes: 0 on success, 1 when a verification check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional, Tuple

from pydantic import ValidationError

from config.logging_setup import configure_logging
from config.settings import DEFAULT_TOLERANCE_TEXT
from green_enums import Command, GridChoice, Normalization, OutputFormat
from models.cli_config import CliConfig
from models.params import Params
from services.analytic import b_value, c_matrix, make_analytic_params
from services.export import (
    bvalue_to_csv,
    bvalue_to_dict,
    green_to_csv,
    green_to_dict,
    matrix_to_csv,
    matrix_to_dict,
    report_to_csv,
    spectrum_to_csv,
    spectrum_to_dict,
    to_json,
    write_output,
)
from services.laplacian import build_operator_matrix, spectrum
from services.oracle import normalize, solve_green
from utils.rationals import parse_rational
from verification.runner import run_acceptance, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# CLI parsing
# ---------------------------------------------------------------------------

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="Prime p.")
    common.add_argument("--f", type=int, default=1, help="Residue degree; q = p**f.")
    common.add_argument("--e", type=int, default=1, help="Ramification index (recorded, unused).")
    common.add_argument("--m", type=int, help="Torus exponent m.")
    common.add_argument("--k", type=int, default=1, help="Level of the finite quotient E_k.")
    common.add_argument(
        "--tol",
        type=str,
        default=DEFAULT_TOLERANCE_TEXT,
        help="Rational tolerance such as 1/10^12 (enclosure radii).",
    )
    common.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
    )
    common.add_argument("--out", type=str, default=None, help="Write output here instead of stdout.")
    common.add_argument("--threads", type=int, default=1, help="Worker threads (advisory).")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug.")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m cli", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    green = subparsers.add_parser(Command.GREEN.value, parents=[common], help="Exact Green table at level k.")
    green.add_argument(
        "--normalize",
        choices=[n.value for n in Normalization],
        default=Normalization.MAX_ZERO.value,
    )
    green.add_argument("--anchor", type=str, default=None, help="ROW,COL entry set to 0 when anchored.")

    subparsers.add_parser(Command.CMATRIX.value, parents=[common], help="The m x m C matrix.")
    subparsers.add_parser(Command.OPERATOR.value, parents=[common], help="Exact matrix of D at level k.")
    subparsers.add_parser(Command.SPECTRUM.value, parents=[common], help="Eigenvalues and kernel dimension of D.")

    bvalue = subparsers.add_parser(Command.BVALUE.value, parents=[common], help="Enclosure of B(x, y).")
    bvalue.add_argument("--i", type=int, required=True, help="v(x)")
    bvalue.add_argument("--j", type=int, required=True, help="v(y)")
    bvalue.add_argument("--ell", type=int, required=True, help="v(x - y)")

    verify = subparsers.add_parser(Command.VERIFY.value, parents=[common], help="Run the verification suite.")
    verify.add_argument(
        "--grid",
        choices=[g.value for g in GridChoice],
        default=GridChoice.CELL.value,
        help="'cell' verifies --p/--f/--m/--k; 'acceptance' runs the full grid.",
    )
    return parser


def parse_anchor(text: Optional[str]) -> Optional[Tuple[int, int]]:
    """'3,5' -> (3, 5)."""
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--anchor must look like ROW,COL, got {text!r}")
    return int(parts[0]), int(parts[1])


def config_from_args(args: argparse.Namespace) -> CliConfig:
    """Validate parsed flags into a CliConfig.

    Raises:
        ValueError: Including pydantic's ValidationError, on any invalid flag.
    """
    params: Optional[Params] = None
    if args.p is not None or args.m is not None:
        if args.p is None or args.m is None:
            raise ValueError("--p and --m must be given together")
        params = Params(p=args.p, f=args.f, e=args.e, m=args.m, k=args.k)
    return CliConfig(
        command=Command(args.command),
        params=params,
        tol=parse_rational(args.tol),
        output_format=OutputFormat(args.output_format),
        normalize=Normalization(getattr(args, "normalize", Normalization.MAX_ZERO.value)),
        anchor=parse_anchor(getattr(args, "anchor", None)),
        out=args.out,
        threads=args.threads,
        i=getattr(args, "i", None),
        j=getattr(args, "j", None),
        ell=getattr(args, "ell", None),
        grid=GridChoice(getattr(args, "grid", GridChoice.CELL.value)),
    )


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def dispatch(config: CliConfig) -> int:
    """Run one command and write its output; returns the exit code."""
    params = config.params
    csv = config.output_format == OutputFormat.CSV

    if config.command == Command.VERIFY:
        if config.grid == GridChoice.ACCEPTANCE:
            report = run_acceptance(config.tol, config.threads)
        else:
            assert params is not None
            report = run_verification([params], config.tol, config.threads)
        write_output(report_to_csv(report) if csv else to_json(report.to_dict()), config.out)
        for failure in report.failures():
            logger.error(f"FAILED {failure.name} at {failure.params}: {failure.witness}")
        return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED

    assert params is not None
    if config.command == Command.GREEN:
        table = solve_green(params)
        if config.normalize == Normalization.ANCHORED:
            table = normalize(table, Normalization.ANCHORED, config.anchor)
        text = green_to_csv(table) if csv else to_json(green_to_dict(table))
    elif config.command == Command.CMATRIX:
        matrix = c_matrix(params)
        text = matrix_to_csv(matrix, params) if csv else to_json(matrix_to_dict(matrix, params))
    elif config.command == Command.OPERATOR:
        matrix = build_operator_matrix(params)
        text = matrix_to_csv(matrix, params) if csv else to_json(matrix_to_dict(matrix, params))
    elif config.command == Command.SPECTRUM:
        result = spectrum(build_operator_matrix(params))
        text = spectrum_to_csv(result) if csv else to_json(spectrum_to_dict(result, params))
    else:
        assert config.i is not None and config.j is not None and config.ell is not None
        value = b_value(config.i, config.j, config.ell, make_analytic_params(params), config.tol)
        text = bvalue_to_csv(value) if csv else to_json(bvalue_to_dict(value))
    write_output(text, config.out)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
        logger.info(f"Running {config.command.value} with {config.params.label() if config.params else 'no cell'}")
        return dispatch(config)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first.get('loc', ()))
        message = first.get('msg', str(e))
        sys.stderr.write(f"error: {location + ': ' if location else ''}{message}\n")
        return EXIT_USAGE
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
