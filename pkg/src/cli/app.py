"""
Argument parsing and dispatch for the ``fsyrk`` command.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from .. import __version__
from ..core.errors import FastSyrkError
from .commands import COMMANDS, EXIT_USAGE
from .config import CliConfig

logger = logging.getLogger(__name__)


def _field_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("field")
    group.add_argument("--field", choices=["fp", "fp2", "gf2k", "complex"],
                       help="Coefficient domain (default: fp)")
    group.add_argument("--prime", type=int, help="Modulus for fp and fp2 (default: 131071)")
    group.add_argument("--k", type=int, help="Extension degree for gf2k (default: 1)")
    return parent


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--output", "-o", help="Write the result here instead of stdout")
    parent.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    return parent


def _recursion_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--threshold", type=int, help="Smallest dimension that still recurses (default: 64)")
    parent.add_argument("--rec", type=int, help="Maximum recursion levels (default: unlimited)")
    parent.add_argument("--seed", type=int, help="Seed of the random inputs (default: 0)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsyrk",
        description="Fast symmetric matrix products A·Aᵀ over finite fields and the complex numbers",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    field, common, recursion = _field_options(), _common_options(), _recursion_options()

    verify = commands.add_parser("verify", parents=[field, recursion, common],
                                 help="Check fast products against classical oracles")
    verify.add_argument("--n", type=int,
                        help="Largest row count (default: 64); the first case runs at --n and --threshold, "
                             "the random cases at thresholds 8 and 2 are capped at 64 and 16 rows")
    verify.add_argument("--cols", type=int, help="Largest column count (default: n)")
    verify.add_argument("--cases", type=int, help="Random cases per battery (default: 20)")
    verify.add_argument("--alpha", type=int, help="alpha of the accumulating product (default: 1)")
    verify.add_argument("--beta", type=int, help="beta of the accumulating product (default: random)")

    count = commands.add_parser("count", parents=[field, recursion, common],
                                help="Analytic and instrumented operation counts")
    count.add_argument("--n", type=int, help="Matrix size, a power of two (default: 64)")
    count.add_argument("--table5", action="store_true",
                       help="Print the full operation-count grid as CSV (sizes up to --n when given)")
    count.add_argument("--csv", action="store_true", help="CSV instead of an aligned table")

    bench = commands.add_parser("bench", parents=[field, recursion, common],
                                help="Time the symmetric product variants")
    bench.add_argument("--n", type=int, help="Largest size of the sweep (default: 64)")
    bench.add_argument("--cols", type=int, help="Column count (default: n)")
    bench.add_argument("--sizes", type=int, nargs="+", help="Explicit sizes instead of the doubling sweep")
    bench.add_argument("--repeat", type=int, help="Runs per timing, best kept (default: 1)")
    bench.add_argument("--csv", action="store_true", help="CSV instead of an aligned table")

    syrk = commands.add_parser("syrk", parents=[field, recursion, common],
                               help="Symmetric product of a matrix file")
    syrk.add_argument("--input", "-i", required=True, help="Matrix file A")
    syrk.add_argument("--scaling", help="Block-diagonal file B; computes A·B·Aᵀ")
    syrk.add_argument("--mirror", action="store_true", help="Write the full symmetric matrix")
    syrk.add_argument("--hermitian", action="store_true", help="A·conj(A)ᵀ over fp2")

    sos = commands.add_parser("sos", parents=[field, common], help="Write a residue class as a sum of two squares")
    sos.add_argument("--value", type=int, required=True, help="The class to decompose")

    nrsyf = commands.add_parser("nrsyf", parents=[field, common],
                                help="2×2 factor of diag(alpha, beta) for two non-residues")
    nrsyf.add_argument("--alpha", type=int, required=True)
    nrsyf.add_argument("--beta", type=int, required=True)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point.

    Returns:
        0 on success, 1 when verification fails, 2 on usage or input errors
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True
    )

    try:
        config = CliConfig.from_namespace(args)
    except ValidationError as e:
        for error in e.errors():
            location = ".".join(str(part) for part in error['loc']) or "options"
            print(f"fsyrk {args.command}: {location}: {error['msg']}", file=sys.stderr)
        return EXIT_USAGE

    logger.info(f"Running {config.command} over {config.describe()}")
    try:
        return COMMANDS[config.command](config)
    except FastSyrkError as e:
        logger.error(f"{config.command} failed: {e}")
        print(f"fsyrk {config.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"fsyrk {config.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
