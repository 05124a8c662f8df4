"""
Symplectic Reduction Toolkit

Command-line entry point.

Example:
    python -m symplectic_reductions analyze --group gl --n 3 --m 4
    python -m symplectic_reductions verify theorems
    python -m symplectic_reductions table --group sp --n 2..4 --m 2..6 --format csv

Exit codes:
    0 success, 2 usage error, 3 verification failure, 4 resource bound exceeded
"""

import argparse
import logging
import sys
from typing import List, Optional

from .core.application import ReductionApp
from .core.verification import VerificationRunner
from .exceptions import ResourceBoundError, SymplecticReductionError
from .models.partition import GroupKind
from .templates.report_template import OutputFormat, ReportRenderer
from .utils.config_manager import Config, ConfigManager

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFICATION = 3
EXIT_RESOURCE = 4


def parse_range(text: str) -> List[int]:
    """``"A..B"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range A..B, got {text!r}")
    if low > high:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(low, high + 1))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="root seed of every randomized check (default 0)")
    common.add_argument("--weight-bound", type=int, help="largest weight entry in h0 tables")
    common.add_argument("--degree-bound", type=int, help="largest degree of the Cauchy check")
    common.add_argument("--samples", type=int, help="sampled points per component")
    common.add_argument("--workers", type=int, help="worker threads for verification suites")
    common.add_argument("--cache", help="JSON result cache (falls back to $SRT_CACHE)")
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="symplectic-reductions",
        description="Classify symplectic reductions of classical group representations",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    groups = [k.value for k in GroupKind]

    analyze = commands.add_parser("analyze", parents=[common], help="full report for one (G, n, m)")
    analyze.add_argument("--group", choices=groups, required=True)
    analyze.add_argument("--n", type=int, required=True)
    analyze.add_argument("--m", type=int, required=True)

    verify = commands.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=VerificationRunner.SUITES + ["all"])

    table = commands.add_parser("table", parents=[common], help="classification table over ranges")
    table.add_argument("--group", choices=groups, required=True)
    table.add_argument("--n", type=parse_range, required=True, help="range A..B")
    table.add_argument("--m", type=parse_range, required=True, help="range A..B")
    return parser


def load_config(args: argparse.Namespace) -> Config:
    manager = ConfigManager(args.config)
    return manager.to_config(
        seed=args.seed,
        weight_bound=args.weight_bound,
        degree_bound=args.degree_bound,
        sample_count=args.samples,
        workers=args.workers,
        cache_path=args.cache,
    )


def cmd_analyze(args: argparse.Namespace, config: Config) -> int:
    app = ReductionApp(config)
    report = app.analyze(GroupKind(args.group), args.n, args.m)
    sys.stdout.write(ReportRenderer(OutputFormat(args.format)).render_report(report))
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    app = ReductionApp(config)
    report = VerificationRunner(config, app.cache).run(args.suite)
    sys.stdout.write(ReportRenderer(OutputFormat(args.format)).render_verification(report))
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_table(args: argparse.Namespace, config: Config) -> int:
    rows = ReductionApp(config).table(GroupKind(args.group), args.n, args.m)
    sys.stdout.write(ReportRenderer(OutputFormat(args.format)).render_table(rows))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "table": cmd_table}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args)
    except SymplecticReductionError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, config.log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args, config)
    except ResourceBoundError as e:
        logger.error("Resource bound exceeded: %s", e)
        return EXIT_RESOURCE
    except SymplecticReductionError as e:
        logger.error("%s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
