"""
Main application.

This module builds the command-line parser and runs one command with
structured logging, command logging middleware and exit-code mapping.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, NoReturn, Optional, Sequence

import structlog

from ..domain.exceptions import ConfigurationError
from ..infrastructure import configure_logging, get_app_settings
from .controllers import ExperimentController
from .error_handlers import handle_exception
from .middleware import CommandLoggingMiddleware

logger = structlog.get_logger()

PROG = "fedids"


class CommandLineParser(argparse.ArgumentParser):
    """Argument parser whose usage errors are configuration errors."""

    def error(self, message: str) -> NoReturn:
        """Raise instead of exiting so usage errors share the exit-code map."""
        raise ConfigurationError(f"{self.prog}: {message}", field="arguments")


def _add_experiment_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="Experiment config JSON file")
    parser.add_argument("--seed", type=int, help="Master seed override")
    parser.add_argument("--out", help="Output directory override")
    parser.add_argument(
        "--override",
        action="append",
        metavar="KEY=VALUE",
        help="Config override with a dotted key, repeatable",
    )


def build_parser() -> argparse.ArgumentParser:
    """
    Build the command-line parser.

    Returns:
        Parser with one sub-command per pipeline step
    """
    parser = CommandLineParser(
        prog=PROG,
        description="Semi-supervised federated intrusion detection simulator",
    )
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=CommandLineParser
    )

    partition = commands.add_parser(
        "partition", help="Partition the dataset across gateways"
    )
    _add_experiment_arguments(partition)

    train = commands.add_parser("train", help="Run the seeded federated repeats")
    _add_experiment_arguments(train)
    train.add_argument(
        "--all-combinations",
        action="store_true",
        help="Run every model/algorithm pair into one table",
    )
    train.add_argument(
        "--partition",
        type=Path,
        help="Reuse a persisted partition instead of drawing one",
    )

    sweep = commands.add_parser(
        "sweep", help="Repeat training over gateway ratios or network scales"
    )
    _add_experiment_arguments(sweep)
    sweep.add_argument(
        "--all-combinations",
        action="store_true",
        help="Run every model/algorithm pair at each sweep point",
    )
    values = sweep.add_mutually_exclusive_group(required=True)
    values.add_argument("--ratios", help="Comma-separated gateway ratios")
    values.add_argument("--scales", help="Comma-separated gateway counts")

    score = commands.add_parser("score", help="Score a feature CSV with a detector")
    score.add_argument("--model", type=Path, required=True, help="Model file")
    score.add_argument("--input", type=Path, required=True, help="Feature CSV")
    score.add_argument("--out", help="Directory receiving scores.csv")

    report = commands.add_parser("report", help="Merge run reports into a table")
    report.add_argument(
        "--runs", nargs="+", required=True, help="Run directories or report files"
    )
    report.add_argument("--out", help="Directory receiving report_table.txt")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name, ``sys.argv[1:]`` when None

    Returns:
        Process exit code: 0 success, 1 invalid input, 2 runtime failure
    """
    try:
        settings = get_app_settings()
    except Exception as exc:
        configure_logging()
        return handle_exception(exc)
    configure_logging(settings.log_level, settings.log_format)

    try:
        args = build_parser().parse_args(argv)
    except ConfigurationError as exc:
        return handle_exception(exc)

    controller = ExperimentController(settings)
    handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
        "partition": controller.partition,
        "train": controller.train,
        "sweep": controller.sweep,
        "score": controller.score,
        "report": controller.report,
    }
    middleware = CommandLoggingMiddleware(settings.slow_command_threshold_s)
    try:
        return middleware(args.command, lambda: handlers[args.command](args))
    except Exception as exc:
        return handle_exception(exc)


if __name__ == "__main__":
    sys.exit(main())
