"""
Experiment Controller.

This module contains the command handlers of the command-line interface.
Each handler turns parsed arguments into a use case request, executes it and
prints the human-readable result to stdout.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from ...application import (
    BuildReportRequest,
    BuildReportUseCase,
    PartitionDatasetRequest,
    PartitionDatasetUseCase,
    RunSweepRequest,
    RunSweepUseCase,
    ScoreSamplesRequest,
    ScoreSamplesUseCase,
    TrainFederationRequest,
    TrainFederationUseCase,
)
from ...application.config import ExperimentConfig, apply_overrides
from ...domain.exceptions import ConfigurationError
from ...infrastructure import (
    AppSettings,
    get_artifact_repository,
    get_dataset_repository,
    load_config,
)
from ..error_handlers import EXIT_RUNTIME, EXIT_SUCCESS

_ratios_adapter = TypeAdapter(List[float])
_scales_adapter = TypeAdapter(List[int])


class SweepArgumentsModel(BaseModel):
    """Sweep values given on the command line."""

    ratios: Optional[List[float]] = Field(None, description="Gateway ratios")
    scales: Optional[List[int]] = Field(None, description="Gateway counts")


def parse_value_list(raw: Optional[str], adapter: TypeAdapter) -> Optional[list]:
    """
    Parse a comma-separated list such as ``0.5,1.0``.

    Raises:
        ConfigurationError: If an entry is not a valid value
    """
    if raw is None:
        return None
    values = [part.strip() for part in raw.split(",") if part.strip()]
    try:
        return adapter.validate_python(values)
    except ValidationError as exc:
        raise ConfigurationError(
            f"Invalid sweep value list: {raw}", field="sweep", value=raw
        ) from exc


class ExperimentController:
    """Dispatches parsed CLI arguments to the use cases."""

    def __init__(self, settings: AppSettings, stdout: Optional[TextIO] = None):
        """
        Initialize the controller.

        Args:
            settings: Process-level settings
            stdout: Stream receiving tables and summaries, the current
                ``sys.stdout`` when omitted
        """
        self.settings = settings
        self.stdout = stdout if stdout is not None else sys.stdout

    def effective_config(self, args: argparse.Namespace) -> ExperimentConfig:
        """Config file plus ``--seed``, ``--out`` and ``--override`` values."""
        config = load_config(args.config)
        return apply_overrides(
            config,
            overrides=args.override or (),
            seed=args.seed,
            output_dir=args.out,
        )

    def partition(self, args: argparse.Namespace) -> int:
        """Handle the ``partition`` command."""
        config = self.effective_config(args)
        use_case = PartitionDatasetUseCase(
            dataset_repository=get_dataset_repository(),
            artifact_repository=get_artifact_repository(config.output_dir),
        )
        response = use_case.execute(PartitionDatasetRequest(config=config))
        print(
            f"Partition written to {response.assignment_path}\n"
            f"realized_js={response.realized_js:.4f} "
            f"js_measure={response.js_measure} "
            f"gateway_sizes={response.gateway_sizes}",
            file=self.stdout,
        )
        return EXIT_SUCCESS

    def train(self, args: argparse.Namespace) -> int:
        """Handle the ``train`` command."""
        config = self.effective_config(args)
        use_case = TrainFederationUseCase(
            dataset_repository=get_dataset_repository(),
            artifact_repository=get_artifact_repository(config.output_dir),
            max_workers=self.settings.max_workers,
        )
        response = use_case.execute(
            TrainFederationRequest(
                config=config,
                all_combinations=args.all_combinations,
                partition_path=args.partition,
            )
        )
        self.stdout.write(response.table)
        return EXIT_SUCCESS

    def sweep(self, args: argparse.Namespace) -> int:
        """Handle the ``sweep`` command; a failed point gives a runtime exit."""
        sweep = SweepArgumentsModel(
            ratios=parse_value_list(args.ratios, _ratios_adapter),
            scales=parse_value_list(args.scales, _scales_adapter),
        )
        config = self.effective_config(args)
        use_case = RunSweepUseCase(
            dataset_repository=get_dataset_repository(),
            artifact_repository=get_artifact_repository(config.output_dir),
            max_workers=self.settings.max_workers,
        )
        response = use_case.execute(
            RunSweepRequest(
                config=config,
                ratios=sweep.ratios,
                scales=sweep.scales,
                all_combinations=args.all_combinations,
            )
        )
        self.stdout.write(response.table)
        return EXIT_RUNTIME if response.failed_points else EXIT_SUCCESS

    def score(self, args: argparse.Namespace) -> int:
        """Handle the ``score`` command."""
        output_dir = Path(args.out) if args.out else Path(".")
        use_case = ScoreSamplesUseCase(
            dataset_repository=get_dataset_repository(),
            artifact_repository=get_artifact_repository(output_dir),
        )
        response = use_case.execute(
            ScoreSamplesRequest(model_path=args.model, input_path=args.input)
        )
        flagged = "" if response.n_flagged is None else f" flagged={response.n_flagged}"
        print(
            f"Scored {response.n_rows} rows into {response.output_path}{flagged}",
            file=self.stdout,
        )
        return EXIT_SUCCESS

    def report(self, args: argparse.Namespace) -> int:
        """Handle the ``report`` command."""
        if not args.runs:
            raise ConfigurationError("report needs at least one --runs location")
        locations = [Path(location) for location in args.runs]
        output_dir = Path(args.out) if args.out else _default_report_dir(locations)
        use_case = BuildReportUseCase(
            artifact_repository=get_artifact_repository(output_dir)
        )
        response = use_case.execute(BuildReportRequest(run_locations=locations))
        self.stdout.write(response.table)
        return EXIT_SUCCESS


def _default_report_dir(locations: List[Path]) -> Path:
    first = locations[0]
    return first if first.is_dir() else first.parent
