"""Application services shared by the use cases."""

from .experiment_pipeline import (
    ExperimentPipeline,
    ExperimentRunner,
    RepeatOutcome,
    combination_dir,
    combinations_for,
    load_dataset,
    partition_dataset,
)
from .report_tables import format_table, gateway_table, merged_table, sweep_table

__all__ = [
    "ExperimentPipeline",
    "ExperimentRunner",
    "RepeatOutcome",
    "combination_dir",
    "combinations_for",
    "format_table",
    "gateway_table",
    "load_dataset",
    "merged_table",
    "partition_dataset",
    "sweep_table",
]
