"""CLI controllers."""

from .experiment_controller import ExperimentController, parse_value_list

__all__ = ["ExperimentController", "parse_value_list"]
