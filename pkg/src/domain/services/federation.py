"""
Federated training service.

This module contains the server side of the round protocol: gateway
selection, the development dataset, and the FederatedTrainer that runs
select -> broadcast -> local update -> aggregate until the rounds run out or
the development error stops improving.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import structlog

from ..entities.gateway_state import GatewayState
from ..entities.reports import RoundRecord
from ..exceptions import (
    ConfigurationError,
    InputDataError,
    SimulationError,
    TrainingError,
)
from ..value_objects.aggregation_weights import AggregationWeights
from ..value_objects.enums import AggregationAlgorithm
from ..value_objects.model_params import ModelParams
from ..value_objects.train_config import TrainConfig
from .aggregation import fedavg_aggregate, mse_on_dev, mseavg_aggregate, size_weights
from .local_training import train_local
from .seeding import Stream, gateway_stream_seed, stream_rng

logger = structlog.get_logger(__name__)


def select_gateways(n_total: int, ratio: float, rng: np.random.Generator) -> List[int]:
    """
    Uniformly random subset of gateway ids for one round.

    The subset has ``round(ratio * n_total)`` members, at least one.

    Args:
        n_total: Number of gateways
        ratio: Selection ratio in (0, 1]
        rng: Random generator of the selection

    Returns:
        Selected ids in ascending order

    Raises:
        InputDataError: If there are no gateways
        ConfigurationError: If the ratio is out of range
    """
    if n_total <= 0:
        raise InputDataError("Cannot select from zero gateways")
    if not 0.0 < ratio <= 1.0:
        raise ConfigurationError(
            "Gateway ratio must lie in (0, 1]", field="gateway_ratio", value=ratio
        )
    count = max(1, int(math.floor(ratio * n_total + 0.5)))
    chosen = rng.choice(n_total, size=count, replace=False)
    return sorted(int(gateway_id) for gateway_id in chosen)


def assemble_dev_dataset(
    gateways: Sequence[GatewayState], rng: np.random.Generator
) -> np.ndarray:
    """
    Build the server's development dataset.

    Every gateway contributes the same number of rows, the size of the
    smallest development pool, sampled without replacement.

    Raises:
        InputDataError: If there are no gateways or a pool is empty
    """
    if not gateways:
        raise InputDataError("No gateways contribute development data")
    pool_sizes = [gateway.dev_contribution.shape[0] for gateway in gateways]
    if min(pool_sizes) == 0:
        raise InputDataError(
            "Every gateway needs a non-empty development pool",
            details={"pool_sizes": pool_sizes},
        )
    per_gateway = min(pool_sizes)
    parts = [
        gateway.dev_contribution[
            rng.choice(gateway.dev_contribution.shape[0], per_gateway, replace=False)
        ]
        for gateway in gateways
    ]
    return np.vstack(parts)


@dataclass(frozen=True)
class FederationConfig:
    """Server-side settings of one federated run."""

    algorithm: AggregationAlgorithm
    train: TrainConfig
    global_rounds: int = 20
    gateway_ratio: float = 0.5
    patience: int = 3
    min_delta: float = 1e-6

    def __post_init__(self) -> None:
        """Validate the settings after initialization."""
        object.__setattr__(self, "algorithm", AggregationAlgorithm(self.algorithm))
        if self.global_rounds < 0:
            raise ConfigurationError(
                "Global rounds cannot be negative",
                field="global_rounds",
                value=self.global_rounds,
            )
        if not 0.0 < self.gateway_ratio <= 1.0:
            raise ConfigurationError(
                "Gateway ratio must lie in (0, 1]",
                field="gateway_ratio",
                value=self.gateway_ratio,
            )
        if self.patience < 1:
            raise ConfigurationError(
                "Patience must be at least 1", field="patience", value=self.patience
            )

    @property
    def local_config(self) -> TrainConfig:
        """Local training settings; the proximal term is FedProx-only."""
        if self.algorithm is AggregationAlgorithm.FEDPROX:
            return self.train
        return self.train.with_overrides(prox_mu=0.0)


@dataclass
class TrainingOutcome:
    """Result of a federated run."""

    global_params: ModelParams
    best_dev_mse: float
    history: List[RoundRecord] = field(default_factory=list)
    stopped_early: bool = False


class FederatedTrainer:
    """
    Runs the global rounds of one federated experiment.

    Local training of the selected gateways runs serially or on a thread pool;
    the per-gateway random streams depend only on (seed, gateway id, round),
    so both modes give identical results.
    """

    def __init__(self, config: FederationConfig, max_workers: int = 1):
        """
        Initialize the trainer.

        Args:
            config: Server-side settings
            max_workers: Threads used for local training
        """
        self.config = config
        self.max_workers = max(1, int(max_workers))

    def run_training(
        self,
        gateways: Sequence[GatewayState],
        initial_params: ModelParams,
        dev: np.ndarray,
        seed: int,
    ) -> TrainingOutcome:
        """
        Execute the global rounds.

        The global model with the lowest development error (the initial one
        included) is kept and finally broadcast to every gateway.

        Args:
            gateways: All gateways, indexed by id
            initial_params: Initial global model
            dev: Normalized development dataset
            seed: Run seed of every random stream

        Returns:
            TrainingOutcome with the best global model and the round history

        Raises:
            TrainingError: If a round fails
        """
        config = self.config
        current = initial_params
        best = initial_params
        best_mse = mse_on_dev(initial_params, dev)
        history: List[RoundRecord] = []
        stale_rounds = 0
        stopped_early = False

        logger.info(
            "Federated training started",
            algorithm=config.algorithm.value,
            gateways=len(gateways),
            global_rounds=config.global_rounds,
            initial_dev_mse=best_mse,
        )

        for round_index in range(1, config.global_rounds + 1):
            started = time.perf_counter()
            try:
                selected = select_gateways(
                    len(gateways),
                    config.gateway_ratio,
                    stream_rng(seed, Stream.SELECTION, round_index),
                )
                participants = [gateways[i] for i in selected]
                current, weights = self._run_round(
                    participants, current, dev, seed, round_index
                )
                dev_mse = mse_on_dev(current, dev)
            except SimulationError as exc:
                logger.error(
                    "Global round failed",
                    round_index=round_index,
                    error_code=exc.error_code,
                    error=exc.message,
                )
                raise TrainingError(
                    f"Global round {round_index} failed: {exc.message}",
                    round_index=round_index,
                    details=exc.details,
                ) from exc

            record = RoundRecord(
                round_index=round_index,
                selected_gateway_ids=[gateway.id for gateway in participants],
                dev_mse_of_global=dev_mse,
                wall_time=time.perf_counter() - started,
                aggregation_weights=weights.normalized,
            )
            history.append(record)
            logger.info(
                "Global round completed",
                round_index=round_index,
                selected=record.selected_gateway_ids,
                dev_mse=dev_mse,
                weights=weights.as_dict(),
            )

            if dev_mse < best_mse - config.min_delta:
                best, best_mse = current, dev_mse
                stale_rounds = 0
            else:
                stale_rounds += 1
                if stale_rounds >= config.patience:
                    stopped_early = True
                    logger.info(
                        "Global early stop",
                        round_index=round_index,
                        best_dev_mse=best_mse,
                    )
                    break

        for gateway in gateways:
            gateway.receive_params(best)

        return TrainingOutcome(
            global_params=best,
            best_dev_mse=best_mse,
            history=history,
            stopped_early=stopped_early,
        )

    def _run_round(
        self,
        participants: List[GatewayState],
        global_params: ModelParams,
        dev: np.ndarray,
        seed: int,
        round_index: int,
    ) -> Tuple[ModelParams, AggregationWeights]:
        for gateway in participants:
            gateway.receive_params(global_params)

        local_config = self.config.local_config

        def update(gateway: GatewayState) -> ModelParams:
            return train_local(
                gateway.train,
                gateway.val,
                global_params,
                local_config,
                gateway_stream_seed(seed, gateway.id, round_index),
                anchor=global_params,
            )

        if self.max_workers > 1 and len(participants) > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                local_models = list(pool.map(update, participants))
        else:
            local_models = [update(gateway) for gateway in participants]

        for gateway, params in zip(participants, local_models):
            gateway.complete_round(params)

        if self.config.algorithm is AggregationAlgorithm.MSEAVG:
            return mseavg_aggregate(local_models, dev)
        sizes = [gateway.sample_count for gateway in participants]
        return fedavg_aggregate(local_models, sizes), size_weights(sizes)


def run_training(
    gateways: Sequence[GatewayState],
    initial_params: ModelParams,
    dev: np.ndarray,
    config: FederationConfig,
    seed: int,
    max_workers: int = 1,
) -> TrainingOutcome:
    """Run a federated experiment with a fresh FederatedTrainer."""
    trainer = FederatedTrainer(config, max_workers=max_workers)
    return trainer.run_training(gateways, initial_params, dev, seed)
