"""
Unit tests for gateway selection, the development set and the round loop.
"""

from src.domain.services.federation import (
    FederatedTrainer,
    FederationConfig,
    assemble_dev_dataset,
    run_training,
    select_gateways,
)

from tests.unit import (
    AggregationAlgorithm,
    ConfigurationError,
    InputDataError,
    NumericalError,
    TrainConfig,
    TrainingError,
    make_gateway,
    np,
    pytest,
    random_model,
)

FAST_TRAIN = TrainConfig(learning_rate=1e-3, batch_size=8, local_epochs=2)


def gateways(count=6, seed=0):
    return [make_gateway(gateway_id, seed=seed) for gateway_id in range(count)]


def federation(algorithm=AggregationAlgorithm.MSEAVG, **overrides):
    settings = dict(algorithm=algorithm, train=FAST_TRAIN, global_rounds=3)
    settings.update(overrides)
    return FederationConfig(**settings)


def dev_set(seed=1):
    return np.random.default_rng(seed).standard_normal((30, 4))


class TestSelectGateways:
    """Test cases for select_gateways."""

    def test_full_ratio_selects_all(self):
        """Test ratio 1.0 returns every id."""
        assert select_gateways(7, 1.0, np.random.default_rng(0)) == list(range(7))

    def test_half_of_ten(self):
        """Test ten gateways at ratio 0.5 select five distinct ids."""
        selected = select_gateways(10, 0.5, np.random.default_rng(1))

        assert len(selected) == 5
        assert len(set(selected)) == 5
        assert all(0 <= gateway_id < 10 for gateway_id in selected)
        assert selected == sorted(selected)

    def test_at_least_one(self):
        """Test a tiny ratio still selects one gateway."""
        assert len(select_gateways(10, 0.01, np.random.default_rng(2))) == 1

    def test_seeded(self):
        """Test one seed gives one subset."""
        first = select_gateways(20, 0.3, np.random.default_rng(3))
        second = select_gateways(20, 0.3, np.random.default_rng(3))
        assert first == second

    @pytest.mark.parametrize("ratio", [0.0, 1.5])
    def test_invalid_ratio(self, ratio):
        """Test ratios outside (0, 1] are rejected."""
        with pytest.raises(ConfigurationError):
            select_gateways(10, ratio, np.random.default_rng(0))


class TestAssembleDevDataset:
    """Test cases for assemble_dev_dataset."""

    def test_equal_pools(self):
        """Test pools of five rows give five rows per gateway."""
        pool = [make_gateway(i, n_dev=5) for i in range(4)]
        assert assemble_dev_dataset(pool, np.random.default_rng(0)).shape == (20, 4)

    def test_smallest_pool_sets_share(self):
        """Test pools {3, 5, 7} contribute three rows each."""
        pool = [make_gateway(i, n_dev=n) for i, n in enumerate((3, 5, 7))]

        dev = assemble_dev_dataset(pool, np.random.default_rng(0))

        assert dev.shape == (9, 4)
        for index, gateway in enumerate(pool):
            block = dev[3 * index : 3 * index + 3]
            rows = {tuple(row) for row in gateway.dev_contribution}
            assert all(tuple(row) in rows for row in block)

    def test_seeded(self):
        """Test one seed gives one development set."""
        pool = [make_gateway(i, n_dev=n) for i, n in enumerate((3, 5, 7))]
        first = assemble_dev_dataset(pool, np.random.default_rng(4))
        second = assemble_dev_dataset(pool, np.random.default_rng(4))
        assert np.array_equal(first, second)

    def test_no_gateways(self):
        """Test an empty gateway list is rejected."""
        with pytest.raises(InputDataError):
            assemble_dev_dataset([], np.random.default_rng(0))


class TestFederationConfig:
    """Test cases for FederationConfig."""

    def test_prox_only_for_fedprox(self):
        """Test the proximal factor reaches local training only under FedProx."""
        train = FAST_TRAIN.with_overrides(prox_mu=0.001)

        fedavg = FederationConfig(AggregationAlgorithm.FEDAVG, train)
        fedprox = FederationConfig(AggregationAlgorithm.FEDPROX, train)

        assert fedavg.local_config.prox_mu == 0.0
        assert fedprox.local_config.prox_mu == 0.001

    def test_negative_rounds(self):
        """Test negative round counts are rejected."""
        with pytest.raises(ConfigurationError):
            federation(global_rounds=-1)


class TestFederatedTrainer:
    """Test cases for the round loop."""

    def test_zero_rounds_return_initial_model(self):
        """Test E = 0 keeps the initial model and records nothing."""
        initial = random_model(0)

        outcome = run_training(
            gateways(), initial, dev_set(), federation(global_rounds=0), seed=1
        )

        assert outcome.global_params is initial
        assert outcome.history == []

    def test_round_records(self):
        """Test each round selects half of ten gateways."""
        # Arrange
        config = federation(gateway_ratio=0.5, global_rounds=4, patience=10)

        # Act
        outcome = run_training(gateways(10), random_model(0), dev_set(), config, 2)

        # Assert
        assert 1 <= len(outcome.history) <= 4
        for index, record in enumerate(outcome.history, start=1):
            assert record.round_index == index
            assert len(record.selected_gateway_ids) == 5
            assert sum(record.aggregation_weights) == pytest.approx(1.0)
            assert record.dev_mse_of_global > 0

    @pytest.mark.parametrize("algorithm", list(AggregationAlgorithm))
    def test_deterministic_serial_and_threaded(self, algorithm):
        """Test thread-pool training reproduces serial training."""
        # Arrange
        config = federation(algorithm, gateway_ratio=0.5)
        initial = random_model(0)

        # Act
        serial = FederatedTrainer(config, max_workers=1).run_training(
            gateways(), initial, dev_set(), seed=5
        )
        threaded = FederatedTrainer(config, max_workers=4).run_training(
            gateways(), initial, dev_set(), seed=5
        )

        # Assert
        assert serial.global_params.equals(threaded.global_params)
        assert serial.best_dev_mse == threaded.best_dev_mse
        assert [r.selected_gateway_ids for r in serial.history] == [
            r.selected_gateway_ids for r in threaded.history
        ]
        assert [r.aggregation_weights for r in serial.history] == [
            r.aggregation_weights for r in threaded.history
        ]

    def test_participation_matches_selection(self):
        """Test only selected gateways train in a round."""
        pool = gateways(8)
        config = federation(gateway_ratio=0.25, global_rounds=5, patience=10)

        outcome = run_training(pool, random_model(0), dev_set(), config, seed=3)

        for gateway in pool:
            selected = sum(
                gateway.id in record.selected_gateway_ids
                for record in outcome.history
            )
            assert gateway.rounds_participated == selected

    def test_best_model_broadcast(self):
        """Test every gateway ends with the best global model."""
        pool = gateways()

        config = federation()

        outcome = run_training(pool, random_model(0), dev_set(), config, 4)

        assert all(g.local_params is outcome.global_params for g in pool)
        mses = [record.dev_mse_of_global for record in outcome.history]
        assert outcome.best_dev_mse <= min(mses) + config.min_delta

    def test_early_stop_on_stagnation(self):
        """Test rounds stop once the development error stalls."""
        frozen = TrainConfig(local_epochs=0)
        config = federation(train=frozen, global_rounds=10, patience=2)

        outcome = run_training(gateways(), random_model(0), dev_set(), config, 6)

        assert outcome.stopped_early
        assert len(outcome.history) == 2

    def test_failure_wrapped_with_round(self, mocker):
        """Test a failing local update surfaces as a training error."""
        mocker.patch(
            "src.domain.services.federation.train_local",
            side_effect=NumericalError("diverged"),
        )

        with pytest.raises(TrainingError) as excinfo:
            run_training(gateways(), random_model(0), dev_set(), federation(), 7)

        assert excinfo.value.round_index == 1
