"""
Unit tests for gateway preparation in the experiment pipeline.
"""

from src.application.config import validate_config
from src.application.services.experiment_pipeline import (
    ExperimentPipeline,
    load_dataset,
    partition_dataset,
)
from src.domain.repositories import DatasetRepository
from src.domain.services.preprocessing import split_local, zscore_fit
from src.domain.services.seeding import Stream, run_seed, stream_rng

from tests.unit import Mock, NormalizationScope, np, pytest, tiny_config_payload


def prepared(scope: NormalizationScope):
    payload = tiny_config_payload()
    payload["dataset"]["normalization"] = scope.value
    config = validate_config(payload)
    dataset = load_dataset(config, Mock(spec=DatasetRepository))
    plan = partition_dataset(config, dataset)
    seed = run_seed(config.master_seed, 0)
    gateways = ExperimentPipeline(config).prepare_gateways(dataset, plan, seed)
    return dataset, plan, seed, gateways


class TestPrepareGateways:
    """Test cases for ExperimentPipeline.prepare_gateways."""

    def test_network_scope_shares_statistics(self):
        """Test every gateway uses one fit on the pooled raw training rows."""
        dataset, plan, seed, gateways = prepared(NormalizationScope.NETWORK)
        pooled = np.concatenate(
            [
                split_local(plan.rows_of(g), stream_rng(seed, Stream.SPLIT, g)).train
                for g in range(plan.n_gateways)
            ]
        )
        expected = zscore_fit(dataset.features[pooled])

        for gateway in gateways:
            assert gateway.normalizer is gateways[0].normalizer
            np.testing.assert_allclose(gateway.normalizer.mean, expected.mean)
            np.testing.assert_allclose(gateway.normalizer.std, expected.std)

    def test_gateway_scope_fits_each_gateway(self):
        """Test each gateway standardizes its own training split."""
        _, _, _, gateways = prepared(NormalizationScope.GATEWAY)

        for gateway in gateways:
            np.testing.assert_allclose(gateway.train.mean(axis=0), 0.0, atol=1e-9)
        assert not np.allclose(
            gateways[0].normalizer.mean, gateways[1].normalizer.mean
        )

    @pytest.mark.parametrize("scope", list(NormalizationScope))
    def test_test_sets_match_feature_width(self, scope):
        """Test splits and test sets keep their sizes under either scope."""
        _, plan, _, gateways = prepared(scope)

        assert len(gateways) == plan.n_gateways
        for gateway in gateways:
            assert gateway.test_set is not None
            assert gateway.test_set.features.shape[1] == gateway.train.shape[1]
