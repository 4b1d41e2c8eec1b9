"""
Unit tests for the experiment configuration schema and overrides.
"""

from src.application.config import validate_config

from tests.unit import (
    AggregationAlgorithm,
    ConfigurationError,
    DetectorKind,
    ExperimentConfig,
    JSMeasure,
    NormalizationScope,
    apply_overrides,
    config_hash,
    pytest,
    tiny_config_payload,
)


@pytest.fixture
def config():
    """Validated tiny configuration."""
    return validate_config(tiny_config_payload())


class TestDefaults:
    """Test cases for the default experiment."""

    def test_defaults(self):
        """Test the documented defaults."""
        config = ExperimentConfig()

        assert config.n_gateways == 10
        assert config.gateway_ratio == 0.5
        assert config.dirichlet_alpha == 0.1995
        assert config.js_measure is JSMeasure.DISTANCE
        assert config.model is DetectorKind.SAECEN
        assert config.algorithm is AggregationAlgorithm.MSEAVG
        assert config.train.batch_size == 12
        assert config.train.shrink_lambda == 10.0
        assert config.global_rounds == 20
        assert config.column_label == "SAE-CEN/MSEAvg"

    def test_autoencoder_trains_without_shrink(self, config):
        """Test the AE family drops the shrink factor."""
        ae = config.with_updates(model=DetectorKind.AE)

        assert config.train_config().shrink_lambda == 10.0
        assert ae.train_config().shrink_lambda == 0.0

    def test_federation_settings(self, config):
        """Test the server settings mirror the config."""
        federation = config.federation_config()

        assert federation.global_rounds == 2
        assert federation.gateway_ratio == 1.0
        assert federation.train.learning_rate == 0.001


class TestValidation:
    """Test cases for validate_config."""

    def test_unknown_field(self):
        """Test unknown keys are rejected."""
        with pytest.raises(ConfigurationError) as excinfo:
            validate_config(tiny_config_payload(bogus=1))
        assert excinfo.value.field == "bogus"

    @pytest.mark.parametrize(
        "field,value",
        [
            ("n_gateways", 1),
            ("gateway_ratio", 0.0),
            ("dirichlet_alpha", -1.0),
            ("min_gateway_rows", 5),
            ("repeats", 0),
        ],
    )
    def test_out_of_range(self, field, value):
        """Test invalid values name the offending field."""
        with pytest.raises(ConfigurationError) as excinfo:
            validate_config(tiny_config_payload(**{field: value}))
        assert excinfo.value.field == field

    def test_csv_needs_manifest(self):
        """Test a CSV source without a manifest is rejected."""
        with pytest.raises(ConfigurationError):
            validate_config(tiny_config_payload(dataset={"source": "csv"}))

    def test_new_devices_need_held_out_types(self):
        """Test new-device rows need held-out device types."""
        with pytest.raises(ConfigurationError):
            validate_config(tiny_config_payload(dataset={"new_device_ratio": 0.5}))


class TestOverrides:
    """Test cases for apply_overrides."""

    def test_nested_and_top_level(self, config):
        """Test dotted keys reach nested sections."""
        updated = apply_overrides(
            config, ["train.learning_rate=0.01", "n_gateways=5"]
        )

        assert updated.train.learning_rate == 0.01
        assert updated.n_gateways == 5
        assert config.n_gateways == 3

    def test_plain_string_value(self, config):
        """Test values that are not JSON are taken as strings."""
        assert apply_overrides(config, ["model=ae"]).model is DetectorKind.AE

    def test_seed_and_output_dir(self, config):
        """Test the explicit replacements win."""
        updated = apply_overrides(config, [], seed=11, output_dir="elsewhere")

        assert updated.master_seed == 11
        assert updated.output_dir == "elsewhere"

    @pytest.mark.parametrize(
        "override", ["no_equals_sign", "=3", "unknown_key=1", "dataset.nope=1"]
    )
    def test_malformed_or_unknown(self, config, override):
        """Test bad overrides are configuration errors."""
        with pytest.raises(ConfigurationError):
            apply_overrides(config, [override])

    def test_invalid_value(self, config):
        """Test overrides are validated."""
        with pytest.raises(ConfigurationError):
            apply_overrides(config, ["gateway_ratio=2"])


class TestConfigHash:
    """Test cases for config_hash."""

    def test_stable(self, config):
        """Test equal configs hash equally."""
        again = validate_config(tiny_config_payload())
        assert config_hash(config) == config_hash(again)

    def test_output_dir_excluded(self, config):
        """Test the output directory does not change the hash."""
        moved = apply_overrides(config, output_dir="somewhere/else")
        assert config_hash(moved) == config_hash(config)

    def test_semantic_change(self, config):
        """Test a changed seed changes the hash."""
        reseeded = apply_overrides(config, seed=8)
        assert config_hash(reseeded) != config_hash(config)

    def test_json_round_trip(self, config):
        """Test the dumped config validates back to the same hash."""
        restored = validate_config(config.model_dump(mode="json"))
        assert config_hash(restored) == config_hash(config)


class TestNormalizationScope:
    """Test cases for the dataset normalization setting."""

    def test_network_by_default(self, config):
        """Test one normalizer is shared across the network by default."""
        assert config.dataset.normalization is NormalizationScope.NETWORK

    def test_gateway_override(self, config):
        """Test per-gateway normalization can be selected."""
        updated = apply_overrides(config, ["dataset.normalization=gateway"])

        assert updated.dataset.normalization is NormalizationScope.GATEWAY

    def test_unknown_scope(self, config):
        """Test unknown scopes are rejected."""
        with pytest.raises(ConfigurationError):
            apply_overrides(config, ["dataset.normalization=device"])
