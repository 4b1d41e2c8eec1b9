"""
Unit tests for partitioning, preprocessing, synthetic data and test sets.
"""

import math

from src.domain.services.metrics import roc_auc
from src.domain.services.partitioning import (
    dirichlet_partition,
    gateway_type_counts,
    jensen_shannon_divergence,
    jensen_shannon_noniidness,
)
from src.domain.services.preprocessing import (
    largest_remainder,
    split_local,
    zscore_apply,
    zscore_fit,
    zscore_invert,
)
from src.domain.services.synthetic import synth_generate
from src.domain.services.test_sets import build_test_sets, sample_rows
from src.domain.value_objects.partition_plan import UNASSIGNED

from tests.unit import (
    ConfigurationError,
    InputDataError,
    JSMeasure,
    Label,
    LabeledDataset,
    np,
    pytest,
)

HALF_SPLIT_JS = 1.5 - 0.75 * math.log2(3)


def rng(seed=0):
    return np.random.default_rng(seed)


class TestLargestRemainder:
    """Test cases for largest_remainder."""

    @pytest.mark.parametrize(
        "total, expected", [(100, [40, 10, 40, 10]), (10, [4, 1, 4, 1])]
    )
    def test_local_split_fractions(self, total, expected):
        """Test the 40/10/40/10 fractions are exact."""
        assert largest_remainder([4, 1, 4, 1], total).tolist() == expected

    def test_conserves_total(self):
        """Test the counts always sum to the total."""
        weights = rng(1).dirichlet(np.ones(7))
        for total in (0, 1, 13, 999):
            assert largest_remainder(weights, total).sum() == total

    def test_leftover_goes_to_largest_remainder(self):
        """Test the leftover item lands on the biggest fraction."""
        assert largest_remainder([0.5, 0.3, 0.2], 4).tolist() == [2, 1, 1]

    def test_zero_weights(self):
        """Test all-zero weights are rejected."""
        with pytest.raises(ConfigurationError):
            largest_remainder([0.0, 0.0], 5)


class TestZScore:
    """Test cases for z-score normalization."""

    def test_hand_arithmetic(self):
        """Test train {1, 3} gives mean 2, std 1 and apply(3) = 1."""
        stats = zscore_fit(np.array([[1.0], [3.0]]))

        assert stats.mean.tolist() == [2.0]
        assert stats.std.tolist() == [1.0]
        assert zscore_apply(np.array([3.0]), stats).tolist() == [1.0]

    def test_constant_feature_is_clamped(self):
        """Test a constant column maps in-distribution values to zero."""
        train = np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]])
        stats = zscore_fit(train)

        assert stats.clamped.tolist() == [True, False]
        assert zscore_apply(np.array([5.0, 2.0]), stats).tolist() == [0.0, 0.0]

    def test_training_set_is_standardized(self):
        """Test fitted stats give zero mean and unit spread on the training set."""
        train = rng(2).normal(3.0, 2.5, size=(500, 4))

        z = zscore_apply(train, zscore_fit(train))

        assert np.all(np.abs(z.mean(axis=0)) < 1e-9)
        assert np.all(np.abs(z.std(axis=0) - 1.0) < 1e-9)

    def test_invertible(self):
        """Test z * std + mean recovers the input."""
        train = rng(3).normal(-1.0, 4.0, size=(50, 3))
        stats = zscore_fit(train)

        restored = zscore_invert(zscore_apply(train, stats), stats)

        np.testing.assert_allclose(restored, train, rtol=0, atol=1e-12)

    def test_needs_two_rows(self):
        """Test a single row cannot be fitted."""
        with pytest.raises(InputDataError):
            zscore_fit(np.ones((1, 3)))

    def test_feature_mismatch(self):
        """Test applying stats to the wrong width raises."""
        stats = zscore_fit(np.ones((3, 2)))
        with pytest.raises(InputDataError):
            zscore_apply(np.ones(3), stats)


class TestSplitLocal:
    """Test cases for split_local."""

    @pytest.mark.parametrize(
        "rows, sizes", [(100, (40, 10, 40, 10)), (10, (4, 1, 4, 1))]
    )
    def test_sizes(self, rows, sizes):
        """Test the split sizes are exact."""
        assert split_local(np.arange(rows), rng()).sizes() == sizes

    def test_disjoint_union(self):
        """Test the parts partition the input."""
        rows = np.arange(100, 237)
        split = split_local(rows, rng(4))

        parts = [split.train, split.val, split.dev_pool, split.test_add]
        joined = np.concatenate(parts)

        assert sorted(joined.tolist()) == rows.tolist()
        assert len(set(joined.tolist())) == rows.size

    def test_deterministic(self):
        """Test the same seed gives the same split."""
        first = split_local(np.arange(50), rng(5))
        second = split_local(np.arange(50), rng(5))
        assert np.array_equal(first.train, second.train)

    def test_too_few_rows(self):
        """Test fewer than ten rows are rejected."""
        with pytest.raises(InputDataError):
            split_local(np.arange(9), rng())


class TestJensenShannon:
    """Test cases for the non-IIDness measure."""

    def test_hand_divergence(self):
        """Test JS((1, 0), (0.5, 0.5)) = 1.5 - 0.75 log2 3."""
        value = jensen_shannon_divergence([1.0, 0.0], [0.5, 0.5])
        assert value == pytest.approx(HALF_SPLIT_JS, abs=1e-12)

    def test_disjoint_bounded_by_one(self):
        """Test disjoint distributions reach the upper bound."""
        assert jensen_shannon_divergence([1, 0], [0, 1]) == pytest.approx(1.0)

    def test_identical_distributions(self):
        """Test gateways sharing one distribution give zero."""
        counts = np.array([[2, 4], [2, 4], [2, 4]])
        assert jensen_shannon_noniidness(counts) == 0.0

    def test_two_disjoint_gateways(self):
        """Test each gateway holding one type, equal sizes."""
        counts = np.array([[5, 0], [0, 5]])

        divergence = jensen_shannon_noniidness(counts, JSMeasure.DIVERGENCE)
        distance = jensen_shannon_noniidness(counts, JSMeasure.DISTANCE)

        assert divergence == pytest.approx(HALF_SPLIT_JS, abs=1e-12)
        assert distance == pytest.approx(math.sqrt(HALF_SPLIT_JS), abs=1e-12)

    def test_symmetric_in_gateway_order(self):
        """Test reordering gateways leaves the value unchanged."""
        counts = rng(6).integers(1, 50, size=(6, 4))
        shuffled = counts[rng(7).permutation(6)]
        assert jensen_shannon_noniidness(counts) == pytest.approx(
            jensen_shannon_noniidness(shuffled), abs=1e-12
        )

    def test_empty_gateway(self):
        """Test a gateway without rows is rejected."""
        with pytest.raises(InputDataError):
            jensen_shannon_noniidness(np.array([[3, 1], [0, 0]]))


class TestDirichletPartition:
    """Test cases for dirichlet_partition."""

    dataset = synth_generate(
        n_device_types=9, dims=4, seed=0, normals_per_type=300, anomalies_per_type=10
    )

    def test_conservation(self):
        """Test every normal row goes to exactly one gateway."""
        plan = dirichlet_partition(self.dataset, 10, 0.5, rng(1))

        normal = self.dataset.normal_mask
        assert np.all(plan.assignment[normal] != UNASSIGNED)
        assert np.all(plan.assignment[~normal] == UNASSIGNED)
        counts = gateway_type_counts(
            plan.assignment, self.dataset.device_types, range(9), 10
        )
        assert counts.sum(axis=0).tolist() == [300] * 9
        assert sum(plan.gateway_sizes()) == 2700

    def test_deterministic(self):
        """Test one seed gives one plan."""
        first = dirichlet_partition(self.dataset, 10, 0.5, rng(2))
        second = dirichlet_partition(self.dataset, 10, 0.5, rng(2))
        assert np.array_equal(first.assignment, second.assignment)
        assert first.realized_js == second.realized_js

    def test_min_rows_respected(self):
        """Test every gateway reaches the minimum size."""
        plan = dirichlet_partition(self.dataset, 10, 0.1995, rng(3), min_rows=10)
        assert min(plan.gateway_sizes()) >= 10

    def test_non_iid_regimes(self):
        """Test low and high concentrations over 20 seeds."""
        # Act
        iid = [
            dirichlet_partition(self.dataset, 10, 1000.0, rng(seed)).realized_js
            for seed in range(20)
        ]
        skewed = [
            dirichlet_partition(self.dataset, 10, 0.1995, rng(seed)).realized_js
            for seed in range(20)
        ]

        # Assert
        assert np.median(iid) <= 0.05
        assert np.median(skewed) >= 0.5
        assert np.median(skewed) > np.median(iid)
        assert all(0.0 <= value <= 1.0 for value in iid + skewed)

    def test_impossible_minimum(self):
        """Test an unreachable minimum size fails after the redraws."""
        with pytest.raises(InputDataError):
            dirichlet_partition(
                self.dataset, 10, 0.5, rng(4), min_rows=1000, max_redraws=3
            )

    def test_single_gateway_rejected(self):
        """Test at least two gateways are required."""
        with pytest.raises(ConfigurationError):
            dirichlet_partition(self.dataset, 1, 0.5, rng())


class TestSyntheticData:
    """Test cases for synth_generate."""

    def test_seeded(self):
        """Test one seed gives one dataset."""
        first = synth_generate(n_device_types=3, dims=5, seed=4)
        second = synth_generate(n_device_types=3, dims=5, seed=4)
        assert np.array_equal(first.features, second.features)

    def test_counts(self):
        """Test exact per-type counts."""
        data = synth_generate(
            n_device_types=4, dims=3, normals_per_type=20, anomalies_per_type=5
        )
        assert data.n_rows == 100
        assert data.count_by_label() == (80, 20)
        assert data.device_type_ids() == (0, 1, 2, 3)

    def test_distance_classifier_separates(self):
        """Test anomalies are far from their type's normal cluster."""
        data = synth_generate(n_device_types=9, dims=16, seed=0)
        for device_type in data.device_type_ids():
            rows = data.device_types == device_type
            features, labels = data.features[rows], data.labels[rows]
            center = features[labels == Label.NORMAL].mean(axis=0)
            scores = np.linalg.norm(features - center, axis=1)
            assert roc_auc(scores, labels) > 0.99

    def test_needs_two_dimensions(self):
        """Test one-dimensional data is rejected."""
        with pytest.raises(ConfigurationError):
            synth_generate(dims=1)


class TestTestSets:
    """Test cases for build_test_sets."""

    data = synth_generate(
        n_device_types=3, dims=4, seed=1, normals_per_type=40, anomalies_per_type=10
    )

    def holdout(self, device_type, rows=6):
        normal = self.data.normal_mask & (self.data.device_types == device_type)
        return self.data.subset(np.flatnonzero(normal)[:rows])

    def anomalies(self, types=(0, 1, 2)):
        mask = self.data.anomalous_mask & np.isin(self.data.device_types, types)
        return self.data.subset(np.flatnonzero(mask))

    def test_both_labels_present(self):
        """Test every test set holds normal and anomalous rows."""
        test_sets = build_test_sets(
            {0: self.holdout(0), 1: self.holdout(1)},
            {0: (0,), 1: (1,)},
            anomaly_pool=self.anomalies(),
            new_device_pool=LabeledDataset.empty(4),
            rng=rng(),
        )

        for gateway_id, test_set in test_sets.items():
            normal, anomalous = test_set.count_by_label()
            assert normal == 6 and anomalous == 6
            attack_types = test_set.device_types[test_set.anomalous_mask]
            assert set(attack_types.tolist()) == {gateway_id}

    def test_new_devices_added(self):
        """Test held-out device types appear next to the training types."""
        held_out = self.data.subset(np.flatnonzero(self.data.device_types == 2))

        test_sets = build_test_sets(
            {0: self.holdout(0)},
            {0: (0,)},
            anomaly_pool=self.anomalies((0, 1)),
            new_device_pool=held_out,
            rng=rng(),
            new_device_ratio=0.5,
        )

        types = set(test_sets[0].device_types.tolist())
        assert types >= {0, 2}
        assert test_sets[0].n_rows == 6 + 6 + 3

    def test_falls_back_to_whole_pool(self):
        """Test a gateway without own attacks samples from every attack."""
        test_sets = build_test_sets(
            {0: self.holdout(0)},
            {0: (0,)},
            anomaly_pool=self.anomalies((1,)),
            new_device_pool=LabeledDataset.empty(4),
            rng=rng(),
        )
        assert test_sets[0].count_by_label() == (6, 6)

    def test_no_anomalies_configured(self):
        """Test a zero anomaly ratio is rejected before any training."""
        with pytest.raises(ConfigurationError):
            build_test_sets(
                {0: self.holdout(0)},
                {0: (0,)},
                anomaly_pool=self.anomalies(),
                new_device_pool=LabeledDataset.empty(4),
                rng=rng(),
                anomaly_ratio=0.0,
            )

    def test_empty_anomaly_pool(self):
        """Test an empty attack pool leaves AUC undefined."""
        with pytest.raises(InputDataError):
            build_test_sets(
                {0: self.holdout(0)},
                {0: (0,)},
                anomaly_pool=LabeledDataset.empty(4),
                new_device_pool=LabeledDataset.empty(4),
                rng=rng(),
            )

    def test_sampling_with_replacement_when_short(self):
        """Test a small pool is sampled with replacement."""
        pool = self.anomalies((0,))
        assert sample_rows(pool, pool.n_rows + 5, rng()).n_rows == pool.n_rows + 5
