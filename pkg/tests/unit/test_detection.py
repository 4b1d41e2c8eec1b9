"""
Unit tests for the detector scorers, centroid fitting and thresholds.
"""

from src.domain.services.autoencoder import ae_loss, forward_encoder
from src.domain.services.detection import (
    build_detector,
    classify,
    fit_centroid,
    score_ae,
    score_batch,
    score_saecen,
    threshold_from_quantile,
)
from src.domain.services.preprocessing import zscore_fit

from tests.unit import (
    CentroidModel,
    Detector,
    DetectorKind,
    DetectorStateError,
    InputDataError,
    Label,
    TrainConfig,
    identity_model,
    np,
    pytest,
    random_model,
    train_local,
    zero_decoder_model,
)


def centroid_detector(centroid):
    return Detector(
        kind=DetectorKind.SAECEN,
        params=identity_model(2).strip_decoder(),
        centroid=CentroidModel(np.asarray(centroid, dtype=float)),
    )


class TestFitCentroid:
    """Test cases for fit_centroid."""

    def test_mean_of_rows(self):
        """Test rows (0, 0) and (2, 2) give (1, 1)."""
        centroid = fit_centroid(np.array([[0.0, 0.0], [2.0, 2.0]]))
        assert centroid.centroid.tolist() == [1.0, 1.0]

    def test_single_row(self):
        """Test a single row is its own centroid."""
        row = np.array([[0.3, -4.0, 2.5]])
        assert np.array_equal(fit_centroid(row).centroid, row[0])

    def test_matches_loop_oracle(self):
        """Test 100 random rows against a per-dimension sum."""
        rows = np.random.default_rng(0).standard_normal((100, 5))
        expected = [sum(rows[:, d]) / 100 for d in range(5)]
        np.testing.assert_allclose(fit_centroid(rows).centroid, expected, atol=1e-12)

    def test_no_rows(self):
        """Test an empty latent matrix is rejected."""
        with pytest.raises(InputDataError):
            fit_centroid(np.zeros((0, 3)))


class TestScores:
    """Test cases for score_ae and score_saecen."""

    def test_identity_autoencoder_scores_zero(self):
        """Test perfect reconstruction scores zero."""
        assert score_ae(np.array([3.0, -7.0]), identity_model(2)) == 0.0

    def test_zero_reconstruction_score(self):
        """Test x = (3, 4) against a zero decoder scores 25."""
        assert score_ae(np.array([3.0, 4.0]), zero_decoder_model(2)) == 25.0

    def test_ae_score_is_singleton_loss(self):
        """Test the score equals ae_loss on a one-row batch."""
        params = random_model(1)
        x = np.random.default_rng(2).standard_normal(4)
        assert score_ae(x, params) == pytest.approx(ae_loss(x[None, :], params))

    def test_latent_at_centroid_scores_zero(self):
        """Test an input encoded onto the centroid scores zero."""
        assert score_saecen(np.array([1.5, -2.0]), centroid_detector([1.5, -2.0])) == 0

    def test_distance_to_origin(self):
        """Test latent (3, 4) and centroid at the origin score 5."""
        assert score_saecen(np.array([3.0, 4.0]), centroid_detector([0, 0])) == 5.0

    def test_saecen_matches_oracle(self):
        """Test the score is the Euclidean latent distance."""
        params = random_model(3, input_dim=6)
        rows = np.random.default_rng(4).standard_normal((5, 6))
        detector = build_detector(DetectorKind.SAECEN, params, rows)
        x = np.random.default_rng(5).standard_normal(6)

        latent = forward_encoder(x, params)
        expected = np.sqrt(np.sum((latent - detector.centroid.centroid) ** 2))

        assert score_saecen(x, detector) == pytest.approx(expected, abs=1e-12)

    def test_unfitted_saecen(self):
        """Test scoring without a centroid fails."""
        detector = Detector(kind=DetectorKind.SAECEN, params=random_model(0))
        with pytest.raises(DetectorStateError):
            score_batch(detector, np.zeros((2, 4)))

    def test_scores_non_negative(self):
        """Test both families never score below zero."""
        params = random_model(6)
        rows = np.random.default_rng(7).standard_normal((30, 4))
        for kind in DetectorKind:
            detector = build_detector(kind, params, rows)
            assert np.all(score_batch(detector, rows) >= 0)


class TestDecoderIndependence:
    """Test cases for the stripped-decoder centroid detector."""

    def test_decoder_perturbation_leaves_scores_unchanged(self):
        """Test SAE-CEN scores depend on the encoder only."""
        # Arrange
        params = random_model(8, input_dim=6)
        n_encoder = sum(layer.parameter_count for layer in params.encoder_layers)
        noise = np.zeros(params.parameter_count)
        noise[n_encoder:] = np.random.default_rng(9).standard_normal(
            params.parameter_count - n_encoder
        )
        changed = params.with_flat(params.flatten() + noise)
        train = np.random.default_rng(10).standard_normal((40, 6))
        test = np.random.default_rng(11).standard_normal((25, 6))

        # Act
        original = build_detector(DetectorKind.SAECEN, params, train)
        modified = build_detector(DetectorKind.SAECEN, changed, train)

        # Assert
        assert not params.equals(changed)
        assert original.params.is_stripped
        assert np.array_equal(
            score_batch(original, test), score_batch(modified, test)
        )

    def test_shrink_training_pulls_centroid_to_origin(self):
        """Test shrink training moves normal latents toward the origin."""
        # Arrange
        data = np.random.default_rng(12).normal(2.0, 0.5, size=(200, 6))
        val = np.random.default_rng(13).normal(2.0, 0.5, size=(40, 6))
        initial = random_model(14, input_dim=6)
        cfg = TrainConfig(learning_rate=1e-3, local_epochs=30, shrink_lambda=10.0)

        # Act
        trained = train_local(data, val, initial, cfg, rng_seed=15)

        # Assert
        before = build_detector(DetectorKind.SAECEN, initial, data).centroid
        after = build_detector(DetectorKind.SAECEN, trained, data).centroid
        assert np.linalg.norm(after.centroid) < np.linalg.norm(before.centroid)


class TestThreshold:
    """Test cases for thresholds and verdicts."""

    def test_full_quantile_is_max(self):
        """Test q = 1 gives the largest score."""
        assert threshold_from_quantile([0.2, 5.0, 1.0], 1.0) == 5.0

    def test_median_interpolates(self):
        """Test scores {1, 2, 3, 4} at q = 0.5 give 2.5."""
        assert threshold_from_quantile([1, 2, 3, 4], 0.5) == 2.5

    def test_matches_sort_and_interpolate(self):
        """Test q = 0.95 against a sorted linear interpolation."""
        scores = np.random.default_rng(16).random(37)
        ordered = np.sort(scores)
        position = 0.95 * (scores.size - 1)
        low = int(np.floor(position))
        expected = ordered[low] + (position - low) * (ordered[low + 1] - ordered[low])

        assert threshold_from_quantile(scores, 0.95) == pytest.approx(
            expected, abs=1e-12
        )

    def test_empty_scores(self):
        """Test a threshold needs scores."""
        with pytest.raises(InputDataError):
            threshold_from_quantile([], 0.5)

    def test_classify(self):
        """Test scores above the threshold are anomalous."""
        detector = centroid_detector([0, 0]).with_threshold(1.0)

        verdicts = classify(detector, np.array([0.5, 1.0, 1.5]))

        assert verdicts.tolist() == [Label.NORMAL, Label.NORMAL, Label.ANOMALOUS]

    def test_classify_without_threshold(self):
        """Test verdicts need a threshold."""
        with pytest.raises(DetectorStateError):
            classify(centroid_detector([0, 0]), np.array([0.5]))

    def test_build_detector_with_threshold(self):
        """Test the fitted threshold flags about five percent of training rows."""
        rows = np.random.default_rng(17).standard_normal((200, 4))

        detector = build_detector(
            DetectorKind.AE, random_model(18), rows, threshold_quantile=0.95
        )

        flagged = classify(detector, score_batch(detector, rows)) == Label.ANOMALOUS
        assert flagged.sum() == 10


class TestScoreBatch:
    """Test cases for score_batch."""

    def test_raw_inputs_are_normalized(self):
        """Test raw rows go through the stored normalizer."""
        raw = np.random.default_rng(19).normal(5.0, 3.0, size=(50, 4))
        stats = zscore_fit(raw)
        detector = build_detector(DetectorKind.AE, random_model(20), raw)
        with_stats = detector.with_normalizer(stats)

        expected = score_batch(detector, (raw - stats.mean) / stats.std)

        np.testing.assert_allclose(
            score_batch(with_stats, raw, raw=True), expected, rtol=1e-12
        )

    def test_empty_input(self):
        """Test zero rows give zero scores."""
        detector = build_detector(DetectorKind.AE, random_model(0), np.ones((3, 4)))
        assert score_batch(detector, np.zeros((0, 4))).shape == (0,)

    def test_dimension_mismatch(self):
        """Test a wrong column count is rejected."""
        detector = build_detector(DetectorKind.AE, random_model(0), np.ones((3, 4)))
        with pytest.raises(InputDataError):
            score_batch(detector, np.zeros((2, 5)))
