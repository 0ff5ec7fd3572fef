"""Tests for cross-validation, thresholds, and density estimation."""

import csv
import json
import math

import numpy as np
import pytest

from stylus.classify import Prediction, lasso_fit, lasso_predict
from stylus.errors import DegenerateSample, InvalidParam, SingleClass
from stylus.evaluate import (
    DensityCurve,
    classification_error,
    density_curve,
    f1_threshold,
    kde,
    loocv,
    silverman_bandwidth,
    threshold_report,
    write_density_csv,
    write_eval_report,
    youden_threshold,
)

trapezoid = getattr(np, "trapezoid", None) or np.trapz


def _const_fit(value):
    def fit(X, y, seed=0):
        return value

    return fit


def _const_predict(model, X):
    return [Prediction(doc_id=0, prob_madison=model) for _ in range(X.shape[0])]


class TestLoocv:
    def test_constant_half_on_balanced_labels(self):
        X = np.zeros((6, 1))
        y = np.array([0, 1, 0, 1, 0, 1], float)
        result = loocv(X, y, _const_fit(0.5), _const_predict)
        assert result.l2_loss == 0.25
        assert result.probs.shape == (6,)
        assert result.doc_ids == (0, 1, 2, 3, 4, 5)

    def test_perfect_predictor_zero_loss(self):
        y = np.array([0, 1, 1, 0, 1], float)
        X = y[:, None]

        def fit(X, y, seed=0):
            return None

        def predict(model, X):
            return [Prediction(doc_id=0, prob_madison=float(X[0, 0]))]

        result = loocv(X, y, fit, predict)
        assert result.l2_loss == 0.0

    def test_fold_seeds_derived_from_base(self):
        seeds = []

        def fit(X, y, seed=0):
            seeds.append(seed)
            return 0.5

        X = np.zeros((5, 1))
        y = np.array([0, 1, 0, 1, 0], float)
        loocv(X, y, fit, _const_predict, seed=100)
        assert sorted(seeds) == [100, 101, 102, 103, 104]

    def test_jobs_do_not_change_result(self):
        def fit(X, y, seed=0):
            # depends on the fold through its seed, deterministically
            return (seed % 7) / 10.0

        X = np.zeros((9, 1))
        y = np.array([0, 1] * 4 + [0], float)
        serial = loocv(X, y, fit, _const_predict, seed=3, jobs=1)
        threaded = loocv(X, y, fit, _const_predict, seed=3, jobs=4)
        assert np.array_equal(serial.probs, threaded.probs)

    def test_fold_failure_carries_fold_index(self):
        def fit(X, y, seed=0):
            if seed == 2:
                raise ValueError("boom")
            return 0.5

        X = np.zeros((5, 1))
        y = np.array([0, 1, 0, 1, 0], float)
        with pytest.raises(ValueError, match=r"fold 2 \(doc_id 52\): boom"):
            loocv(X, y, fit, _const_predict, seed=0, doc_ids=[50, 51, 52, 53, 54])

    def test_too_few_rows(self):
        with pytest.raises(InvalidParam):
            loocv(np.zeros((2, 1)), [0, 1], _const_fit(0.5), _const_predict)

    def test_duplicate_doc_ids_rejected(self):
        with pytest.raises(InvalidParam):
            loocv(
                np.zeros((3, 1)),
                [0, 1, 0],
                _const_fit(0.5),
                _const_predict,
                doc_ids=[1, 1, 2],
            )

    def test_separable_data_with_penalized_logistic(self):
        rng = np.random.default_rng(4)
        n = 16
        y = np.array([0, 1] * (n // 2), float)
        X = (2.0 * y - 1.0)[:, None] * 2.0 + rng.normal(scale=0.2, size=(n, 1))
        result = loocv(X, y, lasso_fit, lasso_predict, seed=0, method="lasso")
        assert result.l2_loss < 0.05
        again = loocv(X, y, lasso_fit, lasso_predict, seed=0, method="lasso")
        assert np.array_equal(result.probs, again.probs)
        assert result.method == "lasso"
        assert np.all((result.probs > 0) & (result.probs < 1))


class TestYoudenThreshold:
    def test_perfect_separation_boundary_midpoint(self):
        probs = [0.1, 0.2, 0.8, 0.9]
        labels = [0, 0, 1, 1]
        assert youden_threshold(probs, labels) == 0.5

    def test_equal_probs_returns_smallest_candidate(self):
        assert youden_threshold([0.7, 0.7, 0.7], [0, 1, 0]) == 0.0

    def test_tie_breaks_toward_smallest(self):
        # anti-predictive probs: J = 0 at both endpoints, negative between
        assert youden_threshold([0.2, 0.8], [1, 0]) == 0.0

    def test_single_class_rejected(self):
        with pytest.raises(SingleClass):
            youden_threshold([0.2, 0.8], [1, 1])

    def test_monotone_transform_preserves_partition(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            probs = rng.uniform(size=12)
            labels = rng.integers(0, 2, size=12)
            if labels.min() == labels.max():
                continue
            t = youden_threshold(probs, labels)
            warped = probs**3
            tw = youden_threshold(warped, labels)
            assert np.array_equal(probs > t, warped > tw)


class TestF1Threshold:
    def test_four_point_fixture(self):
        assert f1_threshold([0.2, 0.4, 0.6, 0.8], [0, 1, 0, 1]) == pytest.approx(0.3)

    def test_perfect_separation_matches_youden(self):
        probs = [0.1, 0.2, 0.8, 0.9]
        labels = [0, 0, 1, 1]
        assert f1_threshold(probs, labels) == youden_threshold(probs, labels) == 0.5

    def test_all_positive_labels_selects_below_min_prob(self):
        probs = [0.2, 0.5, 0.9]
        t = f1_threshold(probs, [1, 1, 1])
        assert t < min(probs)
        assert t == 0.0

    def test_all_negative_labels_fall_back_to_smallest(self):
        assert f1_threshold([0.2, 0.5], [0, 0]) == 0.0


class TestClassificationError:
    def test_perfect_separation(self):
        assert classification_error([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1], 0.5) == 0.0

    def test_flipped_labels(self):
        assert classification_error([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0], 0.5) == 1.0

    def test_partial(self):
        assert classification_error([0.2, 0.6, 0.7, 0.4], [0, 1, 0, 1], 0.5) == 0.5

    def test_boundary_is_strict_greater(self):
        # p exactly at the threshold counts as a negative call
        assert classification_error([0.3], [0], 0.3) == 0.0
        assert classification_error([0.3], [1], 0.3) == 1.0


class TestThresholdReport:
    def test_confusion_tallies_partition_the_sample(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            n = int(rng.integers(6, 30))
            probs = rng.uniform(size=n)
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                continue
            report = threshold_report(probs, labels)
            n_pos = int(labels.sum())
            for name in ("roc", "f1", "fixed"):
                tally = report.confusion[name]
                assert tally["tp"] + tally["fn"] == n_pos
                assert tally["tn"] + tally["fp"] == n - n_pos
                assert sum(tally.values()) == n
                assert 0.0 <= report.errors[name] <= 1.0
            assert report.fixed_threshold == 0.3
            assert 0.0 <= report.roc_threshold <= 1.0
            assert 0.0 <= report.f1_threshold <= 1.0


class TestKde:
    def test_two_point_sample_is_symmetric_bimodal(self):
        curve = kde([0.0, 1.0])
        d = curve.density
        assert np.allclose(d, d[::-1], rtol=1e-9, atol=1e-12)
        mid = len(d) // 2
        left_peak = d[:mid].max()
        right_peak = d[mid:].max()
        assert left_peak == pytest.approx(right_peak, abs=1e-9)
        # two separated modes: the middle dips below the peaks
        assert d[mid] < 0.9 * left_peak

    def test_normal_sample_mode_near_center(self):
        rng = np.random.default_rng(10)
        x = rng.normal(0.5, 0.1, size=10_000)
        curve = kde(x)
        mode = curve.grid[np.argmax(curve.density)]
        assert abs(mode - 0.5) < 0.02

    @pytest.mark.parametrize("dist", ["normal", "uniform"])
    def test_integral_is_one(self, dist):
        rng = np.random.default_rng(11)
        if dist == "normal":
            x = rng.normal(0.4, 0.15, size=500)
        else:
            x = rng.uniform(0.1, 0.9, size=500)
        curve = kde(x)
        assert trapezoid(curve.density, curve.grid) == pytest.approx(1.0, abs=1e-3)

    def test_grid_shape_and_span(self):
        x = np.array([0.2, 0.4, 0.6])
        curve = kde(x)
        assert curve.grid.shape == (512,)
        assert curve.grid[0] == pytest.approx(0.2 - 3 * curve.bandwidth)
        assert curve.grid[-1] == pytest.approx(0.6 + 3 * curve.bandwidth)

    def test_silverman_bandwidth_value(self):
        x = np.array([0.1, 0.2, 0.3, 0.4, 0.5])
        sd = np.std(x, ddof=1)
        iqr = np.percentile(x, 75) - np.percentile(x, 25)
        want = 0.9 * min(sd, iqr / 1.34) * 5 ** (-0.2)
        assert silverman_bandwidth(x) == pytest.approx(want, rel=1e-12)

    def test_zero_iqr_falls_back_to_sd(self):
        x = np.array([0.2] * 6 + [0.8])
        h = silverman_bandwidth(x)
        assert h > 0.0
        curve = kde(x)
        assert np.all(np.isfinite(curve.density))
        assert trapezoid(curve.density, curve.grid) == pytest.approx(1.0, abs=5e-3)

    def test_identical_points_degenerate(self):
        with pytest.raises(DegenerateSample):
            kde([0.3, 0.3, 0.3, 0.3])

    def test_explicit_bandwidth(self):
        curve = kde([0.2, 0.8], bandwidth=0.05)
        assert curve.bandwidth == 0.05

    def test_invalid_inputs(self):
        with pytest.raises(InvalidParam):
            kde([0.5])
        with pytest.raises(InvalidParam):
            kde([0.2, 0.8], bandwidth=-1.0)


class TestDensityCurve:
    def _curve(self):
        rng = np.random.default_rng(12)
        hamilton = np.clip(rng.normal(0.1, 0.05, size=50), 0.001, 0.999)
        madison = np.clip(rng.normal(0.9, 0.05, size=14), 0.001, 0.999)
        disputed = rng.uniform(0.6, 0.99, size=12)
        return density_curve(hamilton, madison, disputed), hamilton, madison

    def test_shared_grid_and_integrals(self):
        curve, hamilton, madison = self._curve()
        assert curve.grid.shape == (512,)
        assert curve.grid[0] <= hamilton.min()
        assert curve.grid[-1] >= madison.max()
        assert np.all(curve.hamilton_density >= 0)
        assert np.all(curve.madison_density >= 0)
        assert trapezoid(curve.hamilton_density, curve.grid) == pytest.approx(1.0, abs=1e-3)
        assert trapezoid(curve.madison_density, curve.grid) == pytest.approx(1.0, abs=1e-3)
        assert len(curve.disputed_marks) == 12

    def test_csv_round_trip(self, tmp_path):
        curve, _, _ = self._curve()
        out = tmp_path / "density.csv"
        write_density_csv(curve, out)
        rows = list(csv.reader(out.read_text().splitlines()))
        assert rows[0] == ["grid", "hamilton_density", "madison_density", "disputed_mark"]
        assert len(rows) == 513
        assert float(rows[1][0]) == curve.grid[0]
        assert float(rows[1][3]) == curve.disputed_marks[0]
        assert rows[13][3] == ""  # only 12 disputed marks


class TestEvalReport:
    def test_schema(self, tmp_path):
        X = np.zeros((6, 1))
        y = np.array([0, 1, 0, 1, 0, 1], float)
        result = loocv(X, y, _const_fit(0.5), _const_predict, method="lasso-t3")
        report = threshold_report([0.1, 0.9, 0.2, 0.8, 0.1, 0.7], y)
        out = tmp_path / "eval_report.json"
        write_eval_report([result], {"lasso-t3": report}, out)
        payload = json.loads(out.read_text())
        entry = payload["methods"][0]
        assert entry["method"] == "lasso-t3"
        assert entry["l2_loss"] == 0.25
        assert len(entry["per_doc"]) == 6
        assert entry["thresholds"]["fixed"] == 0.3
        assert set(entry["confusion"]["roc"]) == {"tp", "fp", "tn", "fn"}
