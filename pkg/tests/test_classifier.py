import math

import numpy as np
import pytest

from keywalk.candidates import CandidatePhrase
from keywalk.classifier import (
    GnbModel,
    fit,
    load_model,
    predict_proba,
    predict_proba_many,
    rank_candidates,
    save_model,
    top_k,
)
from keywalk.errors import ModelFormatError, TrainingError


def symmetric_1d_model(var_smoothing=1e-9):
    """positives {1, 3}, negatives {-1, -3}."""
    X = np.array([[1.0], [3.0], [-1.0], [-3.0]])
    y = [True, True, False, False]
    return fit(X, y, var_smoothing)


class TestFit:
    def test_hand_case(self):
        m = symmetric_1d_model()
        assert m.mean_pos[0] == pytest.approx(2.0)
        assert m.mean_neg[0] == pytest.approx(-2.0)
        # sample variance (ddof=1): ((1-2)^2 + (3-2)^2) / 1 = 2
        assert m.var_pos[0] == pytest.approx(2.0, abs=1e-6)
        assert m.var_neg[0] == pytest.approx(2.0, abs=1e-6)
        assert m.prior_pos == 0.5 and m.prior_neg == 0.5

    def test_identical_positives_floored(self):
        X = np.array([[1.0, 5.0], [1.0, 5.0], [0.0, 0.0], [2.0, 1.0]])
        m = fit(X, [True, True, False, False], var_smoothing=1e-9)
        pooled_max = X.var(axis=0).max()
        assert np.all(m.var_pos >= 1e-9 * pooled_max)
        assert np.all(np.isfinite(m.var_pos))

    def test_single_class_rejected(self):
        X = np.array([[0.0], [1.0]])
        with pytest.raises(TrainingError, match="negative"):
            fit(X, [True, True])
        with pytest.raises(TrainingError, match="positive"):
            fit(X, [False, False])

    def test_priors_follow_frequencies(self):
        X = np.arange(8.0).reshape(-1, 1)
        m = fit(X, [True, False, False, False, True, False, False, False])
        assert m.prior_pos == pytest.approx(0.25)
        assert m.prior_pos + m.prior_neg == pytest.approx(1.0, abs=1e-12)


class TestPredictProba:
    def test_symmetric_midpoint(self):
        m = symmetric_1d_model()
        assert predict_proba(m, np.array([0.0])) == pytest.approx(0.5, abs=1e-12)

    def test_hand_log_odds(self):
        m = symmetric_1d_model()
        expected = 1.0 / (1.0 + math.exp(-4.0))
        assert predict_proba(m, np.array([2.0])) == pytest.approx(expected, abs=1e-9)

    def test_far_tail_stable(self):
        m = symmetric_1d_model()
        p = predict_proba(m, np.array([100.0]))
        assert math.isfinite(p)
        assert p >= 1.0 - 1e-9

    def test_dimension_mismatch(self):
        m = symmetric_1d_model()
        with pytest.raises(TrainingError):
            predict_proba(m, np.array([0.0, 1.0]))

    def test_posteriors_normalize(self):
        rng = np.random.default_rng(17)
        m = symmetric_1d_model()
        swapped = GnbModel(
            prior_pos=m.prior_neg,
            prior_neg=m.prior_pos,
            mean_pos=m.mean_neg,
            mean_neg=m.mean_pos,
            var_pos=m.var_neg,
            var_neg=m.var_pos,
            var_smoothing=m.var_smoothing,
        )
        for _ in range(50):
            x = rng.normal(scale=3.0, size=1)
            assert predict_proba(m, x) + predict_proba(swapped, x) == pytest.approx(
                1.0, abs=1e-9
            )

    def test_monotone_toward_positive_mean(self):
        m = symmetric_1d_model()
        xs = np.linspace(-5, 5, 101)
        ps = [predict_proba(m, np.array([x])) for x in xs]
        assert all(b > a for a, b in zip(ps, ps[1:]))

    def test_oracle_equivalence_random_datasets(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            n = int(rng.integers(4, 100))
            d = int(rng.integers(1, 9))
            X = rng.normal(size=(n, d))
            y = rng.random(n) < 0.4
            if y.all() or not y.any():
                y[0] = True
                y[1] = False
            eps = 1e-9
            m = fit(X, y, eps)

            # independent direct Bayes-rule evaluation
            pos, neg = X[y], X[~y]
            floor = eps * float(X.var(axis=0).max())

            def stats(cls):
                mu = cls.mean(axis=0)
                if cls.shape[0] > 1:
                    var = cls.var(axis=0, ddof=1) + floor
                else:
                    var = np.full(d, floor)
                return mu, var

            mu_p, var_p = stats(pos)
            mu_n, var_n = stats(neg)

            for _ in range(5):
                x = rng.normal(size=d)
                lp = math.log(len(pos) / n)
                ln = math.log(len(neg) / n)
                for j in range(d):
                    lp += -0.5 * math.log(2 * math.pi * var_p[j]) - (
                        x[j] - mu_p[j]
                    ) ** 2 / (2 * var_p[j])
                    ln += -0.5 * math.log(2 * math.pi * var_n[j]) - (
                        x[j] - mu_n[j]
                    ) ** 2 / (2 * var_n[j])
                mx = max(lp, ln)
                expected = math.exp(lp - mx) / (math.exp(lp - mx) + math.exp(ln - mx))
                assert predict_proba(m, x) == pytest.approx(expected, abs=1e-9)

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(9)
        m = symmetric_1d_model()
        X = rng.normal(size=(20, 1))
        batch = predict_proba_many(m, X)
        for i in range(20):
            assert batch[i] == pytest.approx(predict_proba(m, X[i]), abs=1e-12)


def cand(form, position, feature):
    return CandidatePhrase(
        words=tuple(form.split()),
        stemmed_form=form,
        first_position=position,
        occurrences=1,
        feature=np.asarray(feature, dtype=float),
    )


class TestRanking:
    def test_sorted_by_score(self):
        m = symmetric_1d_model()
        cands = [cand("low", 0, [-2.0]), cand("high", 1, [2.0])]
        ranked = rank_candidates(m, cands)
        assert [c.stemmed_form for c in ranked] == ["high", "low"]
        assert ranked[0].score > ranked[1].score

    def test_tie_broken_by_position(self):
        m = symmetric_1d_model()
        ranked = rank_candidates(m, [cand("late", 7, [1.0]), cand("soon", 2, [1.0])])
        assert [c.stemmed_form for c in ranked] == ["soon", "late"]

    def test_tie_broken_by_form_last(self):
        m = symmetric_1d_model()
        ranked = rank_candidates(m, [cand("b", 3, [1.0]), cand("a", 3, [1.0])])
        assert [c.stemmed_form for c in ranked] == ["a", "b"]

    def test_empty(self):
        assert rank_candidates(symmetric_1d_model(), []) == []

    def test_is_permutation(self):
        rng = np.random.default_rng(12)
        m = symmetric_1d_model()
        cands = [cand(f"c{i}", i, rng.normal(size=1)) for i in range(30)]
        ranked = rank_candidates(m, list(cands))
        assert sorted(c.stemmed_form for c in ranked) == sorted(
            c.stemmed_form for c in cands
        )


class TestTopK:
    def test_truncates_to_ten_by_default(self):
        items = list(range(15))
        assert top_k(items) == items[:10]

    def test_floor_at_available(self):
        assert top_k([1, 2, 3], 10) == [1, 2, 3]

    def test_k_one(self):
        assert top_k([5, 6], 1) == [5]

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            top_k([1], 0)


class TestSerialization:
    def test_roundtrip_lossless(self, tmp_path):
        m = symmetric_1d_model()
        m.config = {"seed": 42, "dim": 1}
        path = tmp_path / "model.gnb"
        save_model(m, path)
        loaded = load_model(path)
        assert loaded.prior_pos == m.prior_pos
        assert np.array_equal(loaded.mean_pos, m.mean_pos)
        assert np.array_equal(loaded.var_pos, m.var_pos)
        assert np.array_equal(loaded.mean_neg, m.mean_neg)
        assert np.array_equal(loaded.var_neg, m.var_neg)
        assert loaded.var_smoothing == m.var_smoothing
        assert loaded.config == m.config

    def test_resave_byte_identical(self, tmp_path):
        m = symmetric_1d_model()
        a, b = tmp_path / "a.gnb", tmp_path / "b.gnb"
        save_model(m, a)
        save_model(load_model(a), b)
        assert a.read_bytes() == b.read_bytes()

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.gnb"
        path.write_text("NOT-A-MODEL\n")
        with pytest.raises(ModelFormatError, match="bad.gnb"):
            load_model(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFormatError):
            load_model(tmp_path / "absent.gnb")

    def test_truncated_file(self, tmp_path):
        m = symmetric_1d_model()
        path = tmp_path / "trunc.gnb"
        save_model(m, path)
        path.write_bytes(path.read_bytes()[:40])
        with pytest.raises(ModelFormatError):
            load_model(path)
