import io

import numpy as np
import pytest

from keywalk.config import PipelineConfig
from keywalk.errors import ConfigError, EvaluationError
from keywalk.evaluation import (
    CvPlan,
    cross_validate,
    frequency_baseline,
    make_folds,
    random_baseline,
    score_document,
    write_report_tsv,
)
from keywalk.text import Document, pos_tag, tokenize


def make_doc(doc_id, text, gold):
    return Document(
        id=doc_id, tokens=pos_tag(tokenize(text)), gold=tuple(gold), text=text
    )


class TestScoreDocument:
    def test_half_overlap(self):
        p, r, f = score_document(["b", "d"], {"b", "c"}, k=2)
        assert (p, r, f) == (0.5, 0.5, 0.5)

    def test_derived_case(self):
        p, r, f = score_document(["a", "b", "c"], {"a", "b", "c", "d"}, k=10)
        assert p == pytest.approx(1.0, abs=1e-12)
        assert r == pytest.approx(0.75, abs=1e-12)
        assert f == pytest.approx(6 / 7, abs=1e-12)

    def test_no_overlap(self):
        assert score_document(["x", "y"], {"a"}, k=10) == (0.0, 0.0, 0.0)

    def test_empty_gold_rejected(self):
        with pytest.raises(EvaluationError):
            score_document(["a"], set(), k=10)

    def test_duplicate_predictions_deduped(self):
        base = score_document(["a", "b"], {"a"}, k=2)
        with_dup = score_document(["a", "a", "b"], {"a"}, k=2)
        assert with_dup == base

    def test_gold_order_irrelevant(self):
        assert score_document(["a", "b"], ["b", "a"], k=2) == score_document(
            ["a", "b"], ["a", "b"], k=2
        )

    def test_strict_at_k_divides_by_k(self):
        p, r, f = score_document(["a"], {"a"}, k=10, strict_at_k=True)
        assert p == pytest.approx(0.1)
        assert r == 1.0

    def test_lenient_denominator_is_min(self):
        p, _, _ = score_document(["a"], {"a"}, k=10)
        assert p == 1.0

    def test_empty_predictions(self):
        assert score_document([], {"a"}, k=10) == (0.0, 0.0, 0.0)


class TestMakeFolds:
    def _docs(self, n):
        return [make_doc(f"d{i:02d}", f"word{i}.", ["word"]) for i in range(n)]

    def test_even_split(self):
        plan = make_folds(self._docs(20), folds=10, seed=1)
        sizes = np.bincount(list(plan.assignment.values()), minlength=10)
        assert list(sizes) == [2] * 10

    def test_remainder_split(self):
        plan = make_folds(self._docs(21), folds=10, seed=1)
        sizes = sorted(np.bincount(list(plan.assignment.values()), minlength=10))
        assert sizes == [2] * 9 + [3]

    def test_deterministic(self):
        docs = self._docs(13)
        assert make_folds(docs, 4, seed=9).assignment == make_folds(docs, 4, seed=9).assignment

    def test_every_document_assigned_once(self):
        docs = self._docs(17)
        plan = make_folds(docs, 5, seed=2)
        assert sorted(plan.assignment) == sorted(d.id for d in docs)

    def test_too_few_documents(self):
        with pytest.raises(ConfigError):
            make_folds(self._docs(3), folds=10, seed=1)


def tiny_corpus():
    """Six documents whose gold phrases are their dominant filtered bigrams."""
    docs = []
    themes = [
        ("maple syrup", "cedar plank"),
        ("copper wire", "granite slab"),
        ("velvet rope", "marble arch"),
        ("walnut shell", "amber bead"),
        ("cotton thread", "pewter mug"),
        ("willow bark", "quartz vein"),
    ]
    fillers = [
        ["otter", "heron", "newt", "stoat"],
        ["crag", "scree", "tarn", "fell"],
        ["lute", "fife", "viol", "harp"],
        ["dune", "wadi", "mesa", "butte"],
        ["sloop", "ketch", "yawl", "skiff"],
        ["moss", "fern", "sedge", "rush"],
    ]
    for i, (g1, g2) in enumerate(themes):
        parts = []
        for rep in range(6):
            parts.append(f"The {g1} guides the {fillers[i][rep % 4]}.")
            parts.append(f"Each {g2} contains a {fillers[(i + 1) % 6][rep % 4]}.")
        docs.append(make_doc(f"doc{i}", " ".join(parts), [g1, g2]))
    return docs


class TestCrossValidate:
    def test_beats_random_baseline(self, small_config):
        docs = tiny_corpus()
        plan = make_folds(docs, 2, seed=3)
        result = cross_validate(docs, small_config, plan)
        baseline = random_baseline(docs, small_config)
        assert result.f1 > baseline.f1

    def test_aggregates_are_means(self, small_config):
        docs = tiny_corpus()
        plan = make_folds(docs, 2, seed=3)
        result = cross_validate(docs, small_config, plan)
        assert result.precision == pytest.approx(
            np.mean([r[1] for r in result.per_document])
        )
        assert result.f1 == pytest.approx(np.mean([r[3] for r in result.per_document]))
        assert len(result.per_document) == len(docs)

    def test_single_fold_rejected(self, small_config):
        docs = tiny_corpus()
        plan = CvPlan(folds=1, seed=0, assignment={d.id: 0 for d in docs})
        with pytest.raises(ConfigError):
            cross_validate(docs, small_config, plan)

    def test_missing_gold_fails_before_training(self, small_config):
        docs = tiny_corpus()
        bare = Document(id="bare", tokens=docs[0].tokens, gold=None, text=docs[0].text)
        plan = CvPlan(folds=2, seed=0, assignment={})
        with pytest.raises(EvaluationError, match="bare"):
            cross_validate(docs + [bare], small_config, plan)

    def test_twin_documents_score_equally(self, small_config):
        docs = tiny_corpus()
        twin = Document(
            id="zz_twin", tokens=docs[0].tokens, gold=docs[0].gold, text=docs[0].text
        )
        corpus = docs + [twin]
        # same test fold for the twins, others split across both folds
        assignment = {d.id: (0 if i % 2 else 1) for i, d in enumerate(docs[1:], 1)}
        assignment[docs[0].id] = 0
        assignment["zz_twin"] = 0
        plan = CvPlan(folds=2, seed=0, assignment=assignment)
        result = cross_validate(corpus, small_config, plan)
        rows = {r[0]: r[1:] for r in result.per_document}
        assert rows[docs[0].id] == rows["zz_twin"]


class TestBaselines:
    def test_random_is_deterministic(self, small_config):
        docs = tiny_corpus()
        a = random_baseline(docs, small_config)
        b = random_baseline(docs, small_config)
        assert a == b

    def test_frequency_finds_dominant_phrases(self, small_config):
        docs = tiny_corpus()
        result = frequency_baseline(docs, small_config)
        assert result.recall > 0.9


class TestReports:
    def test_tsv_has_mean_row(self, small_config):
        docs = tiny_corpus()
        plan = make_folds(docs, 2, seed=3)
        result = cross_validate(docs, small_config, plan)
        buf = io.StringIO()
        write_report_tsv(result, buf)
        lines = buf.getvalue().splitlines()
        assert len(lines) == len(docs) + 1
        assert lines[-1].startswith("MEAN\t")
        mean_f1 = float(lines[-1].split("\t")[3])
        assert mean_f1 == pytest.approx(result.f1, abs=5e-7)


class TestPipelineConfig:
    def test_defaults_match_contract(self):
        cfg = PipelineConfig()
        assert (cfg.window, cfg.max_phrase_len, cfg.top_k, cfg.folds) == (10, 4, 10, 10)
        assert cfg.pos_allowed == ("NOUN", "ADJ")
        assert cfg.candidate_mode == "subngrams"
        assert cfg.deterministic is True

    def test_bad_values_rejected(self):
        with pytest.raises(ConfigError):
            PipelineConfig(window=1)
        with pytest.raises(ConfigError):
            PipelineConfig(candidate_mode="nope")
        with pytest.raises(ConfigError):
            PipelineConfig(pos_allowed=("NOUN", "BOGUS"))
