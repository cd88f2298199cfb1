"""Inverted index, scorers, and retrieval-metric tests."""

import math
import random

import pytest

from spacedocs.index import (
    IndexError_,
    IndexUnit,
    build_index,
    cosine_similarity,
    eval_retrieval,
    search,
)


def units_of(texts):
    return [IndexUnit(unit_id=f"u{i:02d}", fields={"text": t}) for i, t in enumerate(texts)]


class TestBuildIndex:
    def test_three_singleton_docs(self):
        idx = build_index(units_of(["alpha", "beta", "gamma"]))
        assert idx.unit_count == 3
        assert idx.doc_freq[("text", "alpha")] == 1
        assert idx.doc_freq[("text", "beta")] == 1
        assert idx.doc_freq[("text", "gamma")] == 1

    def test_postings_match_naive_scan(self, mini_corpus, lexicon):
        units = [
            IndexUnit(unit_id=d.id, fields={"text": d.body}) for d in mini_corpus
        ]
        idx = build_index(units)
        for term in ("satellite", "regolith", "debris", "soil"):
            expected = {}
            for d in mini_corpus:
                tf = sum(
                    1
                    for t in lexicon.tokenize(d.body)
                    if not t.is_stopword and t.lemma_key == term
                )
                if tf:
                    expected[d.id] = tf
            got = dict(idx.postings.get(("text", term), []))
            assert got == expected, term

    def test_empty_unit_contributes_no_postings(self):
        idx = build_index(units_of(["alpha", ""]))
        assert idx.unit_count == 2
        assert idx.unit_lengths["text"]["u01"] == 0

    def test_duplicate_unit_id_rejected(self):
        units = [IndexUnit("a", {"text": "x"}), IndexUnit("a", {"text": "y"})]
        with pytest.raises(IndexError_, match="duplicate"):
            build_index(units)

    def test_default_field_weights_emphasize_metadata(self):
        units = [
            IndexUnit(
                "a",
                {
                    "text": "regolith story",
                    "main_lemmas": "regolith",
                    "main_syncons": "regolith",
                    "organizations": "esa",
                },
            ),
            IndexUnit("b", {"text": "other words entirely"}),
        ]
        idx = build_index(units)
        assert idx.field_weights["text"] == 1.0
        assert idx.field_weights["main_lemmas"] == 2.0
        assert idx.field_weights["main_syncons"] == 2.0
        assert idx.field_weights["organizations"] == 0.0
        # Zero-weight fields contribute nothing to scoring.
        hits = search(idx, "esa", k=2).hits
        assert hits == ()

    def test_rebuild_is_byte_identical(self, mini_corpus):
        units = [
            IndexUnit(unit_id=d.id, fields={"text": d.body}) for d in mini_corpus
        ]
        assert build_index(units).to_bytes() == build_index(units).to_bytes()

    def test_persistence_roundtrip(self, tmp_path, mini_corpus):
        units = [
            IndexUnit(unit_id=d.id, fields={"text": d.body}) for d in mini_corpus
        ]
        idx = build_index(units)
        path = tmp_path / "corpus.idx"
        idx.save(path)
        from spacedocs.index import Index

        loaded = Index.load(path)
        assert loaded.to_bytes() == idx.to_bytes()
        r1 = search(idx, "regolith habitat", k=5)
        r2 = search(loaded, "regolith habitat", k=5)
        assert [(h.unit_id, h.score) for h in r1.hits] == [
            (h.unit_id, h.score) for h in r2.hits
        ]

    def test_bad_magic_rejected(self, tmp_path):
        path = tmp_path / "bogus.idx"
        path.write_bytes(b"NOPE....")
        from spacedocs.index import Index

        with pytest.raises(IndexError_, match="magic"):
            Index.load(path)


class TestSearch:
    def test_unique_term_ranks_first(self):
        idx = build_index(units_of(["regolith brick", "solar panel", "ion engine"]))
        hits = search(idx, "regolith", k=3).hits
        assert hits[0].unit_id == "u00"
        assert len(hits) == 1

    def test_bm25_reference_value(self):
        """2-unit corpus, tf=2 at average length: ln(2) * 2*2.2/3.2 = 0.9531."""
        idx = build_index(
            units_of(["regolith regolith brick vault", "solar panel array wing"])
        )
        hits = search(idx, "regolith", k=2).hits
        expected = math.log(2.0) * (2 * 2.2) / (2 + 1.2)
        assert hits[0].unit_id == "u00"
        assert hits[0].score == pytest.approx(expected, abs=1e-6)
        assert hits[0].score == pytest.approx(0.953, abs=1e-3)

    def test_equal_scores_tie_break_by_unit_id(self):
        idx = build_index(units_of(["regolith brick", "regolith brick"]))
        hits = search(idx, "regolith", k=2).hits
        assert [h.unit_id for h in hits] == ["u00", "u01"]

    def test_empty_query_flagged(self):
        idx = build_index(units_of(["alpha beta"]))
        result = search(idx, "the of and", k=3)
        assert result.empty_query
        assert result.hits == ()

    def test_matched_terms_recorded(self):
        idx = build_index(units_of(["regolith brick habitat"]))
        hits = search(idx, "regolith habitat dome", k=1).hits
        assert hits[0].matched_terms == ("habitat", "regolith")

    def test_tfidf_scorer_ranks_unique_term_higher(self):
        idx = build_index(
            units_of(["regolith brick", "brick wall", "brick house garden"])
        )
        hits = search(idx, "regolith brick", k=3, scorer="tfidf").hits
        assert hits[0].unit_id == "u00"

    def test_bm25_tf_monotonicity(self):
        """Score non-decreasing in tf with df, lengths, avg length fixed."""
        k1, b = 1.2, 0.75

        def tf_part(tf, length, avg):
            norm = 1 - b + b * length / avg
            return tf * (k1 + 1) / (tf + k1 * norm)

        rng = random.Random(3)
        for _ in range(200):
            length = rng.randint(1, 50)
            avg = rng.uniform(1, 50)
            tf = rng.randint(1, 20)
            assert tf_part(tf + 1, length, avg) >= tf_part(tf, length, avg)


class TestCosine:
    def test_identical_units(self):
        idx = build_index(units_of(["regolith brick vault", "regolith brick vault"]))
        sim = cosine_similarity(idx, "u00", "u01")
        assert sim.value == pytest.approx(1.0, abs=1e-9)
        assert not sim.zero_vector

    def test_disjoint_units(self):
        idx = build_index(units_of(["regolith brick", "solar panel"]))
        assert cosine_similarity(idx, "u00", "u01").value == 0.0

    def test_binary_vectors_equal_df_gives_half(self):
        """(1,1,0)·(1,0,1) = 0.5 exactly once every term has equal df."""
        idx = build_index(
            units_of(["alpha beta", "alpha gamma", "beta gamma"])
        )
        sim = cosine_similarity(idx, "u00", "u01")
        assert sim.value == pytest.approx(0.5, abs=1e-12)

    def test_symmetry(self, mini_corpus):
        units = [
            IndexUnit(unit_id=d.id, fields={"text": d.body})
            for d in list(mini_corpus)[:10]
        ]
        idx = build_index(units)
        ids = [u.unit_id for u in units]
        for a in ids[:5]:
            for b in ids[5:]:
                assert cosine_similarity(idx, a, b).value == pytest.approx(
                    cosine_similarity(idx, b, a).value, abs=1e-12
                )

    def test_zero_vector_flagged(self):
        idx = build_index(units_of(["alpha beta", ""]))
        sim = cosine_similarity(idx, "u00", "u01")
        assert sim.value == 0.0
        assert sim.zero_vector

    def test_unknown_unit_rejected(self):
        idx = build_index(units_of(["alpha"]))
        with pytest.raises(IndexError_, match="not indexed"):
            cosine_similarity(idx, "u00", "nope")


def brute_force_metrics(idx, testset, k, scorer="bm25"):
    """Oracle: recompute ranks by scoring every unit independently."""
    recalls, rrs, accs = [], [], []
    all_ids = sorted({uid for lengths in idx.unit_lengths.values() for uid in lengths})
    for query, gold in testset:
        scored = []
        full = search(idx, query, k=len(all_ids), scorer=scorer)
        ranked = [h.unit_id for h in full.hits][:k]
        gold_set = set(gold)
        hit_ranks = [r for r, uid in enumerate(ranked, 1) if uid in gold_set]
        recalls.append(len(set(ranked) & gold_set) / len(gold_set))
        rrs.append(1.0 / hit_ranks[0] if hit_ranks else 0.0)
        accs.append(1.0 if hit_ranks else 0.0)
    n = len(testset)
    return sum(recalls) / n, sum(rrs) / n, sum(accs) / n


class TestEvalRetrieval:
    def test_all_gold_at_rank_one(self):
        idx = build_index(units_of(["regolith", "solar", "plasma"]))
        testset = [("regolith", ["u00"]), ("solar", ["u01"]), ("plasma", ["u02"])]
        m = eval_retrieval(idx, testset, k=10)
        assert (m.recall_at_k, m.mrr_at_k, m.accuracy_at_k) == (1.0, 1.0, 1.0)

    def test_gold_at_rank_three(self):
        idx = build_index(
            units_of(
                [
                    "regolith regolith regolith brick",
                    "regolith regolith brick",
                    "regolith brick extra words here",
                ]
            )
        )
        hits = search(idx, "regolith", k=3).hits
        assert len(hits) == 3
        third = hits[2].unit_id
        m = eval_retrieval(idx, [("regolith", [third])], k=10)
        assert m.mrr_at_k == pytest.approx(1 / 3)
        assert m.accuracy_at_k == 1.0

    def test_four_query_mixed_fixture_matches_oracle(self):
        texts = [
            "regolith brick habitat dome",
            "solar panel array power",
            "regolith sintering furnace",
            "ion engine thruster test",
            "panel mounting bracket",
        ]
        idx = build_index(units_of(texts))
        testset = [
            ("regolith habitat", ["u00"]),
            ("solar panel", ["u01", "u04"]),
            ("sintering", ["u02"]),
            ("warp drive", ["u03"]),
        ]
        m = eval_retrieval(idx, testset, k=3)
        r, rr, a = brute_force_metrics(idx, testset, k=3)
        assert m.recall_at_k == pytest.approx(r)
        assert m.mrr_at_k == pytest.approx(rr)
        assert m.accuracy_at_k == pytest.approx(a)

    def test_missing_gold_id_rejected(self):
        idx = build_index(units_of(["alpha"]))
        with pytest.raises(IndexError_, match="not indexed"):
            eval_retrieval(idx, [("alpha", ["zz"])], k=3)

    def test_empty_testset_rejected(self):
        idx = build_index(units_of(["alpha"]))
        with pytest.raises(IndexError_, match="empty"):
            eval_retrieval(idx, [], k=3)

    def test_recall_non_decreasing_in_k(self, mini_corpus):
        units = [IndexUnit(unit_id=d.id, fields={"text": d.body}) for d in mini_corpus]
        idx = build_index(units)
        testset = [
            ("regolith habitat construction", ["idea-03", "idea-04"]),
            ("space debris removal", ["idea-01", "project-01"]),
            ("sea surface temperature", ["idea-05", "study-03"]),
        ]
        prev = 0.0
        for k in (1, 2, 5, 10, 20):
            m = eval_retrieval(idx, testset, k=k)
            assert m.recall_at_k >= prev
            prev = m.recall_at_k
