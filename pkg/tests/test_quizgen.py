"""Quiz generation, dedup, validation, and assembly tests."""

import json

import pytest

from spacedocs.corpus import Passage
from spacedocs.index import cosine_of_vectors
from spacedocs.qa import BaselineReader
from spacedocs.quizgen import (
    QuestionCandidate,
    QuizError,
    assemble_quiz,
    dedup,
    generate_candidates,
    question_vector,
    run_pipeline,
    validate,
)
from tests.conftest import GOLDEN


def passage_store(text, pid="p0", doc_id="doc"):
    return {
        pid: Passage(
            doc_id=doc_id, section_path=(), char_start=0, char_end=len(text), text=text
        )
    }


def cand(i, question, status="generated", answer="", passage_id="p0"):
    return QuestionCandidate(
        id=f"qc-{i:03d}",
        question=question,
        answer=answer,
        passage_id=passage_id,
        strategy="answer_aware",
        status=status,
    )


class TestGenerate:
    def test_problem_report_closure_question(self, mini_kg):
        passages = passage_store(
            "Root cause identification is mandatory for the closure of a "
            "Problem Report."
        )
        out = generate_candidates(passages, mini_kg)
        pairs = {(c.question, c.answer) for c in out}
        assert (
            "What is mandatory for the closure of a Problem Report?",
            "Root cause identification",
        ) in pairs

    def test_no_seeds_no_candidates(self, mini_kg):
        out = generate_candidates(passage_store("Morning. Fine. Thanks."), mini_kg)
        assert out == []

    def test_entity_subject_question(self, mini_kg):
        passages = passage_store(
            "The Anomaly Review Board approves the corrective actions."
        )
        out = generate_candidates(passages, mini_kg)
        questions = [c.question for c in out]
        assert (
            "Which organization approves the corrective actions?" in questions
        )

    def test_svo_rewrite_lemmatizes_verb(self, mini_kg):
        passages = passage_store(
            "The system under configuration includes also the items received "
            "as Customer Furnished Item."
        )
        out = generate_candidates(passages, mini_kg)
        assert any(
            c.question == "What does the system under configuration include?"
            and c.strategy == "answer_agnostic"
            for c in out
        )

    def test_beam_width_caps_variants_per_seed(self, mini_kg):
        passages = passage_store("The baseline is the approved reference state.")
        narrow = generate_candidates(passages, mini_kg, beam_width=1)
        wide = generate_candidates(passages, mini_kg, beam_width=5)
        assert len(narrow) < len(wide)

    def test_quality_fixture_matches_golden(self, quality_passages, mini_kg):
        candidates = run_pipeline(quality_passages, mini_kg, BaselineReader())
        got = [c.to_dict() for c in candidates]
        want = json.loads((GOLDEN / "quiz_candidates.json").read_text())
        assert got == want


class TestDedup:
    def test_identical_questions_second_dropped(self):
        cands = [cand(1, "What is a waiver?"), cand(2, "What is a waiver?")]
        dedup(cands)
        assert [c.status for c in cands] == ["generated", "deduped_out"]

    def test_cosine_just_below_threshold_both_kept(self, lexicon):
        # Vectors {a..e} and {a..e}+{f,g,h}: cosine = 5/sqrt(5*8) = 0.7906.
        q1 = "alpha beta gamma delta epsilon"
        q2 = "alpha beta gamma delta epsilon foo goo hoo"
        v1 = question_vector(q1, lexicon)
        v2 = question_vector(q2, lexicon)
        assert cosine_of_vectors(v1, v2).value == pytest.approx(0.7906, abs=1e-4)
        cands = [cand(1, q1), cand(2, q2)]
        dedup(cands, threshold=0.8)
        assert [c.status for c in cands] == ["generated", "generated"]

    def test_exactly_at_threshold_dropped(self, lexicon):
        # tf vectors (3,4) and (0,5): cosine = 20/(5*5) = 0.8 exactly in
        # floating point (3-4-5 norms are exact).
        q1 = "alpha alpha alpha beta beta beta beta"
        q2 = "beta beta beta beta beta"
        v1 = question_vector(q1, lexicon)
        v2 = question_vector(q2, lexicon)
        assert cosine_of_vectors(v1, v2).value == 0.8
        cands = [cand(1, q1), cand(2, q2)]
        dedup(cands, threshold=0.8)
        assert [c.status for c in cands] == ["generated", "deduped_out"]

    def test_hand_computed_fixture(self, lexicon):
        qs = [
            "regolith brick habitat",          # kept (first)
            "regolith brick habitat",          # dup of 0 -> out
            "solar panel power",               # kept
            "regolith brick habitat vault",    # cos(0) = 3/sqrt(12)=0.866 -> out
            "panel power",                     # cos(2) = 2/sqrt(6)=0.816 -> out
            "ion engine test",                 # kept
        ]
        cands = [cand(i, q) for i, q in enumerate(qs)]
        dedup(cands, threshold=0.8)
        assert [c.status for c in cands] == [
            "generated",
            "deduped_out",
            "generated",
            "deduped_out",
            "deduped_out",
            "generated",
        ]

    def test_kept_set_has_no_pair_at_or_above_threshold(
        self, quality_passages, mini_kg, lexicon
    ):
        candidates = run_pipeline(quality_passages, mini_kg, BaselineReader())
        kept = [c for c in candidates if c.status in ("validated", "generated")]
        vectors = [question_vector(c.question, lexicon) for c in kept]
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                assert cosine_of_vectors(vectors[i], vectors[j]).value < 0.8


class TestValidate:
    def test_verbatim_answer_validates(self, mini_kg):
        passages = passage_store(
            "The spacecraft log is the first source for raising an anomaly "
            "report."
        )
        cands = generate_candidates(passages, mini_kg)
        validate(cands, BaselineReader(), passages)
        subject_cands = [c for c in cands if c.answer == "spacecraft log"]
        assert subject_cands
        assert all(c.status == "validated" for c in subject_cands)
        assert all(c.validation_score >= 0.5 for c in subject_cands)

    def test_unanswerable_question_rejected(self):
        passages = passage_store("A short unrelated sentence about gardening.")
        cands = [cand(1, "What governs orbital reentry corridors?")]
        validate(cands, BaselineReader(), passages)
        assert cands[0].status == "rejected_no_answer"

    def test_answer_agnostic_adopts_extracted_span(self, mini_kg):
        passages = passage_store(
            "The receiving inspection verifies the declared version of each "
            "furnished item."
        )
        cands = generate_candidates(passages, mini_kg)
        agnostic = [c for c in cands if c.strategy == "answer_agnostic"]
        assert agnostic and all(not c.answer for c in agnostic)
        validate(cands, BaselineReader(), passages)
        for c in agnostic:
            if c.status == "validated":
                assert c.answer

    def test_table8_failure_modes_survive_validation(self, quality_passages, mini_kg):
        """Known-negative fixtures: extract-only answering wrongly keeps the
        bracketed-example span and a partial 'also'-continuation answer;
        validation cannot catch these."""
        candidates = run_pipeline(quality_passages, mini_kg, BaselineReader())
        by_question = {c.question: c for c in candidates}
        paren = by_question["What does item configuration record?"]
        assert paren.status == "validated"
        assert "2.0" in paren.answer  # pulled from the bracketed example
        also = by_question["What does the system under configuration include?"]
        assert also.status == "validated"
        assert also.answer == "Customer Furnished Item"  # partial answer

    def test_status_transitions_forward_only(self):
        c = cand(1, "What is a baseline?")
        c.mark("validated")
        with pytest.raises(QuizError):
            c.mark("rejected_no_answer")


class TestAssemble:
    def test_three_candidates_same_order_in_both_sections(self, quality_passages):
        cands = [
            cand(1, "Q one?", status="validated", answer="A1", passage_id=pid)
            for pid in list(quality_passages)[:1]
        ]
        cands += [
            cand(2, "Q two?", status="validated", answer="A2",
                 passage_id=list(quality_passages)[1]),
            cand(3, "Q three?", status="validated", answer="A3",
                 passage_id=list(quality_passages)[2]),
        ]
        quiz, rendered = assemble_quiz(cands, "T", quality_passages)
        assert quiz.trainee_section == ["Q one?", "Q two?", "Q three?"]
        assert [q for q, _, _ in quiz.trainer_section] == quiz.trainee_section
        assert rendered.index("## Trainee") < rendered.index("## Trainer")

    def test_rejected_candidate_in_selection_fails(self, quality_passages):
        bad = cand(1, "Q?", status="rejected_no_answer",
                   passage_id=next(iter(quality_passages)))
        with pytest.raises(QuizError, match="status"):
            assemble_quiz([bad], "T", quality_passages)

    def test_empty_selection_fails(self, quality_passages):
        with pytest.raises(QuizError, match="empty"):
            assemble_quiz([], "T", quality_passages)

    def test_golden_rendering(self, quality_passages, mini_kg):
        candidates = run_pipeline(quality_passages, mini_kg, BaselineReader())
        wanted = [
            "What is mandatory for the closure of a Problem Report?",
            "What is the first source for raising a spacecraft anomaly report?",
            "Which organization notifies the relevant infrastructure team in "
            "case of an anomaly detected in a shared infrastructure?",
            "Who issues a supplier waiver when a contracted deliverable "
            "departs from its specification?",
            "What does the system under configuration include?",
        ]
        selected = [
            c for c in candidates if c.question in wanted and c.status == "validated"
        ]
        assert len(selected) == 5
        _, rendered = assemble_quiz(
            selected, "Quality Procedure Refresher", quality_passages
        )
        assert rendered == (GOLDEN / "quiz_rendered.md").read_text(encoding="utf-8")
