"""Quiz generation: template candidates -> dedup -> reader validation -> quiz.

Candidates come from two strategies. The answer-aware one picks answer
seeds inside a sentence (copula subjects and complements, typed entity
subjects) and instantiates a wh-template for the seed type; the
answer-agnostic one rewrites subject-verb-object sentences into "What
does <subject> <verb>?" questions and adopts whatever span the reader
later extracts. Near-duplicate questions are dropped by cosine similarity
of their term vectors (keep-first scan), and every surviving candidate
must be answerable by the reader from its own source passage before a
human selects what goes into the final two-section quiz.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .corpus import Passage
from .index import cosine_of_vectors
from .kgraph import KnowledgeGraph, annotate
from .lexicon import Lexicon, default_lexicon
from .qa import Reader, token_f1

DEFAULT_DEDUP_THRESHOLD = 0.8
DEFAULT_MIN_SCORE = 0.5
DEFAULT_BEAM_WIDTH = 5

STATUSES = ("generated", "deduped_out", "validated", "rejected_no_answer")

_MODALS = ("shall", "must", "will", "can", "may", "should")
_COPULAS = ("is", "are")
_ARTICLES = {"the", "a", "an"}

# Third-person verb forms that anchor subject-verb-object rewrites.
_VERB_CUES = {
    "applies", "approves", "assigns", "chairs", "collects", "conducts",
    "contains", "covers", "defines", "delivers", "depends", "describes",
    "detects", "documents", "ensures", "establishes", "generates",
    "identifies", "includes", "issues", "leads", "maintains", "manages",
    "measures", "monitors", "notifies", "performs", "produces", "provides",
    "raises", "records", "relies", "requires", "reviews", "schedules",
    "specifies", "stores", "supports", "tracks", "uses", "verifies",
}

_MAX_SUBJECT_TOKENS = 10


class QuizError(Exception):
    pass


@dataclass
class QuestionCandidate:
    id: str
    question: str
    answer: str
    passage_id: str
    strategy: str  # answer_aware | answer_agnostic
    status: str = "generated"
    validation_score: float = 0.0
    seed_type: str = ""
    f1_vs_seed: float | None = None

    def mark(self, status: str) -> None:
        if status not in STATUSES:
            raise QuizError(f"unknown status {status!r}")
        if self.status != "generated" and status != self.status:
            raise QuizError(
                f"candidate {self.id}: cannot move from {self.status} to {status}"
            )
        self.status = status

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "question": self.question,
            "answer": self.answer,
            "passage_id": self.passage_id,
            "strategy": self.strategy,
            "status": self.status,
            "validation_score": self.validation_score,
            "seed_type": self.seed_type,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "QuestionCandidate":
        return cls(
            id=raw["id"],
            question=raw["question"],
            answer=raw["answer"],
            passage_id=raw["passage_id"],
            strategy=raw["strategy"],
            status=raw["status"],
            validation_score=raw.get("validation_score", 0.0),
            seed_type=raw.get("seed_type", ""),
        )


def load_templates(path: Path | str | None = None) -> dict[str, str]:
    if path is None:
        path = Path(str(_importlib_resources.files("spacedocs") / "resources" / "question_templates.tsv"))
    out = {}
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise QuizError(f"{path}:{i}: expected 'seed_type<TAB>pattern'")
        out[parts[0]] = parts[1]
    return out


def _strip_leading_article(text: str) -> str:
    words = text.split(" ", 1)
    if len(words) == 2 and words[0].casefold() in _ARTICLES:
        return words[1]
    return text


def _lower_initial(text: str) -> str:
    if text and text[0].isupper() and (len(text) == 1 or not text[1].isupper()):
        return text[0].lower() + text[1:]
    return text


def generate_candidates(
    passages: Mapping[str, Passage],
    kg: KnowledgeGraph,
    templates: dict[str, str] | None = None,
    beam_width: int = DEFAULT_BEAM_WIDTH,
    lexicon: Lexicon | None = None,
) -> list[QuestionCandidate]:
    """Template-based candidates in deterministic passage/sentence order."""
    templates = templates or load_templates()
    lexicon = lexicon or default_lexicon()
    out: list[QuestionCandidate] = []
    counter = 0

    def add(question: str, answer: str, pid: str, strategy: str, seed_type: str):
        nonlocal counter
        counter += 1
        out.append(
            QuestionCandidate(
                id=f"qc-{counter:03d}",
                question=question,
                answer=answer,
                passage_id=pid,
                strategy=strategy,
                seed_type=seed_type,
            )
        )

    for pid, passage in passages.items():
        mentions = annotate(passage.text, kg)
        for sent in lexicon.sentences(passage.text):
            text = sent.text.rstrip(".").rstrip()
            tokens = lexicon.tokenize(text)
            if len(tokens) < 3:
                continue
            emitted_for_seed = 0

            # Copula seed: "<subject> is/are <complement>". The copula must be
            # a standalone word (not a piece of a hyphenated token).
            def standalone(t):
                before = text[t.char_start - 1] if t.char_start > 0 else " "
                after = text[t.char_end] if t.char_end < len(text) else " "
                return before.isspace() and (after.isspace() or after in ",.")

            ci = next(
                (
                    i
                    for i, t in enumerate(tokens)
                    if t.key in _COPULAS and 0 < i and standalone(t)
                ),
                None,
            )
            if ci is not None and ci <= _MAX_SUBJECT_TOKENS and ci < len(tokens) - 1:
                subject = text[tokens[0].char_start : tokens[ci - 1].char_end]
                predicate = text[tokens[ci].char_start :]
                complement = text[tokens[ci + 1].char_start :]
                subj_has_content = any(
                    not t.is_stopword for t in tokens[:ci]
                )
                comp_has_content = any(
                    not t.is_stopword for t in tokens[ci + 1 :]
                )
                if subj_has_content and comp_has_content:
                    if emitted_for_seed < beam_width and "definition_subject" in templates:
                        add(
                            templates["definition_subject"].format(predicate=predicate),
                            _strip_leading_article(subject),
                            pid,
                            "answer_aware",
                            "definition_subject",
                        )
                        emitted_for_seed += 1
                    if emitted_for_seed < beam_width and "definition_complement" in templates:
                        add(
                            templates["definition_complement"].format(
                                copula=tokens[ci].surface.casefold(),
                                subject=_lower_initial(subject),
                            ),
                            complement,
                            pid,
                            "answer_aware",
                            "definition_complement",
                        )
                        emitted_for_seed += 1

            # Entity-subject seed: a typed mention opening the sentence.
            sent_mentions = [
                m
                for m in mentions
                if m.char_start >= sent.char_start and m.char_end <= sent.char_end
            ]
            for m in sent_mentions:
                local_start = m.char_start - sent.char_start
                first_content = next((t for t in tokens if not t.is_stopword), None)
                if first_content is None or local_start != first_content.char_start:
                    continue
                etype = kg[m.concept_id].entity_type
                key = {
                    "person": "person_subject",
                    "organization": "organization_subject",
                    "place": "place_subject",
                }.get(etype)
                if key is None or key not in templates:
                    continue
                local_end = m.char_end - sent.char_start
                after = [t for t in tokens if t.char_start >= local_end]
                if not after or all(t.is_stopword for t in after):
                    continue
                predicate = text[after[0].char_start :]
                if not predicate:
                    continue
                add(
                    templates[key].format(predicate=predicate),
                    text[local_start:local_end],
                    pid,
                    "answer_aware",
                    key,
                )
                break  # one entity seed per sentence

            # Subject-verb-object rewrite (answer-agnostic). The subject may
            # not span a copula (those sentences belong to the copula rules).
            vi = next(
                (
                    i
                    for i, t in enumerate(tokens)
                    if t.key in _VERB_CUES
                    and 0 < i <= _MAX_SUBJECT_TOKENS
                    and not any(p.key in _COPULAS for p in tokens[:i])
                ),
                None,
            )
            if vi is not None and vi < len(tokens) - 1 and "svo_object" in templates:
                subject_tokens = tokens[:vi]
                object_tokens = tokens[vi + 1 :]
                if any(not t.is_stopword for t in subject_tokens) and any(
                    not t.is_stopword for t in object_tokens
                ):
                    subject = _lower_initial(
                        text[subject_tokens[0].char_start : subject_tokens[-1].char_end]
                    )
                    verb = lexicon.lemmatize_word(tokens[vi].surface)
                    add(
                        templates["svo_object"].format(subject=subject, verb=verb),
                        "",
                        pid,
                        "answer_agnostic",
                        "svo_object",
                    )
            elif "svo_modal" in templates:
                mi = next(
                    (
                        i
                        for i, t in enumerate(tokens)
                        if t.key in _MODALS and 0 < i <= _MAX_SUBJECT_TOKENS
                    ),
                    None,
                )
                if (
                    mi is not None
                    and mi < len(tokens) - 2
                    and not tokens[mi + 1].is_stopword
                    and any(not t.is_stopword for t in tokens[:mi])
                    and any(not t.is_stopword for t in tokens[mi + 2 :])
                ):
                    subject = _lower_initial(
                        text[tokens[0].char_start : tokens[mi - 1].char_end]
                    )
                    add(
                        templates["svo_modal"].format(
                            modal=tokens[mi].surface.casefold(),
                            subject=subject,
                            verb=tokens[mi + 1].surface.casefold(),
                        ),
                        "",
                        pid,
                        "answer_agnostic",
                        "svo_modal",
                    )
    return out


def question_vector(
    question: str,
    lexicon: Lexicon,
    idf: Callable[[str], float] | None = None,
) -> dict[str, float]:
    """Term-frequency lemma vector, optionally IDF-weighted."""
    weigh = idf or (lambda term: 1.0)
    counts = Counter(lexicon.content_lemmas(question))
    return {term: tf * weigh(term) for term, tf in counts.items()}


def dedup(
    candidates: Sequence[QuestionCandidate],
    threshold: float = DEFAULT_DEDUP_THRESHOLD,
    lexicon: Lexicon | None = None,
    idf: Callable[[str], float] | None = None,
) -> list[QuestionCandidate]:
    """Keep-first scan: drop candidates similar (>= threshold) to a kept one."""
    lexicon = lexicon or default_lexicon()
    kept_vectors: list[dict[str, float]] = []
    for cand in candidates:
        if cand.status != "generated":
            continue
        vec = question_vector(cand.question, lexicon, idf)
        if any(
            cosine_of_vectors(vec, prev).value >= threshold for prev in kept_vectors
        ):
            cand.mark("deduped_out")
        else:
            kept_vectors.append(vec)
    return list(candidates)


def validate(
    candidates: Sequence[QuestionCandidate],
    reader: Reader,
    passages: Mapping[str, Passage],
    min_score: float = DEFAULT_MIN_SCORE,
    lexicon: Lexicon | None = None,
) -> list[QuestionCandidate]:
    """Require the reader to answer each kept question from its own passage."""
    lexicon = lexicon or default_lexicon()
    for cand in candidates:
        if cand.status != "generated":
            continue
        passage = passages[cand.passage_id]
        spans = reader.read(cand.question, cand.passage_id, passage)
        top = spans[0] if spans else None
        if top is not None and top.score >= min_score:
            cand.validation_score = top.score
            if cand.strategy == "answer_agnostic" or not cand.answer:
                cand.answer = top.text
            else:
                cand.f1_vs_seed = token_f1(top.text, cand.answer, lexicon=lexicon).f1
            cand.mark("validated")
        else:
            cand.validation_score = top.score if top is not None else 0.0
            cand.mark("rejected_no_answer")
    return list(candidates)


@dataclass(frozen=True)
class Quiz:
    title: str
    entries: tuple[tuple[str, str, str, str], ...]  # (question, answer, passage_id, passage_text)

    @property
    def trainee_section(self) -> list[str]:
        return [q for q, _, _, _ in self.entries]

    @property
    def trainer_section(self) -> list[tuple[str, str, str]]:
        return [(q, a, text) for q, a, _, text in self.entries]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "trainee_section": self.trainee_section,
            "trainer_section": [
                {"question": q, "answer": a, "passage_id": pid, "passage": text}
                for q, a, pid, text in self.entries
            ],
        }


def assemble_quiz(
    selected: Sequence[QuestionCandidate],
    title: str,
    passages: Mapping[str, Passage],
) -> tuple[Quiz, str]:
    """Build and render the two-section quiz from validated candidates."""
    if not selected:
        raise QuizError("cannot assemble a quiz from an empty selection")
    for cand in selected:
        if cand.status != "validated":
            raise QuizError(
                f"candidate {cand.id} has status {cand.status}; only validated "
                "candidates can enter a quiz"
            )
    entries = tuple(
        (c.question, c.answer, c.passage_id, passages[c.passage_id].text.strip())
        for c in selected
    )
    quiz = Quiz(title=title, entries=entries)
    return quiz, render_quiz(quiz)


def render_quiz(quiz: Quiz) -> str:
    lines = [f"# {quiz.title}", "", "## Trainee", ""]
    for i, question in enumerate(quiz.trainee_section, 1):
        lines.append(f"{i}. {question}")
    lines += ["", "## Trainer", ""]
    for i, (question, answer, pid, text) in enumerate(quiz.entries, 1):
        lines.append(f"{i}. {question}")
        lines.append(f"   Answer: {answer}")
        lines.append(f"   Passage ({pid}):")
        for raw in text.splitlines():
            lines.append(f"   > {raw}" if raw.strip() else "   >")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def run_pipeline(
    passages: Mapping[str, Passage],
    kg: KnowledgeGraph,
    reader: Reader,
    templates: dict[str, str] | None = None,
    beam_width: int = DEFAULT_BEAM_WIDTH,
    dedup_threshold: float = DEFAULT_DEDUP_THRESHOLD,
    min_score: float = DEFAULT_MIN_SCORE,
    lexicon: Lexicon | None = None,
    idf: Callable[[str], float] | None = None,
) -> list[QuestionCandidate]:
    """generate -> dedup -> validate, in that order (cheapest filter first)."""
    candidates = generate_candidates(
        passages, kg, templates=templates, beam_width=beam_width, lexicon=lexicon
    )
    dedup(candidates, threshold=dedup_threshold, lexicon=lexicon, idf=idf)
    validate(candidates, reader, passages, min_score=min_score, lexicon=lexicon)
    return candidates
