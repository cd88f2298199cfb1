"""Two-stage retriever-reader question answering over passages.

The pipeline retrieves top-k passages, runs a reader over each, merges the
candidate spans, and splits them at the confidence threshold (default 0.5)
into answers shown directly and low-confidence answers behind an explicit
reveal. Readers are pluggable; the shipped baseline is purely lexical:

* find the sentence with the highest IDF-weighted coverage of question
  content terms (the following sentence also contributes, damped),
* candidate spans are entity runs, stopword-free chunks, and copula
  complements/subjects inside those sentences, never containing a
  question term,
* raw score = (sentence coverage / total question IDF mass) x a span-type
  bonus keyed on the wh-word, squashed to [0, 1] by a logistic whose
  constants are fixed so full single-sentence coverage lands near 0.85
  and half coverage at 0.5.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol, Sequence

from .corpus import Passage
from .index import Hit, Index, search
from .lexicon import Lexicon, Token, default_lexicon

DEFAULT_THRESHOLD = 0.5
DEFAULT_TOP_K = 10

# Logistic squash constants: midpoint at half coverage, 0.85 at full.
SQUASH_MIDPOINT = 0.5
SQUASH_STEEPNESS = 2.0 * math.log(0.85 / 0.15)

# Span-type bonuses (multiply the raw sentence coverage).
BONUS_TYPE_MATCH = 1.0
BONUS_ENTITY_DEFAULT = 0.95
BONUS_CHUNK_DEFAULT = 0.9
BONUS_TYPE_MISMATCH = 0.7
ADJACENT_SENTENCE_FACTOR = 0.85

MAX_SPAN_TOKENS = 12
MAX_SPANS_PER_PASSAGE = 5

_COPULAS = {"is", "are", "was", "were", "be", "means"}
_WH_NUMERIC_SECOND = {"many", "much", "long", "often", "far"}


class QAError(Exception):
    pass


class UnknownDocumentError(QAError):
    def __init__(self, doc_id: str):
        super().__init__(f"no passages indexed for document {doc_id!r}")
        self.doc_id = doc_id


@dataclass(frozen=True)
class AnswerSpan:
    text: str
    passage_id: str
    doc_id: str
    char_start: int
    char_end: int
    score: float

    def __post_init__(self):
        if not (0.0 <= self.score <= 1.0):
            raise QAError(f"span score {self.score} outside [0, 1]")

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "passage_id": self.passage_id,
            "doc_id": self.doc_id,
            "char_start": self.char_start,
            "char_end": self.char_end,
            "score": self.score,
        }


@dataclass(frozen=True)
class QAResult:
    question: str
    primary_answers: tuple[AnswerSpan, ...]
    low_confidence_answers: tuple[AnswerSpan, ...]
    no_answer: bool
    threshold: float = DEFAULT_THRESHOLD

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "primary_answers": [s.to_dict() for s in self.primary_answers],
            "low_confidence_answers": [s.to_dict() for s in self.low_confidence_answers],
            "no_answer": self.no_answer,
            "threshold": self.threshold,
        }


class Reader(Protocol):
    """Pluggable reader: spans with probability-like scores in [0, 1]."""

    def read(self, question: str, passage_id: str, passage: Passage) -> list[AnswerSpan]:
        ...


def squash(raw: float) -> float:
    return 1.0 / (1.0 + math.exp(-SQUASH_STEEPNESS * (raw - SQUASH_MIDPOINT)))


def question_profile(question: str, lexicon: Lexicon) -> tuple[list[str], str]:
    """Content lemma keys (wh-words excluded) and the expected answer kind."""
    tokens = lexicon.tokenize(question)
    expected = "any"
    if tokens:
        first = tokens[0].key
        second = tokens[1].key if len(tokens) > 1 else ""
        if first == "when" or (first == "how" and second in _WH_NUMERIC_SECOND):
            expected = "numeric"
        elif first in {"who", "whom", "where"}:
            expected = "entity"
        elif first == "how" or first == "why":
            expected = "method"
    content = [t.lemma_key for t in tokens if not t.is_stopword]
    # "how long/often/far": the measure word modifies the wh, it is not a
    # content term to look for in the passage.
    if tokens and tokens[0].key == "how" and len(tokens) > 1:
        second_lemma = tokens[1].lemma_key
        if tokens[1].key in _WH_NUMERIC_SECOND and second_lemma in content:
            content.remove(second_lemma)
    return content, expected


class BaselineReader:
    """Lexical span extractor; slot a neural reader in via the same contract."""

    def __init__(self, lexicon: Lexicon | None = None,
                 idf: Callable[[str], float] | None = None):
        self.lexicon = lexicon or default_lexicon()
        self.idf = idf or (lambda term: 1.0)

    def read(self, question: str, passage_id: str, passage: Passage) -> list[AnswerSpan]:
        lex = self.lexicon
        q_terms, expected = question_profile(question, lex)
        if not q_terms or not passage.text.strip():
            return []
        q_set = set(q_terms)
        # Sorted iteration keeps float sums independent of set hash order,
        # so scores are bit-identical across processes.
        q_mass = sum(self.idf(t) for t in sorted(q_set))
        if q_mass <= 0.0:
            return []

        sentences = lex.sentences(passage.text)
        covers = []
        for sent in sentences:
            lemmas = {t.lemma_key for t in lex.tokenize(sent.text)}
            covers.append(sum(self.idf(t) for t in sorted(q_set & lemmas)))
        if not covers or max(covers) <= 0.0:
            return []
        best_i = covers.index(max(covers))

        candidates: dict[tuple[int, int], float] = {}
        for si in (best_i, best_i + 1):
            if si >= len(sentences):
                continue
            sent = sentences[si]
            raw_base = covers[best_i] / q_mass
            if si != best_i:
                raw_base *= ADJACENT_SENTENCE_FACTOR
            tokens = lex.tokenize(sent.text)
            for start, end, kind in _candidate_runs(tokens, q_set):
                span_tokens = tokens[start:end]
                bonus = _span_bonus(expected, kind, span_tokens)
                raw = raw_base * bonus
                cs = sent.char_start + span_tokens[0].char_start
                ce = sent.char_start + span_tokens[-1].char_end
                key = (cs, ce)
                score = squash(raw)
                if candidates.get(key, 0.0) < score:
                    candidates[key] = score

        spans = [
            AnswerSpan(
                text=passage.text[cs:ce],
                passage_id=passage_id,
                doc_id=passage.doc_id,
                char_start=cs,
                char_end=ce,
                score=score,
            )
            for (cs, ce), score in candidates.items()
        ]
        # Ties: earliest span first, longer span preferred (keeps units with
        # their numbers, e.g. "90 sols" over "90").
        spans.sort(key=lambda s: (-s.score, s.char_start, -(s.char_end - s.char_start)))
        return spans[:MAX_SPANS_PER_PASSAGE]


def _candidate_runs(tokens: Sequence[Token], q_set: set[str]):
    """(start, end, kind) candidate token runs; never contain question terms."""
    n = len(tokens)
    blocked = [t.lemma_key in q_set for t in tokens]

    def salient(i: int) -> bool:
        t = tokens[i]
        if blocked[i] or t.is_stopword:
            return False
        if t.is_numeric or (t.surface.isupper() and len(t.surface) >= 2):
            return True
        return t.surface[:1].isupper() and i > 0

    runs = []

    # Entity runs: maximal runs of salient tokens.
    i = 0
    while i < n:
        if salient(i):
            j = i
            while j < n and salient(j):
                j += 1
            if j - i <= MAX_SPAN_TOKENS:
                runs.append((i, j, "entity"))
            i = j
        else:
            i += 1

    # Chunk runs: maximal runs of non-stopword, non-question tokens.
    i = 0
    while i < n:
        if not blocked[i] and not tokens[i].is_stopword:
            j = i
            while j < n and not blocked[j] and not tokens[j].is_stopword:
                j += 1
            if j - i <= MAX_SPAN_TOKENS:
                runs.append((i, j, "chunk"))
            i = j
        else:
            i += 1

    # Copula complement and subject.
    for ci, t in enumerate(tokens):
        if t.key in _COPULAS:
            comp_start = ci + 1
            while comp_start < n and tokens[comp_start].is_stopword:
                comp_start += 1
            comp_end = n
            if comp_start < comp_end and comp_end - comp_start <= MAX_SPAN_TOKENS:
                if not any(blocked[comp_start:comp_end]):
                    runs.append((comp_start, comp_end, "complement"))
            subj_start = 0
            while subj_start < ci and tokens[subj_start].is_stopword:
                subj_start += 1
            if subj_start < ci and ci - subj_start <= MAX_SPAN_TOKENS:
                if not any(blocked[subj_start:ci]):
                    runs.append((subj_start, ci, "subject"))
            break

    seen = set()
    for start, end, kind in runs:
        if start >= end or (start, end, kind) in seen:
            continue
        seen.add((start, end, kind))
        yield start, end, kind


def _span_bonus(expected: str, kind: str, span_tokens: Sequence[Token]) -> float:
    has_numeric = any(t.is_numeric for t in span_tokens)
    if expected == "numeric":
        return BONUS_TYPE_MATCH if has_numeric else BONUS_TYPE_MISMATCH
    if expected == "entity":
        return BONUS_TYPE_MATCH if kind == "entity" else BONUS_TYPE_MISMATCH
    if expected == "method":
        return BONUS_ENTITY_DEFAULT if kind != "entity" else 0.85
    if kind == "entity":
        return BONUS_ENTITY_DEFAULT
    return BONUS_CHUNK_DEFAULT


# -- pipeline ---------------------------------------------------------------


def retrieve_passages(
    index: Index,
    question: str,
    passages: dict[str, Passage],
    k: int = DEFAULT_TOP_K,
    scope: str | None = None,
    scorer: str = "bm25",
) -> list[Hit]:
    """Top-k passage hits; ``scope`` restricts ranking to one document."""
    allowed = None
    if scope is not None:
        allowed = [pid for pid, p in passages.items() if p.doc_id == scope]
        if not allowed:
            raise UnknownDocumentError(scope)
    result = search(index, question, k=k, scorer=scorer, allowed_units=allowed)
    return list(result.hits)


@dataclass
class QAPipeline:
    index: Index
    passages: dict[str, Passage]
    reader: Reader
    lexicon: Lexicon = field(default_factory=default_lexicon)
    threshold: float = DEFAULT_THRESHOLD
    top_k: int = DEFAULT_TOP_K

    def answer_question(
        self,
        question: str,
        k: int | None = None,
        threshold: float | None = None,
        scope: str | None = None,
    ) -> QAResult:
        k = k if k is not None else self.top_k
        threshold = threshold if threshold is not None else self.threshold
        hits = retrieve_passages(self.index, question, self.passages, k=k, scope=scope)
        # Textual dedup keeps the max-scoring copy; order falls back to the
        # deterministic (hit rank, reader rank) discovery order on ties.
        best: dict[str, AnswerSpan] = {}
        first_seen: dict[str, int] = {}
        counter = 0
        for hit in hits:
            passage = self.passages[hit.unit_id]
            for span in self.reader.read(question, hit.unit_id, passage):
                key = span.text.strip().casefold()
                if not key:
                    continue
                if key not in best:
                    best[key] = span
                    first_seen[key] = counter
                    counter += 1
                elif span.score > best[key].score:
                    best[key] = span
        ordered = [
            span
            for _, span in sorted(
                best.items(), key=lambda kv: (-kv[1].score, first_seen[kv[0]])
            )
        ]
        primary = tuple(s for s in ordered if s.score >= threshold)
        low = tuple(s for s in ordered if s.score < threshold)
        return QAResult(
            question=question,
            primary_answers=primary,
            low_confidence_answers=low,
            no_answer=not primary and not low,
            threshold=threshold,
        )


# -- reader evaluation --------------------------------------------------------


@dataclass(frozen=True)
class TokenMetrics:
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def token_f1(predicted: str, gold: str, lexicon: Lexicon | None = None) -> TokenMetrics:
    """Token-multiset precision/recall/F1 between two spans (case-folded)."""
    lexicon = lexicon or default_lexicon()
    if not gold.strip():
        raise QAError("gold span must be non-empty")
    pred_tokens = Counter(t.key for t in lexicon.tokenize(predicted))
    gold_tokens = Counter(t.key for t in lexicon.tokenize(gold))
    overlap = sum((pred_tokens & gold_tokens).values())
    p = overlap / sum(pred_tokens.values()) if pred_tokens else 0.0
    r = overlap / sum(gold_tokens.values()) if gold_tokens else 0.0
    f1 = 2 * p * r / (p + r) if (p + r) > 0 else 0.0
    return TokenMetrics(precision=p, recall=r, f1=f1)


def eval_reader(
    pairs: Sequence[tuple[str, str]],
    lexicon: Lexicon | None = None,
) -> TokenMetrics:
    """Macro-averaged token metrics over (predicted, gold) span pairs."""
    if not pairs:
        raise QAError("no prediction pairs to evaluate")
    metrics = [token_f1(pred, gold, lexicon=lexicon) for pred, gold in pairs]
    n = len(metrics)
    return TokenMetrics(
        precision=sum(m.precision for m in metrics) / n,
        recall=sum(m.recall for m in metrics) / n,
        f1=sum(m.f1 for m in metrics) / n,
    )


def load_qa_testset(path: Path | str) -> list[tuple[str, str, str]]:
    """QA testset lines: ``question<TAB>gold_answer<TAB>gold_passage_id``."""
    out = []
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise QAError(f"{path}:{i}: expected question<TAB>answer<TAB>passage_id")
        out.append((parts[0], parts[1], parts[2]))
    return out
