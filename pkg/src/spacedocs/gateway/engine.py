"""Engine state: collections, graph, indexes, sessions, and feedback.

The engine is built once from a :class:`Config` and then serves reads
concurrently; mutations (quiz session writes, feedback) are serialized by
a lock and persisted to ``data_dir`` so they survive restarts. Index
rebuilds produce a fresh object swapped in atomically, so readers never
see a half-built index.
"""

from __future__ import annotations

import json
import random
import threading
import time
import uuid
from pathlib import Path
from typing import Sequence

from .. import novelty as nov
from ..corpus import (
    DocumentCollection,
    Passage,
    SegmentationRules,
    load_corpus,
    passage_index_ids,
    segment_report,
    window_passages,
)
from ..index import IndexUnit, build_index
from ..kgraph import KnowledgeGraph, MetadataExtractor, annotate, load_graph
from ..lexicon import default_lexicon
from ..qa import BaselineReader, QAPipeline, QAResult
from ..quizgen import (
    QuestionCandidate,
    QuizError,
    assemble_quiz,
    load_templates,
    run_pipeline,
)
from ..termgap import CorpusStats, EnrichmentReport, gap_report, load_general_stats
from .config import Config


class EngineError(Exception):
    pass


class NotFoundError(EngineError):
    pass


def canonical_json(payload) -> bytes:
    """The single serialization used for CLI files and HTTP bodies."""
    return json.dumps(
        payload, ensure_ascii=False, allow_nan=False, separators=(",", ":")
    ).encode("utf-8")


class Engine:
    def __init__(self, config: Config):
        self.config = config
        self.lexicon = default_lexicon()
        self._lock = threading.Lock()
        self.stale = False

        self.corpus = load_corpus(config.corpus_path, label="general")
        self.kg: KnowledgeGraph = load_graph(config.kg_path, lexicon=self.lexicon)
        self.general_stats: CorpusStats | None = (
            load_general_stats(config.general_stats_path)
            if config.general_stats_path
            else None
        )
        self.templates = (
            load_templates(config.templates_path) if config.templates_path else load_templates()
        )
        self.rules = (
            SegmentationRules.from_file(config.segmentation_rules_path)
            if config.segmentation_rules_path
            else SegmentationRules()
        )
        self.predefined = _load_question_list(config.predefined_questions_path)

        self.collections = {
            source: DocumentCollection(
                [d for d in self.corpus if d.source == source], label=source
            )
            for source in ("idea", "study", "project", "report", "paper")
        }

        # Passages: segmented reports (fall back to fixed windows when a
        # report has no recognizable structure).
        passages: list[Passage] = []
        self.segmented: dict[str, object] = {}
        for doc in self.collections["report"]:
            seg = segment_report(doc, self.rules)
            self.segmented[doc.id] = seg
            if seg.passages:
                passages.extend(seg.passages)
            else:
                passages.extend(window_passages(doc, config.window_chars))
        self.passages: dict[str, Passage] = passage_index_ids(passages)

        self._build_indexes()

        # Annotation + metadata over the whole corpus.
        mention_map = {doc.id: annotate(doc, self.kg) for doc in self.corpus}
        self.extractor = MetadataExtractor(self.kg, top_k=config.metadata_top_k).fit(
            mention_map.values()
        )
        self.mentions = mention_map
        self.metadata = {
            doc.id: self.extractor.extract(doc, mention_map[doc.id])
            for doc in self.corpus
        }
        self.profiles = nov.profiles_from_metadata(self.metadata, self.doc_index)

        self.reader = BaselineReader(self.lexicon, idf=self._passage_idf)
        self.qa = (
            QAPipeline(
                index=self.passage_index,
                passages=self.passages,
                reader=self.reader,
                lexicon=self.lexicon,
                threshold=config.qa_threshold,
                top_k=config.retrieval_k,
            )
            if self.passage_index is not None
            else None
        )

        self.data_dir = Path(config.data_dir)
        (self.data_dir / "sessions").mkdir(parents=True, exist_ok=True)
        self.feedback_path = self.data_dir / "feedback.jsonl"

    # -- indexes --------------------------------------------------------------

    def _build_indexes(self) -> None:
        passage_units = [
            IndexUnit(unit_id=pid, fields={"text": p.text})
            for pid, p in self.passages.items()
        ]
        doc_units = [
            IndexUnit(unit_id=d.id, fields={"text": f"{d.title}\n{d.body}"})
            for d in self.corpus
        ]
        new_passage_index = (
            build_index(passage_units, k1=self.config.bm25_k1, b=self.config.bm25_b,
                        lexicon=self.lexicon)
            if passage_units
            else None
        )
        new_doc_index = build_index(
            doc_units, k1=self.config.bm25_k1, b=self.config.bm25_b, lexicon=self.lexicon
        )
        # Atomic swap: readers hold either the old pair or the new one.
        self.passage_index = new_passage_index
        self.doc_index = new_doc_index
        self.stale = False

    def rebuild_indexes(self) -> None:
        """Rebuild both indexes and swap them in atomically.

        Readers keep whatever index object they grabbed; new requests see
        the fresh pair. The QA pipeline is re-pointed in the same swap.
        """
        self._build_indexes()
        if self.qa is not None and self.passage_index is not None:
            self.qa.index = self.passage_index

    def _passage_idf(self, term: str) -> float:
        if self.passage_index is None:
            return 1.0
        return max(self.passage_index.bm25_idf("text", term), 0.0)

    # -- QA --------------------------------------------------------------------

    def ask(
        self,
        question: str,
        k: int | None = None,
        scope: str | None = None,
        threshold: float | None = None,
    ) -> QAResult:
        if self.qa is None:
            raise EngineError("no report passages indexed; cannot answer questions")
        return self.qa.answer_question(question, k=k, threshold=threshold, scope=scope)

    # -- documents ---------------------------------------------------------------

    def document_list(self) -> dict:
        return {
            "documents": [
                {
                    "id": d.id,
                    "source": d.source,
                    "title": d.title,
                    "date": d.date.isoformat() if d.date else None,
                }
                for d in self.corpus
            ]
        }

    def document(self, doc_id: str) -> dict:
        if doc_id not in self.corpus:
            raise NotFoundError(f"unknown document {doc_id!r}")
        d = self.corpus[doc_id]
        return {
            "id": d.id,
            "source": d.source,
            "title": d.title,
            "body": d.body,
            "date": d.date.isoformat() if d.date else None,
            "for_codes": list(d.fields_of_research),
            "keywords": list(d.keywords),
        }

    def passage(self, passage_id: str) -> dict:
        if passage_id not in self.passages:
            raise NotFoundError(f"unknown passage {passage_id!r}")
        p = self.passages[passage_id]
        return {
            "passage_id": passage_id,
            "doc_id": p.doc_id,
            "section_path": list(p.section_path),
            "text": p.text,
        }

    def snippets(self, n: int = 3, seed: int | None = None) -> dict:
        """Uniformly sampled passages to prompt question asking."""
        ids = sorted(self.passages)
        if not ids:
            return {"snippets": [], "seed": seed}
        rng = random.Random(seed)
        chosen = rng.sample(ids, k=min(n, len(ids)))
        return {
            "snippets": [
                {
                    "passage_id": pid,
                    "doc_id": self.passages[pid].doc_id,
                    "text": self.passages[pid].text.strip(),
                }
                for pid in chosen
            ],
            "seed": seed,
        }

    def predefined_questions(self) -> dict:
        return {"questions": list(self.predefined)}

    # -- quiz sessions --------------------------------------------------------------

    def quiz_create(self, doc_id: str, section_paths: Sequence[str] | None = None) -> dict:
        if doc_id not in self.corpus:
            raise NotFoundError(f"unknown document {doc_id!r}")
        selected = {
            pid: p
            for pid, p in self.passages.items()
            if p.doc_id == doc_id
            and (
                not section_paths
                or any(" / ".join(p.section_path).startswith(sp) for sp in section_paths)
            )
        }
        if not selected:
            raise NotFoundError(
                f"no passages for document {doc_id!r} matching the given sections"
            )
        candidates = run_pipeline(
            selected,
            self.kg,
            self.reader,
            templates=self.templates,
            dedup_threshold=self.config.dedup_threshold,
            min_score=self.config.quiz_min_score,
            lexicon=self.lexicon,
        )
        session_id = uuid.uuid4().hex[:12]
        state = {
            "session_id": session_id,
            "doc_id": doc_id,
            "section_paths": list(section_paths or []),
            "candidates": [c.to_dict() for c in candidates],
            "selection": [],
            "finalized": False,
            "rendered": None,
            "title": f"Quiz: {self.corpus[doc_id].title}",
        }
        with self._lock:
            self._write_session(state)
        return {"session_id": session_id, "candidates": state["candidates"]}

    def quiz_select(self, session_id: str, candidate_ids: Sequence[str]) -> dict:
        with self._lock:
            state = self._read_session(session_id)
            if state["finalized"]:
                raise EngineError(f"session {session_id} already finalized")
            known = {c["id"]: c for c in state["candidates"]}
            for cid in candidate_ids:
                if cid not in known:
                    raise NotFoundError(f"unknown candidate {cid!r}")
                if known[cid]["status"] != "validated":
                    raise QuizError(
                        f"candidate {cid} has status {known[cid]['status']}; "
                        "only validated candidates can be selected"
                    )
            state["selection"] = list(candidate_ids)
            self._write_session(state)
        return {"session_id": session_id, "selection": state["selection"]}

    def quiz_finalize(self, session_id: str) -> dict:
        with self._lock:
            state = self._read_session(session_id)
            if not state["selection"]:
                raise QuizError("cannot finalize: no candidates selected")
            by_id = {c["id"]: c for c in state["candidates"]}
            selected = [
                QuestionCandidate.from_dict(by_id[cid]) for cid in state["selection"]
            ]
            quiz, rendered = assemble_quiz(selected, state["title"], self.passages)
            state["finalized"] = True
            state["rendered"] = rendered
            self._write_session(state)
        return {"session_id": session_id, "quiz": quiz.to_dict(), "rendered": rendered}

    def quiz_session(self, session_id: str) -> dict:
        with self._lock:
            return self._read_session(session_id)

    def _session_path(self, session_id: str) -> Path:
        if not session_id.isalnum():
            raise NotFoundError(f"unknown session {session_id!r}")
        return self.data_dir / "sessions" / f"{session_id}.json"

    def _read_session(self, session_id: str) -> dict:
        path = self._session_path(session_id)
        if not path.exists():
            raise NotFoundError(f"unknown session {session_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def _write_session(self, state: dict) -> None:
        path = self._session_path(state["session_id"])
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(state, ensure_ascii=False, indent=1), encoding="utf-8")
        tmp.replace(path)

    # -- termgap ---------------------------------------------------------------------

    def termgap_report(self, pareto_fraction: float | None = None) -> EnrichmentReport:
        if self.general_stats is None:
            raise EngineError("no general_stats_path configured")
        return gap_report(
            self.corpus,
            self.kg,
            self.general_stats,
            pareto_fraction=pareto_fraction if pareto_fraction is not None else 0.20,
            lexicon=self.lexicon,
        )

    # -- novelty ----------------------------------------------------------------------

    def _novelty_ids(self) -> tuple[list[str], list[str], list[str]]:
        return (
            [d.id for d in self.collections["idea"]],
            [d.id for d in self.collections["study"]],
            [d.id for d in self.collections["project"]],
        )

    def novelty(self, idea_id: str) -> nov.NoveltyResult:
        ideas, studies, projects = self._novelty_ids()
        if idea_id not in self.corpus:
            raise NotFoundError(f"unknown idea {idea_id!r}")
        others = [i for i in ideas if i != idea_id]
        return nov.novelty_score(
            idea_id,
            self.profiles,
            others,
            studies,
            projects,
            top_n=self.config.novelty_top_similar,
        )

    def graph(self, min_sim: float | None = None) -> nov.SimilarityGraph:
        cutoff = min_sim if min_sim is not None else self.config.graph_min_sim
        ideas, studies, projects = self._novelty_ids()
        rows = [
            (doc_id, kind, self.corpus[doc_id].title)
            for kind, members in (
                ("idea", ideas),
                ("study", studies),
                ("project", projects),
            )
            for doc_id in members
        ]
        return nov.build_similarity_graph(self.profiles, rows, min_sim=cutoff)

    def clusters(self, min_sim: float | None = None, seed: int | None = None) -> dict:
        graph = self.graph(min_sim)
        partition = nov.louvain(
            graph, seed=seed if seed is not None else self.config.louvain_seed
        )
        rows = nov.cluster_topics(
            partition,
            self.metadata,
            label_fn=lambda cid: self.kg[cid].label if cid in self.kg else cid,
        )
        return {
            "clusters": [r.to_dict() for r in rows],
            "modularity": partition.modularity,
            "seed": partition.seed,
        }

    # -- feedback -----------------------------------------------------------------------

    def add_feedback(self, feature: str, payload: dict) -> dict:
        if feature not in ("qa", "quiz", "novelty"):
            raise EngineError(f"unknown feedback feature {feature!r}")
        record = {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "feature": feature,
            "payload": payload,
        }
        with self._lock:
            with self.feedback_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            count = sum(1 for _ in self.feedback_path.open(encoding="utf-8"))
        return {"stored": True, "index": count - 1, "record": record}

    def feedback_records(self) -> list[dict]:
        if not self.feedback_path.exists():
            return []
        return [
            json.loads(line)
            for line in self.feedback_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]


def _load_question_list(path: str) -> list[str]:
    if not path:
        return []
    return [
        line.strip()
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
