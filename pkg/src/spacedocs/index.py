"""Field-aware inverted index with BM25/TF-IDF scoring and retrieval metrics.

Terms are non-stopword lemma keys; unit length is the non-stopword token
count of the field. BM25 uses the reference formulation::

    idf(t) = ln(1 + (Nu - df + 0.5) / (df + 0.5))
    score  = sum_f w_f * sum_t idf_f(t) * tf (k1+1) / (tf + k1 (1 - b + b len/avglen))

TF-IDF scoring and unit-to-unit similarity are cosines over concatenated
field-weighted tf-idf vectors with ``idf = ln(1 + Nu / (1 + df))``.
"""

from __future__ import annotations

import json
import math
import struct
import zlib
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .lexicon import Lexicon, default_lexicon

MAGIC = b"SDIX"
FORMAT_VERSION = 1

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75

# Default per-field emphasis: body text plus the two metadata fields that
# drive document similarity; any other field contributes only when given
# an explicit weight.
DEFAULT_FIELD_WEIGHTS = {"text": 1.0, "main_lemmas": 2.0, "main_syncons": 2.0}


class IndexError_(Exception):
    """Index construction or lookup failure."""


@dataclass(frozen=True)
class IndexUnit:
    unit_id: str
    fields: dict[str, str]


@dataclass(frozen=True)
class Hit:
    unit_id: str
    score: float
    matched_terms: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "unit_id": self.unit_id,
            "score": self.score,
            "matched_terms": list(self.matched_terms),
        }


@dataclass(frozen=True)
class SearchResult:
    hits: tuple[Hit, ...]
    empty_query: bool = False

    def __iter__(self):
        return iter(self.hits)

    def __len__(self):
        return len(self.hits)

    def __getitem__(self, i):
        return self.hits[i]

    def to_dict(self) -> dict:
        return {"hits": [h.to_dict() for h in self.hits], "empty_query": self.empty_query}


class CosineSim(NamedTuple):
    value: float
    zero_vector: bool


class Index:
    def __init__(
        self,
        units: Sequence[IndexUnit],
        field_weights: dict[str, float] | None = None,
        k1: float = DEFAULT_K1,
        b: float = DEFAULT_B,
        lexicon: Lexicon | None = None,
    ):
        self.lexicon = lexicon or default_lexicon()
        self.k1 = k1
        self.b = b
        self.unit_ids: list[str] = []
        seen = set()
        for u in units:
            if u.unit_id in seen:
                raise IndexError_(f"duplicate unit id {u.unit_id!r}")
            seen.add(u.unit_id)
            self.unit_ids.append(u.unit_id)
        self.unit_count = len(self.unit_ids)

        field_names = sorted({f for u in units for f in u.fields})
        if field_weights is None:
            field_weights = DEFAULT_FIELD_WEIGHTS
        self.field_weights = {f: float(field_weights.get(f, 0.0)) for f in field_names}

        # postings[(field, term)] -> list[(unit_id, tf)] in unit order
        self.postings: dict[tuple[str, str], list[tuple[str, int]]] = {}
        self.unit_lengths: dict[str, dict[str, int]] = {f: {} for f in field_names}
        self.unit_terms: dict[str, dict[tuple[str, str], int]] = {}
        for u in units:
            self.unit_terms[u.unit_id] = {}
            for fname in field_names:
                text = u.fields.get(fname, "")
                terms = self.lexicon.content_lemmas(text)
                self.unit_lengths[fname][u.unit_id] = len(terms)
                for term, tf in sorted(Counter(terms).items()):
                    self.postings.setdefault((fname, term), []).append((u.unit_id, tf))
                    self.unit_terms[u.unit_id][(fname, term)] = tf
        self.doc_freq: dict[tuple[str, str], int] = {
            key: len(plist) for key, plist in self.postings.items()
        }
        self.avg_len: dict[str, float] = {}
        for fname in field_names:
            lengths = self.unit_lengths[fname]
            total = sum(lengths.values())
            self.avg_len[fname] = total / len(lengths) if lengths else 0.0

    # -- scoring -----------------------------------------------------------

    def bm25_idf(self, fname: str, term: str) -> float:
        df = self.doc_freq.get((fname, term), 0)
        return math.log(1.0 + (self.unit_count - df + 0.5) / (df + 0.5))

    def tfidf_idf(self, fname: str, term: str) -> float:
        df = self.doc_freq.get((fname, term), 0)
        return math.log(1.0 + self.unit_count / (1.0 + df))

    def _bm25_scores(self, terms: Sequence[str]) -> tuple[dict[str, float], dict[str, set]]:
        scores: dict[str, float] = {}
        matched: dict[str, set] = {}
        for fname, weight in self.field_weights.items():
            if weight == 0.0:
                continue
            avg = self.avg_len[fname]
            for term in terms:
                plist = self.postings.get((fname, term))
                if not plist:
                    continue
                idf = self.bm25_idf(fname, term)
                for unit_id, tf in plist:
                    length = self.unit_lengths[fname][unit_id]
                    norm = 1.0 - self.b + self.b * (length / avg if avg else 0.0)
                    partial = idf * tf * (self.k1 + 1.0) / (tf + self.k1 * norm)
                    scores[unit_id] = scores.get(unit_id, 0.0) + weight * partial
                    matched.setdefault(unit_id, set()).add(term)
        return scores, matched

    def unit_vector(self, unit_id: str, fields: Sequence[str] | None = None) -> dict[tuple[str, str], float]:
        if unit_id not in self.unit_terms:
            raise IndexError_(f"unit {unit_id!r} not indexed")
        use = set(fields) if fields is not None else set(self.field_weights)
        vec: dict[tuple[str, str], float] = {}
        for (fname, term), tf in self.unit_terms[unit_id].items():
            if fname not in use:
                continue
            weight = self.field_weights.get(fname, 0.0)
            if weight == 0.0:
                continue
            vec[(fname, term)] = weight * tf * self.tfidf_idf(fname, term)
        return vec

    def _tfidf_scores(self, terms: Sequence[str]) -> tuple[dict[str, float], dict[str, set]]:
        qtf = Counter(terms)
        qvec: dict[tuple[str, str], float] = {}
        for fname, weight in self.field_weights.items():
            if weight == 0.0:
                continue
            for term, tf in qtf.items():
                qvec[(fname, term)] = weight * tf * self.tfidf_idf(fname, term)
        qnorm = math.sqrt(sum(v * v for v in qvec.values()))
        if qnorm == 0.0:
            return {}, {}
        dots: dict[str, float] = {}
        matched: dict[str, set] = {}
        for (fname, term), qv in qvec.items():
            plist = self.postings.get((fname, term))
            if not plist:
                continue
            idf = self.tfidf_idf(fname, term)
            weight = self.field_weights[fname]
            for unit_id, tf in plist:
                dots[unit_id] = dots.get(unit_id, 0.0) + qv * (weight * tf * idf)
                matched.setdefault(unit_id, set()).add(term)
        scores = {}
        for unit_id, dot in dots.items():
            unorm = self._unit_norm(unit_id)
            if unorm > 0.0:
                scores[unit_id] = dot / (qnorm * unorm)
        return scores, matched

    def _unit_norm(self, unit_id: str) -> float:
        vec = self.unit_vector(unit_id)
        return math.sqrt(sum(v * v for v in vec.values()))

    # -- persistence ---------------------------------------------------------

    def to_bytes(self) -> bytes:
        payload = {
            "k1": self.k1,
            "b": self.b,
            "unit_ids": self.unit_ids,
            "field_weights": self.field_weights,
            "unit_lengths": self.unit_lengths,
            "postings": {
                f"{fname}\t{term}": plist
                for (fname, term), plist in sorted(self.postings.items())
            },
        }
        raw = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
        body = zlib.compress(raw, 9)
        return MAGIC + struct.pack(">H", FORMAT_VERSION) + body

    def save(self, path: Path | str) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def from_bytes(cls, blob: bytes, lexicon: Lexicon | None = None) -> "Index":
        if blob[:4] != MAGIC:
            raise IndexError_("not an index file (bad magic)")
        (version,) = struct.unpack(">H", blob[4:6])
        if version != FORMAT_VERSION:
            raise IndexError_(f"unsupported index format version {version}")
        payload = json.loads(zlib.decompress(blob[6:]).decode("utf-8"))
        idx = cls.__new__(cls)
        idx.lexicon = lexicon or default_lexicon()
        idx.k1 = payload["k1"]
        idx.b = payload["b"]
        idx.unit_ids = list(payload["unit_ids"])
        idx.unit_count = len(idx.unit_ids)
        idx.field_weights = dict(payload["field_weights"])
        idx.unit_lengths = {
            f: dict(lengths) for f, lengths in payload["unit_lengths"].items()
        }
        idx.postings = {}
        idx.unit_terms = {uid: {} for uid in idx.unit_ids}
        for key, plist in payload["postings"].items():
            fname, term = key.split("\t", 1)
            idx.postings[(fname, term)] = [(uid, tf) for uid, tf in plist]
            for uid, tf in plist:
                idx.unit_terms[uid][(fname, term)] = tf
        idx.doc_freq = {key: len(plist) for key, plist in idx.postings.items()}
        idx.avg_len = {}
        for fname, lengths in idx.unit_lengths.items():
            total = sum(lengths.values())
            idx.avg_len[fname] = total / len(lengths) if lengths else 0.0
        return idx

    @classmethod
    def load(cls, path: Path | str, lexicon: Lexicon | None = None) -> "Index":
        return cls.from_bytes(Path(path).read_bytes(), lexicon=lexicon)


def build_index(
    units: Sequence[IndexUnit],
    field_weights: dict[str, float] | None = None,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
    lexicon: Lexicon | None = None,
) -> Index:
    if not units:
        raise IndexError_("cannot build an index over zero units")
    return Index(units, field_weights=field_weights, k1=k1, b=b, lexicon=lexicon)


def search(
    index: Index,
    query: str,
    k: int = 10,
    scorer: str = "bm25",
    allowed_units: Iterable[str] | None = None,
) -> SearchResult:
    """Top-k units for the query; deterministic (score desc, unit id asc)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = index.lexicon.content_lemmas(query)
    if not terms:
        return SearchResult(hits=(), empty_query=True)
    if scorer == "bm25":
        scores, matched = index._bm25_scores(terms)
    elif scorer == "tfidf":
        scores, matched = index._tfidf_scores(terms)
    else:
        raise ValueError(f"unknown scorer {scorer!r}")
    if allowed_units is not None:
        allowed = set(allowed_units)
        scores = {u: s for u, s in scores.items() if u in allowed}
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    hits = tuple(
        Hit(unit_id=u, score=s, matched_terms=tuple(sorted(matched[u])))
        for u, s in ranked
    )
    return SearchResult(hits=hits, empty_query=False)


def cosine_similarity(
    index: Index,
    a: str,
    b: str,
    fields: Sequence[str] | None = None,
) -> CosineSim:
    """Cosine between two indexed units over field-weighted tf-idf vectors."""
    va = index.unit_vector(a, fields)
    vb = index.unit_vector(b, fields)
    return cosine_of_vectors(va, vb)


def cosine_of_vectors(va: dict, vb: dict) -> CosineSim:
    na = math.sqrt(sum(v * v for v in va.values()))
    nb = math.sqrt(sum(v * v for v in vb.values()))
    if na == 0.0 or nb == 0.0:
        return CosineSim(0.0, zero_vector=True)
    if len(va) > len(vb):
        va, vb = vb, va
    dot = sum(v * vb.get(key, 0.0) for key, v in va.items())
    value = dot / (na * nb)
    return CosineSim(min(max(value, 0.0), 1.0), zero_vector=False)


@dataclass(frozen=True)
class RetrievalMetrics:
    recall_at_k: float
    mrr_at_k: float
    accuracy_at_k: float
    k: int
    queries: int

    def to_dict(self) -> dict:
        return {
            "recall_at_k": self.recall_at_k,
            "mrr_at_k": self.mrr_at_k,
            "accuracy_at_k": self.accuracy_at_k,
            "k": self.k,
            "queries": self.queries,
        }


def eval_retrieval(
    index: Index,
    testset: Sequence[tuple[str, Sequence[str]]],
    k: int = 10,
    scorer: str = "bm25",
) -> RetrievalMetrics:
    """Macro-averaged R@k, MRR@k, and accuracy@k over the test set."""
    if not testset:
        raise IndexError_("empty test set")
    all_units = {uid for lengths in index.unit_lengths.values() for uid in lengths}
    recalls, rrs, accs = [], [], []
    for query, gold in testset:
        gold_set = set(gold)
        if not gold_set:
            raise IndexError_(f"query {query!r} has no gold units")
        missing = gold_set - all_units
        if missing:
            raise IndexError_(f"gold unit(s) not indexed: {sorted(missing)}")
        top = [h.unit_id for h in search(index, query, k=k, scorer=scorer).hits]
        hit_ranks = [r for r, uid in enumerate(top, 1) if uid in gold_set]
        recalls.append(len(set(top) & gold_set) / len(gold_set))
        rrs.append(1.0 / hit_ranks[0] if hit_ranks else 0.0)
        accs.append(1.0 if hit_ranks else 0.0)
    n = len(testset)
    return RetrievalMetrics(
        recall_at_k=sum(recalls) / n,
        mrr_at_k=sum(rrs) / n,
        accuracy_at_k=sum(accs) / n,
        k=k,
        queries=n,
    )


def load_testset(path: Path | str) -> list[tuple[str, list[str]]]:
    """Testset lines: ``query<TAB>gold_id1|gold_id2|...``."""
    out = []
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise IndexError_(f"{path}:{i}: expected 'query<TAB>ids'")
        ids = [x for x in parts[1].split("|") if x]
        if not ids:
            raise IndexError_(f"{path}:{i}: no gold ids")
        out.append((parts[0], ids))
    return out
