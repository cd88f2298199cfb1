"""Mini lexico-semantic knowledge graph: gazetteer annotation + metadata.

The graph file is UTF-8 TSV with two record kinds::

    concept<TAB>id<TAB>lemma1|lemma2|...<TAB>entity_type<TAB>dom1|dom2<TAB>gloss
    rel<TAB>kind<TAB>src_id<TAB>dst_id

Annotation is greedy leftmost-longest matching of lemma sequences
(phrases beat single lemmas), with a two-pass domain vote for ambiguous
lemmas: unambiguous mentions vote for their concept's domains, ambiguous
mentions resolve to the candidate whose domains collect the most votes,
ties broken by lowest concept id.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Document, DocumentCollection
from .lexicon import Lexicon, default_lexicon

ENTITY_TYPES = ("none", "person", "place", "organization")
RELATION_KINDS = ("hypernym", "hyponym", "synonym", "related")
_INVERSE = {"hypernym": "hyponym", "hyponym": "hypernym", "synonym": "synonym"}


class GraphError(Exception):
    """Structural violation in a knowledge-graph file or edit."""


@dataclass(frozen=True)
class Concept:
    id: str
    lemmas: tuple[str, ...]
    entity_type: str = "none"
    domains: tuple[str, ...] = ()
    gloss: str = ""
    relations: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.id:
            raise GraphError("concept id must be non-empty")
        if not self.lemmas:
            raise GraphError(f"concept {self.id}: empty lemma list")
        if self.entity_type not in ENTITY_TYPES:
            raise GraphError(f"concept {self.id}: bad entity_type {self.entity_type!r}")
        for kind, _ in self.relations:
            if kind not in RELATION_KINDS:
                raise GraphError(f"concept {self.id}: bad relation kind {kind!r}")

    @property
    def label(self) -> str:
        return self.lemmas[0]


class KnowledgeGraph:
    """Immutable concept store with a longest-first lemma index."""

    def __init__(self, concepts: Iterable[Concept], lexicon: Lexicon | None = None):
        self.lexicon = lexicon or default_lexicon()
        self.concepts: dict[str, Concept] = {}
        for c in concepts:
            if c.id in self.concepts:
                raise GraphError(f"duplicate concept id {c.id!r}")
            self.concepts[c.id] = c
        self._validate_targets()
        self.concepts = _repair_relations(self.concepts)
        # lemma-sequence -> sorted concept ids; head lemma -> entries longest-first
        self.phrase_index: dict[tuple[str, ...], list[str]] = {}
        for c in self.concepts.values():
            for lemma in c.lemmas:
                key = self._phrase_key(lemma)
                if not key:
                    continue
                ids = self.phrase_index.setdefault(key, [])
                if c.id not in ids:
                    ids.append(c.id)
        for ids in self.phrase_index.values():
            ids.sort()
        self.lemma_index: dict[str, list[tuple[tuple[str, ...], list[str]]]] = {}
        for key, ids in self.phrase_index.items():
            self.lemma_index.setdefault(key[0], []).append((key, ids))
        for entries in self.lemma_index.values():
            entries.sort(key=lambda e: (-len(e[0]), e[0]))

    def _phrase_key(self, lemma: str) -> tuple[str, ...]:
        return tuple(t.lemma_key for t in self.lexicon.tokenize(lemma))

    def _validate_targets(self):
        for c in self.concepts.values():
            for kind, target in c.relations:
                if target not in self.concepts:
                    raise GraphError(
                        f"concept {c.id}: relation {kind} targets missing id {target!r}"
                    )

    def __len__(self) -> int:
        return len(self.concepts)

    def __contains__(self, concept_id: str) -> bool:
        return concept_id in self.concepts

    def __getitem__(self, concept_id: str) -> Concept:
        return self.concepts[concept_id]

    def knows_phrase(self, key: tuple[str, ...]) -> bool:
        return key in self.phrase_index


def _repair_relations(concepts: dict[str, Concept]) -> dict[str, Concept]:
    """Make synonym edges symmetric and hypernym/hyponym mutually inverse."""
    extra: dict[str, set[tuple[str, str]]] = {cid: set() for cid in concepts}
    for c in concepts.values():
        for kind, target in c.relations:
            inverse = _INVERSE.get(kind)
            if inverse and (inverse, c.id) not in concepts[target].relations:
                extra[target].add((inverse, c.id))
    out = {}
    for cid, c in concepts.items():
        if extra[cid]:
            merged = tuple(sorted(set(c.relations) | extra[cid]))
            out[cid] = replace(c, relations=merged)
        else:
            out[cid] = c
    return out


def load_graph(path: Path | str, lexicon: Lexicon | None = None) -> KnowledgeGraph:
    concepts: dict[str, Concept] = {}
    relations: list[tuple[int, str, str, str]] = []
    for ln, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        kind = parts[0]
        if kind == "concept":
            if len(parts) != 6:
                raise GraphError(f"line {ln}: concept record needs 6 fields")
            _, cid, lemmas, entity_type, domains, gloss = parts
            if cid in concepts:
                raise GraphError(f"line {ln}: duplicate concept id {cid!r}")
            lemma_list = tuple(x.strip() for x in lemmas.split("|") if x.strip())
            if not lemma_list:
                raise GraphError(f"line {ln}: concept {cid}: empty lemma list")
            concepts[cid] = Concept(
                id=cid,
                lemmas=lemma_list,
                entity_type=entity_type or "none",
                domains=tuple(x.strip() for x in domains.split("|") if x.strip()),
                gloss=gloss,
            )
        elif kind == "rel":
            if len(parts) != 4:
                raise GraphError(f"line {ln}: rel record needs 4 fields")
            relations.append((ln, parts[1], parts[2], parts[3]))
        else:
            raise GraphError(f"line {ln}: unknown record kind {kind!r}")
    by_src: dict[str, list[tuple[str, str]]] = {}
    for ln, rkind, src, dst in relations:
        if src not in concepts:
            raise GraphError(f"line {ln}: relation source {src!r} not defined")
        if dst not in concepts:
            raise GraphError(f"line {ln}: relation target {dst!r} not defined")
        if rkind not in RELATION_KINDS:
            raise GraphError(f"line {ln}: unknown relation kind {rkind!r}")
        by_src.setdefault(src, []).append((rkind, dst))
    final = [
        replace(c, relations=tuple(sorted(set(by_src.get(cid, [])))))
        for cid, c in concepts.items()
    ]
    return KnowledgeGraph(final, lexicon=lexicon)


def add_concepts(kg: KnowledgeGraph, additions: Sequence[Concept]) -> KnowledgeGraph:
    """Return a new graph with the additions merged in.

    Re-adding an identical concept is a no-op; an id collision with
    different content is an error.
    """
    merged = dict(kg.concepts)
    for c in additions:
        existing = merged.get(c.id)
        if existing is not None and _strip_relations(existing) != _strip_relations(c):
            raise GraphError(f"concept id {c.id!r} already present with different content")
        if existing is not None:
            merged[c.id] = replace(
                existing, relations=tuple(sorted(set(existing.relations) | set(c.relations)))
            )
        else:
            merged[c.id] = c
    return KnowledgeGraph(merged.values(), lexicon=kg.lexicon)


def _strip_relations(c: Concept) -> tuple:
    return (c.id, c.lemmas, c.entity_type, c.domains, c.gloss)


# -- annotation -----------------------------------------------------------


@dataclass(frozen=True)
class ConceptMention:
    concept_id: str
    char_start: int
    char_end: int
    matched_lemma: str
    ambiguous_alternatives: tuple[str, ...] = ()


def annotate(doc: Document | str, kg: KnowledgeGraph) -> list[ConceptMention]:
    """Greedy longest-match concept mentions over the document body."""
    text = doc.body if isinstance(doc, Document) else doc
    tokens = kg.lexicon.tokenize(text)
    keys = [t.lemma_key for t in tokens]

    sites: list[tuple[int, int, tuple[str, ...], list[str]]] = []
    i = 0
    n = len(tokens)
    while i < n:
        entries = kg.lemma_index.get(keys[i])
        match = None
        if entries:
            for phrase, ids in entries:  # longest-first
                L = len(phrase)
                if i + L <= n and tuple(keys[i : i + L]) == phrase:
                    match = (phrase, ids)
                    break
        if match is None:
            i += 1
            continue
        phrase, ids = match
        sites.append((i, len(phrase), phrase, ids))
        i += len(phrase)

    votes: Counter = Counter()
    for _, _, _, ids in sites:
        if len(ids) == 1:
            for dom in kg[ids[0]].domains:
                votes[dom] += 1

    mentions = []
    for start_tok, length, phrase, ids in sites:
        if len(ids) == 1:
            chosen = ids[0]
        else:
            chosen = max(
                ids,
                key=lambda cid: (sum(votes[d] for d in kg[cid].domains), _NegStr(cid)),
            )
        mentions.append(
            ConceptMention(
                concept_id=chosen,
                char_start=tokens[start_tok].char_start,
                char_end=tokens[start_tok + length - 1].char_end,
                matched_lemma=" ".join(phrase),
                ambiguous_alternatives=tuple(c for c in ids if c != chosen),
            )
        )
    return mentions


class _NegStr:
    """Order-reversing wrapper so max() prefers the lowest concept id."""

    __slots__ = ("s",)

    def __init__(self, s: str):
        self.s = s

    def __lt__(self, other: "_NegStr") -> bool:
        return self.s > other.s

    def __eq__(self, other) -> bool:
        return isinstance(other, _NegStr) and self.s == other.s


# -- metadata extraction ---------------------------------------------------


TEN_FIELDS = (
    "domains",
    "organizations",
    "people",
    "places",
    "known_concepts",
    "unknown_concepts",
    "main_syncons",
    "main_groups",
    "main_lemmas",
    "main_sentences",
)

RankedList = list[tuple[str, float]]


@dataclass(frozen=True)
class DocumentMetadata:
    domains: RankedList = field(default_factory=list)
    organizations: RankedList = field(default_factory=list)
    people: RankedList = field(default_factory=list)
    places: RankedList = field(default_factory=list)
    known_concepts: RankedList = field(default_factory=list)
    unknown_concepts: RankedList = field(default_factory=list)
    main_syncons: RankedList = field(default_factory=list)
    main_groups: RankedList = field(default_factory=list)
    main_lemmas: RankedList = field(default_factory=list)
    main_sentences: RankedList = field(default_factory=list)

    def to_dict(self) -> dict:
        return {name: [[k, v] for k, v in getattr(self, name)] for name in TEN_FIELDS}


def _ranked(counter: Mapping[str, float], limit: int | None = None) -> RankedList:
    items = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    return items[:limit] if limit is not None else items


class MetadataExtractor:
    """Derives the ten per-document metadata fields from annotations.

    ``fit`` computes collection-level concept document frequencies so that
    main_syncons can be scored frequency x IDF; an unfitted extractor uses
    IDF = 1 everywhere.
    """

    def __init__(self, kg: KnowledgeGraph, top_k: int = 10, mwe_min_count: int = 2):
        self.kg = kg
        self.lexicon = kg.lexicon
        self.top_k = top_k
        self.mwe_min_count = mwe_min_count
        self._idf: dict[str, float] | None = None

    def fit(self, mention_sets: Iterable[Sequence[ConceptMention]]) -> "MetadataExtractor":
        import math

        df: Counter = Counter()
        n_docs = 0
        for mentions in mention_sets:
            n_docs += 1
            for cid in {m.concept_id for m in mentions}:
                df[cid] += 1
        self._idf = {
            cid: math.log(1.0 + n_docs / (1.0 + d)) for cid, d in df.items()
        }
        self._idf_default = math.log(1.0 + n_docs) if n_docs else 1.0
        return self

    def idf(self, concept_id: str) -> float:
        if self._idf is None:
            return 1.0
        return self._idf.get(concept_id, self._idf_default)

    def extract(self, doc: Document, mentions: Sequence[ConceptMention]) -> DocumentMetadata:
        kg = self.kg
        text = doc.body
        tokens = self.lexicon.tokenize(text)

        concept_counts: Counter = Counter(m.concept_id for m in mentions)
        domain_votes: Counter = Counter()
        for m in mentions:
            for dom in kg[m.concept_id].domains:
                domain_votes[dom] += 1

        entity_counts = {"person": Counter(), "place": Counter(), "organization": Counter()}
        for cid, cnt in concept_counts.items():
            etype = kg[cid].entity_type
            if etype in entity_counts:
                entity_counts[etype][kg[cid].label] += cnt

        covered = _covered_mask(tokens, mentions)
        lemma_counts: Counter = Counter(
            t.lemma_key for t in tokens if not t.is_stopword
        )
        unknown_lemmas: Counter = Counter()
        for t, is_covered in zip(tokens, covered):
            if t.is_stopword or is_covered:
                continue
            if (t.lemma_key,) not in kg.phrase_index:
                unknown_lemmas[t.lemma_key] += 1

        mwes = self.lexicon.extract_mwes([text], min_count=self.mwe_min_count)
        group_counts: dict[str, float] = {
            " ".join(p.lemmas): float(p.count) for p in mwes
        }
        unknown_groups = {
            " ".join(p.lemmas): float(p.count)
            for p in mwes
            if p.lemmas not in kg.phrase_index
        }
        unknown: dict[str, float] = dict(unknown_lemmas)
        unknown.update(unknown_groups)

        syncon_scores = {
            cid: cnt * self.idf(cid) for cid, cnt in concept_counts.items()
        }
        main_syncons = _ranked(syncon_scores, self.top_k)

        main_sent: dict[str, float] = {}
        top_syncon_ids = {cid for cid, _ in main_syncons}
        for sent in self.lexicon.sentences(text):
            inside = {
                m.concept_id
                for m in mentions
                if m.char_start >= sent.char_start and m.char_end <= sent.char_end
            }
            # Sorted so the float sum is stable under hash randomization.
            score = sum(syncon_scores[cid] for cid in sorted(inside & top_syncon_ids))
            if score > 0:
                # Keep the best score if an identical sentence repeats.
                main_sent[sent.text] = max(main_sent.get(sent.text, 0.0), score)

        return DocumentMetadata(
            domains=_ranked(domain_votes, self.top_k),
            organizations=_ranked(entity_counts["organization"], self.top_k),
            people=_ranked(entity_counts["person"], self.top_k),
            places=_ranked(entity_counts["place"], self.top_k),
            known_concepts=_ranked(concept_counts),
            unknown_concepts=_ranked(unknown),
            main_syncons=main_syncons,
            main_groups=_ranked(group_counts, self.top_k),
            main_lemmas=_ranked(lemma_counts, self.top_k),
            main_sentences=_ranked(main_sent, self.top_k),
        )


def _covered_mask(tokens, mentions: Sequence[ConceptMention]) -> list[bool]:
    spans = sorted((m.char_start, m.char_end) for m in mentions)
    out = []
    si = 0
    for t in tokens:
        while si < len(spans) and spans[si][1] <= t.char_start:
            si += 1
        out.append(si < len(spans) and spans[si][0] <= t.char_start and t.char_end <= spans[si][1])
    return out


def extract_metadata(
    doc: Document,
    mentions: Sequence[ConceptMention],
    kg: KnowledgeGraph,
    extractor: MetadataExtractor | None = None,
) -> DocumentMetadata:
    extractor = extractor or MetadataExtractor(kg)
    return extractor.extract(doc, mentions)


def analyze_collection(
    collection: DocumentCollection,
    kg: KnowledgeGraph,
    top_k: int = 10,
) -> dict[str, tuple[list[ConceptMention], DocumentMetadata]]:
    """Annotate and extract metadata for every document in one pass."""
    mention_map = {doc.id: annotate(doc, kg) for doc in collection}
    extractor = MetadataExtractor(kg, top_k=top_k).fit(mention_map.values())
    return {
        doc.id: (mention_map[doc.id], extractor.extract(doc, mention_map[doc.id]))
        for doc in collection
    }
