"""Terminology-gap analysis: frequency stats, weirdness index, Pareto cut.

The weirdness index of a term compares its relative frequency in the
specialized corpus against a general reference corpus::

    W = (N_G * f_S) / ((1 + f_G) * N_S)

where f_S/f_G are the term's frequencies and N_S/N_G the corpus token
totals. A term absent from the general corpus gets f_G = 0, so the +1
smoothing keeps W finite. Corpus token totals count every token
(stopwords included); the reported frequency map excludes stopwords, but
their counts are retained so W stays computable for any term on demand.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

from .corpus import DocumentCollection
from .kgraph import KnowledgeGraph, annotate
from .lexicon import Lexicon, default_lexicon


class TermStatsError(Exception):
    pass


@dataclass
class CorpusStats:
    total_tokens: int
    freq: dict[str, int]
    stopword_freq: dict[str, int] = field(default_factory=dict)
    unit: str = "lemma"

    def frequency(self, term: str) -> int:
        key = term.casefold()
        return self.freq.get(key, self.stopword_freq.get(key, 0))


def corpus_stats(
    collection: DocumentCollection | Sequence[str],
    unit: Literal["lemma", "surface"] = "lemma",
    lexicon: Lexicon | None = None,
) -> CorpusStats:
    """Token totals and term frequencies over document bodies.

    ``total_tokens`` includes stopwords; ``freq`` excludes them (they are
    kept separately for on-demand weirdness lookups).
    """
    lexicon = lexicon or default_lexicon()
    texts = (
        [d.body for d in collection]
        if isinstance(collection, DocumentCollection)
        else list(collection)
    )
    total = 0
    freq: Counter = Counter()
    stop_freq: Counter = Counter()
    for text in texts:
        for tok in lexicon.tokenize(text):
            total += 1
            key = tok.lemma_key if unit == "lemma" else tok.key
            if tok.is_stopword:
                stop_freq[key] += 1
            else:
                freq[key] += 1
    if total == 0:
        raise TermStatsError("empty corpus: no tokens in any document body")
    return CorpusStats(
        total_tokens=total, freq=dict(freq), stopword_freq=dict(stop_freq), unit=unit
    )


def load_general_stats(path: Path | str) -> CorpusStats:
    """Read a general-corpus frequency table: ``N=<int>`` then term<TAB>count."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("N="):
        raise TermStatsError(f"{path}: first line must be 'N=<int>'")
    try:
        total = int(lines[0][2:])
    except ValueError as exc:
        raise TermStatsError(f"{path}: bad token total {lines[0]!r}") from exc
    freq: dict[str, int] = {}
    for i, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise TermStatsError(f"{path}:{i}: expected 'term<TAB>count'")
        freq[parts[0].casefold()] = int(parts[1])
    if total <= 0:
        raise TermStatsError(f"{path}: token total must be positive")
    return CorpusStats(total_tokens=total, freq=freq)


def weirdness(term: str, special: CorpusStats, general: CorpusStats) -> float:
    """Exact weirdness index of ``term``; absent-from-general means f_G = 0."""
    if special.total_tokens <= 0:
        raise TermStatsError("specialized corpus has no tokens")
    if general.total_tokens <= 0:
        raise TermStatsError("general corpus has no tokens")
    f_s = special.frequency(term)
    f_g = general.frequency(term)
    return (general.total_tokens * f_s) / ((1 + f_g) * special.total_tokens)


@dataclass(frozen=True)
class TermStats:
    term: str
    f_s: int
    f_g: int
    n_s: int
    n_g: int
    weirdness: float
    known_in_kg: bool

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "f_s": self.f_s,
            "f_g": self.f_g,
            "n_s": self.n_s,
            "n_g": self.n_g,
            "weirdness": self.weirdness,
            "known_in_kg": self.known_in_kg,
        }


@dataclass
class CategoryReport:
    category: str
    known: int
    unknown: int
    pareto_selected: list[TermStats]
    total: int

    def to_dict(self) -> dict:
        return {
            "category": self.category,
            "known": self.known,
            "unknown": self.unknown,
            "pareto_selected": [t.to_dict() for t in self.pareto_selected],
            "selected_count": len(self.pareto_selected),
            "total": self.total,
        }


@dataclass
class EnrichmentReport:
    categories: dict[str, CategoryReport]
    highest_weirdness: list[TermStats]
    lowest_weirdness: list[TermStats]
    pareto_fraction: float
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "pareto_fraction": self.pareto_fraction,
            "categories": {k: v.to_dict() for k, v in self.categories.items()},
            "highest_weirdness": [t.to_dict() for t in self.highest_weirdness],
            "lowest_weirdness": [t.to_dict() for t in self.lowest_weirdness],
            "notes": list(self.notes),
        }


CATEGORIES = ("lemmas", "groups", "persons", "places", "organizations")

# Cues for typing proper-noun runs that the graph does not know. This is a
# deliberately shallow, auditable stand-in for NER: it mistypes sometimes,
# which is exactly the failure mode the enrichment workflow exists to fix.
_ORG_SUFFIXES = {
    "agency", "organization", "organisation", "commission", "committee",
    "union", "institute", "university", "centre", "center", "administration",
    "corporation", "company", "ltd", "inc", "plc", "board", "panel", "bureau",
}
_PLACE_SUFFIXES = {
    "ocean", "sea", "island", "islands", "mountain", "mountains", "river",
    "valley", "desert", "bay", "coast", "city", "lake", "gulf", "strait",
}
_LOCATIVE_PREPOSITIONS = {"in", "at", "near", "from", "across", "over", "along"}


def _report_notes(pareto_fraction: float) -> tuple[str, ...]:
    return (
        "groups/concepts boundary: multi-word candidates are reported under "
        "'groups'; single unknown lemmas under 'lemmas'.",
        f"pareto selection takes the top ceil({pareto_fraction:g} x unknown) "
        "unknown terms of each category by corpus frequency.",
        "unknown persons/places/organizations are typed by a shallow cue "
        "heuristic, not NER; review before graph integration.",
        "token totals use the in-repo tokenizer and lemmatizer; they are not "
        "comparable to token statistics produced by other toolchains.",
    )


def gap_report(
    collection: DocumentCollection,
    kg: KnowledgeGraph,
    general: CorpusStats,
    pareto_fraction: float = 0.20,
    lexicon: Lexicon | None = None,
    table_size: int = 10,
    min_frequency_for_tables: int = 3,
) -> EnrichmentReport:
    """Partition corpus terms into known/unknown per category with W scores."""
    if not (0 < pareto_fraction <= 1):
        raise ValueError("pareto_fraction must be in (0, 1]")
    lexicon = lexicon or kg.lexicon or default_lexicon()
    stats = corpus_stats(collection, unit="lemma", lexicon=lexicon)

    def wi(term: str, f_s: int, known: bool) -> TermStats:
        f_g = general.frequency(term)
        return TermStats(
            term=term,
            f_s=f_s,
            f_g=f_g,
            n_s=stats.total_tokens,
            n_g=general.total_tokens,
            weirdness=(general.total_tokens * f_s)
            / ((1 + f_g) * stats.total_tokens),
            known_in_kg=known,
        )

    # Lemmas: known iff the graph has a single-lemma entry for the key.
    lemma_known: dict[str, int] = {}
    lemma_unknown: dict[str, int] = {}
    for term, count in stats.freq.items():
        if (term,) in kg.phrase_index:
            lemma_known[term] = count
        else:
            lemma_unknown[term] = count

    # Groups: multi-word candidates, known iff the phrase is a graph entry.
    mwes = lexicon.extract_mwes([d.body for d in collection], min_count=2)
    group_known: dict[str, int] = {}
    group_unknown: dict[str, int] = {}
    for cand in mwes:
        key = " ".join(cand.lemmas)
        if cand.lemmas in kg.phrase_index:
            group_known[key] = cand.count
        else:
            group_unknown[key] = cand.count

    # Entities: known from typed concept mentions, unknown from proper-noun
    # runs absent from the graph, typed by the cue heuristic.
    known_entities = {"persons": set(), "places": set(), "organizations": set()}
    for doc in collection:
        for m in annotate(doc, kg):
            etype = kg[m.concept_id].entity_type
            if etype == "person":
                known_entities["persons"].add(kg[m.concept_id].label)
            elif etype == "place":
                known_entities["places"].add(kg[m.concept_id].label)
            elif etype == "organization":
                known_entities["organizations"].add(kg[m.concept_id].label)

    unknown_entities = {"persons": Counter(), "places": Counter(), "organizations": Counter()}
    for doc in collection:
        for run_text, category, count in _unknown_proper_runs(doc.body, kg, lexicon):
            unknown_entities[category][run_text] += count

    def category_report(name: str, known_map: dict[str, int], unknown_map: dict[str, int]):
        selected_n = math.ceil(pareto_fraction * len(unknown_map)) if unknown_map else 0
        ranked = sorted(unknown_map.items(), key=lambda kv: (-kv[1], kv[0]))
        selected = [wi(term, f_s, known=False) for term, f_s in ranked[:selected_n]]
        return CategoryReport(
            category=name,
            known=len(known_map),
            unknown=len(unknown_map),
            pareto_selected=selected,
            total=len(known_map) + len(unknown_map),
        )

    categories = {
        "lemmas": category_report("lemmas", lemma_known, lemma_unknown),
        "groups": category_report("groups", group_known, group_unknown),
        "persons": category_report(
            "persons",
            {k: 1 for k in known_entities["persons"]},
            dict(unknown_entities["persons"]),
        ),
        "places": category_report(
            "places",
            {k: 1 for k in known_entities["places"]},
            dict(unknown_entities["places"]),
        ),
        "organizations": category_report(
            "organizations",
            {k: 1 for k in known_entities["organizations"]},
            dict(unknown_entities["organizations"]),
        ),
    }

    eligible = [
        wi(term, f_s, known=(term,) in kg.phrase_index)
        for term, f_s in stats.freq.items()
        if f_s >= min_frequency_for_tables
    ]
    eligible.sort(key=lambda t: (-t.weirdness, t.term))
    highest = eligible[:table_size]
    lowest = sorted(eligible, key=lambda t: (t.weirdness, t.term))[:table_size]

    return EnrichmentReport(
        categories=categories,
        highest_weirdness=highest,
        lowest_weirdness=lowest,
        pareto_fraction=pareto_fraction,
        notes=_report_notes(pareto_fraction),
    )


def render_text_report(report: EnrichmentReport) -> str:
    """Aligned-column rendering: category counts, then the W tables."""

    def table(rows: list[list[str]]) -> list[str]:
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        out = []
        for j, row in enumerate(rows):
            out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
            if j == 0:
                out.append("  ".join("-" * w for w in widths))
        return out

    lines: list[str] = ["Known vs. unknown corpus terms", ""]
    rows = [["Category", "Known", "Unknown", f"Top {report.pareto_fraction:.0%} unknown", "Total"]]
    for cat in report.categories.values():
        rows.append(
            [
                cat.category,
                str(cat.known),
                str(cat.unknown),
                str(len(cat.pareto_selected)),
                str(cat.total),
            ]
        )
    lines += table(rows)

    for title, terms in (
        ("Highest weirdness index", report.highest_weirdness),
        ("Lowest weirdness index", report.lowest_weirdness),
    ):
        lines += ["", title, ""]
        wi_rows = [["Term", "f_S", "f_G", "Weirdness index"]]
        for t in terms:
            wi_rows.append([t.term, str(t.f_s), str(t.f_g), f"{t.weirdness:,.4g}"])
        lines += table(wi_rows)

    lines += ["", "Notes:"]
    lines += [f"  - {note}" for note in report.notes]
    return "\n".join(lines) + "\n"


def _unknown_proper_runs(text: str, kg: KnowledgeGraph, lexicon: Lexicon):
    """Capitalized runs absent from the graph, typed by shallow cues.

    Yields (run text, category, occurrence count contribution of 1) per
    occurrence; sentence-initial lone words are skipped to avoid counting
    ordinary sentence capitalization.
    """
    for sent in lexicon.sentences(text):
        tokens = lexicon.tokenize(sent.text)
        run: list = []
        prev_token = None
        runs = []
        for tok in tokens:
            cap = tok.surface[:1].isupper() and not tok.is_stopword
            if cap:
                if not run:
                    run_prev = prev_token
                run.append(tok)
            else:
                if run:
                    runs.append((run, run_prev))
                run = []
            prev_token = tok
        if run:
            runs.append((run, run_prev))
        for run, before in runs:
            if run[0].char_start == tokens[0].char_start and len(run) == 1:
                continue  # lone sentence-initial capital
            key = tuple(t.lemma_key for t in run)
            if key in kg.phrase_index or all((k,) in kg.phrase_index for k in key):
                continue
            surface = sent.text[run[0].char_start : run[-1].char_end]
            lowered = [t.key for t in run]
            if any(t.surface.isupper() and len(t.surface) >= 2 for t in run) or (
                _ORG_SUFFIXES & set(lowered)
            ):
                category = "organizations"
            elif (_PLACE_SUFFIXES & set(lowered)) or (
                before is not None and before.key in _LOCATIVE_PREPOSITIONS
            ):
                category = "places"
            else:
                category = "persons"
            yield surface, category, 1
