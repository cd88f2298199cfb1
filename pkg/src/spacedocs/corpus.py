"""Document collections: loading, filtering, and report segmentation.

The corpus file is UTF-8 JSON-lines, one flat record per line with keys
``id, source, title, body`` and optional ``date`` (ISO-8601),
``for_codes`` (taxonomy codes), ``keywords``. Segmentation turns a report
body into a section tree plus passages that carry exact character offsets
back into the body, so any downstream span can be re-anchored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import date as _date
from pathlib import Path
from typing import Iterable, Sequence

SOURCES = ("idea", "study", "project", "report", "paper")

DEFAULT_HEADING_PATTERN = r"^\d+(\.\d+)*\s+\S"
DEFAULT_DISCARD_PATTERN = r"^\s*\d+\s*$"
DEFAULT_MIN_PASSAGE_CHARS = 200

# A line repeated on more than this fraction of form-feed pages is treated
# as a running header/footer (only applies when the body contains \f).
REPEATED_LINE_PAGE_FRACTION = 0.30


class CorpusError(Exception):
    """Malformed corpus record or collection-level violation."""


@dataclass(frozen=True)
class Document:
    id: str
    source: str
    title: str
    body: str
    date: _date | None = None
    fields_of_research: tuple[str, ...] = ()
    keywords: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise CorpusError("document id must be non-empty")
        if self.source not in SOURCES:
            raise CorpusError(f"document {self.id}: unknown source {self.source!r}")


@dataclass(frozen=True)
class LoadReport:
    total_records: int
    kept: int
    rejected_by_min_date: int
    rejected_by_field_codes: int
    rejected_by_sources: int

    def to_dict(self) -> dict:
        return {
            "total_records": self.total_records,
            "kept": self.kept,
            "rejected_by_min_date": self.rejected_by_min_date,
            "rejected_by_field_codes": self.rejected_by_field_codes,
            "rejected_by_sources": self.rejected_by_sources,
        }


class DocumentCollection:
    """Ordered, duplicate-free document list with a role label."""

    def __init__(self, docs: Iterable[Document], label: str = "general",
                 load_report: LoadReport | None = None):
        self.docs: list[Document] = list(docs)
        self.label = label
        self.load_report = load_report
        seen = set()
        for d in self.docs:
            if d.id in seen:
                raise CorpusError(f"duplicate document id {d.id!r}")
            seen.add(d.id)
        self._by_id = {d.id: d for d in self.docs}

    def __len__(self) -> int:
        return len(self.docs)

    def __iter__(self):
        return iter(self.docs)

    def __getitem__(self, doc_id: str) -> Document:
        return self._by_id[doc_id]

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def filter(self, corpus_filter: "CorpusFilter") -> "DocumentCollection":
        kept = [d for d in self.docs if corpus_filter.accepts(d)]
        return DocumentCollection(kept, label=self.label)


@dataclass(frozen=True)
class CorpusFilter:
    """All provided clauses must pass; absent clauses are ignored.

    ``field_codes`` uses taxonomy-prefix semantics: a document code matches
    a filter code when it equals it or extends it (e.g. 0401 matches 04).
    ``min_date`` is inclusive; documents without a date fail a date clause,
    documents without codes fail a code clause.
    """

    min_date: _date | None = None
    field_codes: frozenset[str] | None = None
    sources: frozenset[str] | None = None

    def accepts(self, doc: Document) -> bool:
        return not self.failed_clauses(doc)

    def failed_clauses(self, doc: Document) -> list[str]:
        failed = []
        if self.min_date is not None:
            if doc.date is None or doc.date < self.min_date:
                failed.append("min_date")
        if self.field_codes is not None:
            if not any(
                code == want or code.startswith(want)
                for code in doc.fields_of_research
                for want in self.field_codes
            ):
                failed.append("field_codes")
        if self.sources is not None and doc.source not in self.sources:
            failed.append("sources")
        return failed


def _parse_record(raw: dict, record_index: int) -> Document:
    def fail(field_name: str, why: str):
        raise CorpusError(f"record {record_index}: field {field_name!r} {why}")

    for required in ("id", "source", "title", "body"):
        if required not in raw:
            fail(required, "is missing")
    if not isinstance(raw["id"], str) or not raw["id"]:
        fail("id", "must be a non-empty string")
    if raw["source"] not in SOURCES:
        fail("source", f"must be one of {SOURCES}")
    for key in ("title", "body"):
        if not isinstance(raw[key], str):
            fail(key, "must be a string")
    parsed_date = None
    if raw.get("date") is not None:
        try:
            parsed_date = _date.fromisoformat(raw["date"])
        except (TypeError, ValueError):
            fail("date", "must be an ISO-8601 date")
    for key in ("for_codes", "keywords"):
        value = raw.get(key)
        if value is not None and (
            not isinstance(value, list) or not all(isinstance(v, str) for v in value)
        ):
            fail(key, "must be a list of strings")
    return Document(
        id=raw["id"],
        source=raw["source"],
        title=raw["title"],
        body=raw["body"],
        date=parsed_date,
        fields_of_research=tuple(raw.get("for_codes") or ()),
        keywords=tuple(raw.get("keywords") or ()),
    )


def load_corpus(
    path: Path | str,
    corpus_filter: CorpusFilter | None = None,
    label: str = "general",
) -> DocumentCollection:
    """Load a JSON-lines corpus, applying the filter clause-by-clause.

    The returned collection carries a :class:`LoadReport` with per-clause
    rejection counts (a document failing several clauses counts once in
    each).
    """
    path = Path(path)
    corpus_filter = corpus_filter or CorpusFilter()
    kept: list[Document] = []
    total = 0
    rejected = {"min_date": 0, "field_codes": 0, "sources": 0}
    with path.open(encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            if not line.strip():
                continue
            total += 1
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"record {i}: invalid JSON ({exc.msg})") from exc
            if not isinstance(raw, dict):
                raise CorpusError(f"record {i}: expected an object")
            doc = _parse_record(raw, i)
            failed = corpus_filter.failed_clauses(doc)
            if failed:
                for clause in failed:
                    rejected[clause] += 1
            else:
                kept.append(doc)
    report = LoadReport(
        total_records=total,
        kept=len(kept),
        rejected_by_min_date=rejected["min_date"],
        rejected_by_field_codes=rejected["field_codes"],
        rejected_by_sources=rejected["sources"],
    )
    return DocumentCollection(kept, label=label, load_report=report)


# -- segmentation --------------------------------------------------------


@dataclass(frozen=True)
class Passage:
    doc_id: str
    section_path: tuple[str, ...]
    char_start: int
    char_end: int
    text: str

    def __post_init__(self):
        if not (0 <= self.char_start < self.char_end):
            raise CorpusError(
                f"passage offsets invalid: [{self.char_start}, {self.char_end})"
            )


@dataclass
class SectionNode:
    heading: str
    level: int
    children: list["SectionNode"] = field(default_factory=list)
    passage_ranges: list[tuple[int, int]] = field(default_factory=list)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class SectionTree:
    root: SectionNode

    def headings(self) -> list[str]:
        return [n.heading for n in self.root.walk() if n.level > 0]


@dataclass(frozen=True)
class SegmentationRules:
    heading: str = DEFAULT_HEADING_PATTERN
    discard: str = DEFAULT_DISCARD_PATTERN
    min_passage_chars: int = DEFAULT_MIN_PASSAGE_CHARS

    @classmethod
    def from_file(cls, path: Path | str) -> "SegmentationRules":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            heading=raw.get("heading", DEFAULT_HEADING_PATTERN),
            discard=raw.get("discard", DEFAULT_DISCARD_PATTERN),
            min_passage_chars=int(raw.get("min_passage_chars", DEFAULT_MIN_PASSAGE_CHARS)),
        )


def _heading_level(line: str) -> int:
    """Section level of a numbered heading: dot-count + 1 (1 -> 1, 1.2.3 -> 3)."""
    numbering = line.strip().split()[0]
    return numbering.rstrip(".").count(".") + 1


@dataclass
class SegmentedDocument:
    tree: SectionTree
    passages: list[Passage]
    heading_ranges: list[tuple[int, int]]
    discarded_ranges: list[tuple[int, int]]


def segment_report(doc: Document, rules: SegmentationRules | None = None) -> SegmentedDocument:
    """Split a report body into a section tree and offset-exact passages.

    Every character of the body ends up in exactly one of: a heading line,
    a discarded range, or a passage (blank separator lines that are not
    absorbed by a paragraph merge count as discarded). Passages never span
    heading or discarded lines; paragraphs shorter than
    ``min_passage_chars`` merge forward within their section.
    """
    if not doc.body:
        raise CorpusError(f"document {doc.id}: empty body")
    rules = rules or SegmentationRules()
    heading_re = re.compile(rules.heading)
    discard_re = re.compile(rules.discard) if rules.discard else None
    repeated = _repeated_page_lines(doc.body)
    body = doc.body

    segments: list[tuple[str, int, int]] = []  # (kind, start, end incl. newline)
    pos = 0
    for chunk in body.splitlines(keepends=True):
        text = chunk.rstrip("\r\n")
        stripped = text.strip()
        if not stripped:
            kind = "blank"
        elif heading_re.match(text):
            kind = "heading"
        elif (discard_re is not None and discard_re.match(text)) or stripped in repeated:
            kind = "discard"
        else:
            kind = "content"
        segments.append((kind, pos, pos + len(chunk)))
        pos += len(chunk)

    root = SectionNode(heading="", level=0)
    stack = [root]
    heading_ranges: list[tuple[int, int]] = []
    discarded_ranges: list[tuple[int, int]] = []
    passages: list[Passage] = []
    owners: list[SectionNode] = []  # section node per passage, for merging
    pending_blanks: list[tuple[int, int]] = []
    para: list[int] | None = None  # [start, end] of the open content run

    def emit_paragraph():
        nonlocal para, pending_blanks
        if para is None:
            return
        start, end = para
        para = None
        node = stack[-1]
        can_merge = (
            passages
            and owners[-1] is node
            and len(passages[-1].text.strip()) < rules.min_passage_chars
            and _contiguous(passages[-1].char_end, pending_blanks, start)
        )
        if can_merge:
            prev = passages[-1]
            passages[-1] = Passage(
                doc_id=doc.id,
                section_path=prev.section_path,
                char_start=prev.char_start,
                char_end=end,
                text=body[prev.char_start:end],
            )
            node.passage_ranges[-1] = (prev.char_start, end)
            pending_blanks = []
        else:
            discarded_ranges.extend(pending_blanks)
            pending_blanks = []
            section_path = tuple(n.heading for n in stack if n.level > 0)
            passages.append(
                Passage(
                    doc_id=doc.id,
                    section_path=section_path,
                    char_start=start,
                    char_end=end,
                    text=body[start:end],
                )
            )
            owners.append(node)
            node.passage_ranges.append((start, end))

    for kind, start, end in segments:
        if kind == "content":
            if para is None:
                para = [start, end]
            else:
                para[1] = end
            continue
        emit_paragraph()
        if kind == "heading":
            discarded_ranges.extend(pending_blanks)
            pending_blanks = []
            level = _heading_level(body[start:end])
            while stack[-1].level >= level:
                stack.pop()
            node = SectionNode(heading=body[start:end].strip(), level=level)
            stack[-1].children.append(node)
            stack.append(node)
            heading_ranges.append((start, end))
        elif kind == "discard":
            discarded_ranges.extend(pending_blanks)
            pending_blanks = []
            discarded_ranges.append((start, end))
        else:  # blank
            pending_blanks.append((start, end))
    emit_paragraph()
    discarded_ranges.extend(pending_blanks)

    return SegmentedDocument(
        tree=SectionTree(root=root),
        passages=passages,
        heading_ranges=heading_ranges,
        discarded_ranges=discarded_ranges,
    )


def _contiguous(prev_end: int, blanks: list[tuple[int, int]], next_start: int) -> bool:
    cursor = prev_end
    for s, e in blanks:
        if s != cursor:
            return False
        cursor = e
    return cursor == next_start


def _repeated_page_lines(body: str) -> frozenset[str]:
    if "\f" not in body:
        return frozenset()
    pages = body.split("\f")
    if len(pages) < 3:
        return frozenset()
    counts: dict[str, int] = {}
    for page in pages:
        for line in {ln.strip() for ln in page.splitlines() if ln.strip()}:
            counts[line] = counts.get(line, 0) + 1
    cutoff = REPEATED_LINE_PAGE_FRACTION * len(pages)
    return frozenset(line for line, c in counts.items() if c > cutoff)


def window_passages(doc: Document, window_chars: int = 1000, stride_chars: int | None = None) -> list[Passage]:
    """Fixed-size overlapping windows snapped outward to whitespace.

    Fallback for bodies with no usable section structure. Consecutive
    windows overlap by ``window_chars - stride_chars`` before snapping.
    """
    if window_chars <= 0:
        raise ValueError("window_chars must be positive")
    stride = stride_chars if stride_chars is not None else window_chars
    if not (0 < stride <= window_chars):
        raise ValueError("stride_chars must satisfy 0 < stride <= window")
    body = doc.body
    if not body.strip():
        return []
    out: list[Passage] = []
    seen: set[tuple[int, int]] = set()
    nominal = 0
    while nominal < len(body):
        start = nominal
        end = min(nominal + window_chars, len(body))
        while start > 0 and not body[start].isspace() and not body[start - 1].isspace():
            start -= 1
        while end < len(body) and not body[end].isspace() and not body[end - 1].isspace():
            end += 1
        if body[start:end].strip() and (start, end) not in seen:
            seen.add((start, end))
            out.append(
                Passage(
                    doc_id=doc.id,
                    section_path=(),
                    char_start=start,
                    char_end=end,
                    text=body[start:end],
                )
            )
        if end >= len(body):
            break
        nominal += stride
    return out


def passage_index_ids(passages: Sequence[Passage]) -> dict[str, Passage]:
    """Stable unit-id map for indexing: ``<doc_id>#pNNN`` in document order."""
    out: dict[str, Passage] = {}
    per_doc: dict[str, int] = {}
    for p in passages:
        n = per_doc.get(p.doc_id, 0)
        per_doc[p.doc_id] = n + 1
        out[f"{p.doc_id}#p{n:03d}"] = p
    return out
