"""Shared text substrate: tokenization, lemmatization, stopwords, sentences, MWEs.

All scoring modules key their term statistics on the lemma keys produced
here, so the rules are deliberately simple, deterministic, and auditable:

* tokens are maximal runs of word characters (``\\w+``); everything else
  is a separator,
* lemmas come from an exception table first, then suffix rules (plural
  ``-s``/``-es``, ``-ies`` -> ``-y``, gerund ``-ing`` and past ``-ed``
  with stem length >= 3), else identity,
* all-uppercase acronyms pass through unchanged,
* multi-word expression candidates are n-grams (n = 2..4) drawn from
  maximal stopword-free token runs inside a sentence.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Iterable, Iterator, Sequence

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)
_ACRONYM_RE = re.compile(r"^[A-Z0-9]*[A-Z][A-Z0-9]*$")
_SENTENCE_BREAK_RE = re.compile(r"[.!?;]+(?=\s|$)|\n")
_VOWELS = set("aeiou")
_DOUBLE_CONSONANTS = {"bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"}


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    char_start: int
    char_end: int
    is_stopword: bool
    is_numeric: bool

    @property
    def key(self) -> str:
        """Case-folded comparison key for the surface form."""
        return self.surface.casefold()

    @property
    def lemma_key(self) -> str:
        """Case-folded lemma; the unit used by indexes and statistics."""
        return self.lemma.casefold()


@dataclass(frozen=True)
class PhraseCandidate:
    lemmas: tuple[str, ...]
    surface: str
    count: int


@dataclass(frozen=True)
class Sentence:
    text: str
    char_start: int
    char_end: int


def _read_lines(path: Path) -> list[str]:
    return [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]


def _resource_path(name: str) -> Path:
    return Path(str(_importlib_resources.files("spacedocs") / "resources" / name))


def _has_vowel(word: str) -> bool:
    return any(c in _VOWELS for c in word)


def _vowel_groups(word: str) -> int:
    groups = 0
    in_group = False
    for c in word:
        if c in _VOWELS:
            if not in_group:
                groups += 1
            in_group = True
        else:
            in_group = False
    return groups


def _restore_stem(stem: str) -> str:
    """Post-strip cleanup for -ing/-ed stems: de-double, or restore final e."""
    if len(stem) >= 2 and stem[-2:] in _DOUBLE_CONSONANTS:
        return stem[:-1]
    if (
        len(stem) >= 3
        and stem[-1] not in _VOWELS
        and stem[-1] not in "wxy"
        and stem[-2] in _VOWELS
        and stem[-3] not in _VOWELS
        and _vowel_groups(stem) == 1
    ):
        return stem + "e"
    return stem


class Lexicon:
    """Tokenizer + lemmatizer bound to stopword and exception resources."""

    def __init__(
        self,
        stopwords: Iterable[str] | None = None,
        lemma_exceptions: dict[str, str] | None = None,
    ):
        if stopwords is None:
            stopwords = _read_lines(_resource_path("stopwords.txt"))
        if lemma_exceptions is None:
            lemma_exceptions = load_lemma_exceptions(_resource_path("lemma_exceptions.tsv"))
        self.stopwords = frozenset(w.casefold() for w in stopwords)
        self.lemma_exceptions = dict(lemma_exceptions)

    # -- tokenization ---------------------------------------------------

    def tokenize(self, text: str) -> list[Token]:
        tokens = []
        for m in _TOKEN_RE.finditer(text):
            surface = m.group(0)
            lemma = self.lemmatize_word(surface)
            tokens.append(
                Token(
                    surface=surface,
                    lemma=lemma,
                    char_start=m.start(),
                    char_end=m.end(),
                    is_stopword=surface.casefold() in self.stopwords,
                    is_numeric=any(c.isdigit() for c in surface),
                )
            )
        return tokens

    def sentences(self, text: str) -> list[Sentence]:
        """Non-empty sentence spans; boundaries at ./!/?/; or newline."""
        spans = []
        start = 0
        for m in _SENTENCE_BREAK_RE.finditer(text):
            spans.append((start, m.end()))
            start = m.end()
        if start < len(text):
            spans.append((start, len(text)))
        out = []
        for s, e in spans:
            chunk = text[s:e]
            lead = len(chunk) - len(chunk.lstrip())
            trail = len(chunk) - len(chunk.rstrip())
            if s + lead < e - trail:
                out.append(Sentence(text[s + lead : e - trail], s + lead, e - trail))
        return out

    # -- lemmatization --------------------------------------------------

    def lemmatize_word(self, surface: str) -> str:
        if len(surface) >= 2 and _ACRONYM_RE.match(surface):
            return surface
        w = surface.casefold()
        if w in self.lemma_exceptions:
            return self.lemma_exceptions[w]
        if w.endswith("ies") and len(w) > 4:
            return w[:-3] + "y"
        if w.endswith(("sses", "ches", "shes", "xes", "zes", "oes")):
            return w[:-2]
        if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) >= 4:
            return w[:-1]
        if w.endswith("ing") and len(w) > 5:
            stem = w[:-3]
            return _restore_stem(stem) if _has_vowel(stem) else w
        if w.endswith("ed") and len(w) > 4:
            stem = w[:-2]
            return _restore_stem(stem) if _has_vowel(stem) else w
        return w

    def lemmatize(self, token: Token) -> str:
        return token.lemma

    # -- helpers used across modules ------------------------------------

    def content_lemmas(self, text: str) -> list[str]:
        """Lemma keys of non-stopword tokens, in order."""
        return [t.lemma_key for t in self.tokenize(text) if not t.is_stopword]

    def term_counts(self, text: str) -> Counter:
        return Counter(self.content_lemmas(text))

    # -- multi-word expressions ------------------------------------------

    def phrase_runs(self, text: str) -> Iterator[list[Token]]:
        """Maximal stopword-free token runs, bounded by sentence breaks.

        Tokens keep their offsets into ``text``, so callers can slice the
        original surface of any run.
        """
        sentence_ends = [s.char_end for s in self.sentences(text)]
        si = 0
        run: list[Token] = []
        for tok in self.tokenize(text):
            crossed = False
            while si < len(sentence_ends) and tok.char_start >= sentence_ends[si]:
                si += 1
                crossed = True
            if (crossed or tok.is_stopword) and len(run) >= 2:
                yield run
            if crossed or tok.is_stopword:
                run = []
            if not tok.is_stopword:
                run.append(tok)
        if len(run) >= 2:
            yield run

    def extract_mwes(self, texts: Sequence[str], min_count: int = 1) -> list[PhraseCandidate]:
        """Frequency-counted lemma n-grams (n = 2..4) from stopword-free runs.

        Candidates are sorted by count (desc), then lexicographically on the
        joined lemmas, so output order is fully deterministic.
        """
        if min_count < 1:
            raise ValueError("min_count must be >= 1")
        counts: Counter = Counter()
        first_surface: dict[tuple[str, ...], str] = {}
        for text in texts:
            for run in self.phrase_runs(text):
                n_tokens = len(run)
                for n in range(2, 5):
                    for i in range(n_tokens - n + 1):
                        gram = tuple(t.lemma_key for t in run[i : i + n])
                        counts[gram] += 1
                        if gram not in first_surface:
                            start = run[i].char_start
                            end = run[i + n - 1].char_end
                            first_surface[gram] = text[start:end]
        out = [
            PhraseCandidate(lemmas=gram, surface=first_surface[gram], count=c)
            for gram, c in counts.items()
            if c >= min_count
        ]
        out.sort(key=lambda p: (-p.count, " ".join(p.lemmas)))
        return out


def load_lemma_exceptions(path: Path | str) -> dict[str, str]:
    table = {}
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{i}: expected 'surface<TAB>lemma', got {line!r}")
        table[parts[0].casefold()] = parts[1]
    return table


def load_stopwords(path: Path | str) -> frozenset[str]:
    return frozenset(w.casefold() for w in _read_lines(Path(path)))


_DEFAULT: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Lexicon()
    return _DEFAULT


def tokenize(text: str) -> list[Token]:
    return default_lexicon().tokenize(text)


def lemmatize(token: Token) -> str:
    return token.lemma
