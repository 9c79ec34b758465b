"""Sentence boundary detection for book prose.

Periods end sentences unless they belong to a listed abbreviation; '?' and
'!' always end sentences; a closing double quote followed by whitespace and
an uppercase letter also ends one. Terminators directly followed by a quote
defer the decision to the quote character, so «"Stop!" He ran.» breaks
after the quote, not inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .tokenizer import Token, tokenize

_TERMINATORS = ".?!"
_QUOTE_CHARS = '"”»'  # straight, curly-right, guillemet-right


@dataclass(frozen=True)
class Sentence:
    """A tokenized sentence plus its byte span in the source document."""

    tokens: list[Token]
    source_span: tuple[int, int]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence must contain at least one token")
        start, end = self.source_span
        if start >= end:
            raise ValueError(f"malformed source span: {self.source_span}")

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)


def _load_abbreviations() -> frozenset[str]:
    text = resources.files("versesmith.textproc").joinpath("data/abbreviations.txt").read_text("utf-8")
    abbrevs = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            abbrevs.add(line.lower())
    return frozenset(abbrevs)


_ABBREVIATIONS = _load_abbreviations()


def abbreviations() -> frozenset[str]:
    """The shipped abbreviation list, lowercased, trailing periods included."""
    return _ABBREVIATIONS


def _word_ending_at(document: str, period_index: int) -> str:
    """The whitespace-delimited chunk that ends with document[period_index]."""
    start = period_index
    while start > 0 and not document[start - 1].isspace():
        start -= 1
    return document[start : period_index + 1]


def _is_boundary(document: str, i: int) -> bool:
    ch = document[i]
    nxt = document[i + 1] if i + 1 < len(document) else ""

    if ch in _TERMINATORS:
        if nxt in _QUOTE_CHARS:
            return False  # the quote decides
        if nxt and not nxt.isspace():
            return False  # mid-token period, e.g. "3.88" or "e.g.x"
        if ch == ".":
            if _word_ending_at(document, i).lower() in _ABBREVIATIONS:
                return False
        return True

    if ch in _QUOTE_CHARS:
        if i == 0 or document[i - 1].isspace():
            return False  # opening quote
        j = i + 1
        if j >= len(document) or not document[j].isspace():
            return False
        while j < len(document) and document[j].isspace():
            j += 1
        return j < len(document) and document[j].isupper()

    return False


def split_sentences(document: str) -> list[Sentence]:
    """Split a document into tokenized sentences with byte spans.

    Every non-whitespace character of the document lands in exactly one
    sentence, in order; whitespace-only segments are dropped.
    """
    byte_at = [0]
    total = 0
    for ch in document:
        total += len(ch.encode("utf-8"))
        byte_at.append(total)

    sentences: list[Sentence] = []

    def emit(start: int, end: int) -> None:
        # trim whitespace off both ends of the char range [start, end)
        while start < end and document[start].isspace():
            start += 1
        while end > start and document[end - 1].isspace():
            end -= 1
        if start >= end:
            return
        tokens = tokenize(document[start:end])
        if tokens:
            sentences.append(Sentence(tokens, (byte_at[start], byte_at[end])))

    seg_start = 0
    for i in range(len(document)):
        if _is_boundary(document, i):
            emit(seg_start, i + 1)
            seg_start = i + 1
    emit(seg_start, len(document))
    return sentences
