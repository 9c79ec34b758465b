"""Grammatical tagging: the mapping from token sequences to tag sequences.

The shipped tagger is intentionally simple and fully deterministic: a
word -> most-frequent-tag lexicon, a handful of suffix heuristics for
out-of-lexicon words, and a NN default. Anything implementing the
``Tagger`` protocol (e.g. a wrapper around a statistical tagger) can be
swapped in via ``set_default_tagger``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Protocol

from .tokenizer import Token, TokenKind, tokenize


class UnknownTagError(ValueError):
    """Raised when a tag name is not a member of the shipped tagset."""


def _load_lines(name: str) -> list[str]:
    text = resources.files("versesmith.textproc").joinpath(f"data/{name}").read_text("utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


_TAGSET: frozenset[str] = frozenset(_load_lines("tagset.txt"))
PUNCT_TAG = "PUNCT"


def tagset() -> frozenset[str]:
    """The closed set of valid tag names."""
    return _TAGSET


@dataclass(frozen=True)
class PosTag:
    tag: str

    def __post_init__(self):
        if self.tag not in _TAGSET:
            raise UnknownTagError(f"unknown tag: {self.tag!r}")


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: PosTag


class Tagger(Protocol):
    def tag(self, tokens: list[Token]) -> list[TaggedToken]: ...


# Suffix heuristics for words missing from the lexicon, checked in order.
# Minimum stem lengths keep short words ("red", "is") away from the rules.
_SUFFIX_RULES: tuple[tuple[str, int, str], ...] = (
    ("ing", 5, "VBG"),
    ("ed", 4, "VBD"),
    ("ly", 4, "RB"),
    ("tion", 5, "NN"),
    ("sion", 5, "NN"),
    ("ment", 5, "NN"),
    ("ness", 5, "NN"),
    ("ship", 5, "NN"),
    ("hood", 5, "NN"),
    ("ism", 5, "NN"),
    ("ous", 4, "JJ"),
    ("ful", 4, "JJ"),
    ("ive", 4, "JJ"),
    ("able", 5, "JJ"),
    ("ible", 5, "JJ"),
    ("less", 5, "JJ"),
    ("est", 5, "JJS"),
    ("ss", 3, "NN"),
    ("s", 4, "NNS"),
)


class RuleTagger:
    """Lexicon + suffix-rule tagger.

    Lookup lowercases the surface but leaves it untouched in the output.
    Punctuation tokens always get PUNCT and numbers always get CD, so the
    output length always equals the input length.
    """

    def __init__(self, lexicon: dict[str, str] | None = None):
        if lexicon is None:
            lexicon = load_default_lexicon()
        for word, tag in lexicon.items():
            if tag not in _TAGSET:
                raise UnknownTagError(f"lexicon entry {word!r} has unknown tag {tag!r}")
        self._lexicon = dict(lexicon)

    def tag_one(self, token: Token) -> PosTag:
        if token.kind is TokenKind.PUNCTUATION:
            return PosTag(PUNCT_TAG)
        if token.kind is TokenKind.NUMBER:
            return PosTag("CD")
        lowered = token.surface.lower()
        hit = self._lexicon.get(lowered)
        if hit is not None:
            return PosTag(hit)
        if token.surface[0].isupper():
            return PosTag("NNP")
        for suffix, min_len, tag in _SUFFIX_RULES:
            if len(lowered) >= min_len and lowered.endswith(suffix):
                return PosTag(tag)
        return PosTag("NN")

    def tag(self, tokens: list[Token]) -> list[TaggedToken]:
        return [TaggedToken(t, self.tag_one(t)) for t in tokens]


def load_default_lexicon() -> dict[str, str]:
    """Parse the shipped word<TAB>tag lexicon file."""
    lexicon: dict[str, str] = {}
    for line in _load_lines("lexicon.tsv"):
        word, _, tag = line.partition("\t")
        if not tag:
            raise ValueError(f"malformed lexicon line: {line!r}")
        lexicon[word] = tag.strip()
    return lexicon


_default_tagger: Tagger | None = None


def default_tagger() -> Tagger:
    global _default_tagger
    if _default_tagger is None:
        _default_tagger = RuleTagger()
    return _default_tagger


def set_default_tagger(tagger: Tagger | None) -> None:
    """Install a replacement tagger (None restores the shipped one)."""
    global _default_tagger
    _default_tagger = tagger


def pos_tag(tokens: list[Token], tagger: Tagger | None = None) -> list[TaggedToken]:
    """Tag a token sequence; length and order are preserved."""
    if tagger is None:
        tagger = default_tagger()
    return tagger.tag(list(tokens))


def pos_string(line: str, tagger: Tagger | None = None) -> str:
    """Space-joined tag names of a line's tokens."""
    return " ".join(tt.tag.tag for tt in pos_tag(tokenize(line), tagger))


def tags_of(tokens: Iterable[Token], tagger: Tagger | None = None) -> list[str]:
    """Tag names for an already-tokenized sequence."""
    return [tt.tag.tag for tt in pos_tag(list(tokens), tagger)]
