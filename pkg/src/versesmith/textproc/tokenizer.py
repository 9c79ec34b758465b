"""Deterministic tokenizer for lyric lines and book prose.

Contractions and apostrophe-attached forms ("i'm", "'cause", "lovin'",
"to-day") stay single tokens; every other punctuation mark becomes its own
token. Joining surfaces with single spaces and re-tokenizing reproduces the
token list exactly, which downstream code relies on for normalization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    WORD = "word"
    PUNCTUATION = "punctuation"
    NUMBER = "number"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"invalid token surface: {self.surface!r}")


# Order matters: numbers first (words cannot start with digits), then words
# (so an apostrophe glued to letters is kept inside the word), then single
# punctuation characters.
_TOKEN_RE = re.compile(
    r"(?P<number>\d+(?:[.,]\d+)*)"
    r"|(?P<word>['’]?[^\W\d_]+(?:['’\-][^\W\d_]+)*['’]?)"
    r"|(?P<punct>[^\w\s])",
    re.UNICODE,
)


def tokenize(text: str) -> list[Token]:
    """Split text into word, number, and punctuation tokens."""
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "number":
            kind = TokenKind.NUMBER
        elif m.lastgroup == "word":
            kind = TokenKind.WORD
        else:
            kind = TokenKind.PUNCTUATION
        tokens.append(Token(m.group(), kind))
    return tokens


def detokenize(tokens: list[Token]) -> str:
    """Join token surfaces with single spaces (the canonical line form)."""
    return " ".join(t.surface for t in tokens)


def normalize_line(text: str) -> str:
    """Canonical single-spaced form of a line: tokenize, then rejoin."""
    return detokenize(tokenize(text))
