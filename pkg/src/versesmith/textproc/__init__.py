"""Tokenization, sentence boundary detection, and grammatical tagging."""

from .sentences import Sentence, abbreviations, split_sentences
from .tagging import (
    PUNCT_TAG,
    PosTag,
    RuleTagger,
    TaggedToken,
    Tagger,
    UnknownTagError,
    default_tagger,
    pos_tag,
    pos_string,
    set_default_tagger,
    tags_of,
    tagset,
)
from .tokenizer import Token, TokenKind, detokenize, normalize_line, tokenize

__all__ = [
    "PUNCT_TAG",
    "PosTag",
    "RuleTagger",
    "Sentence",
    "TaggedToken",
    "Tagger",
    "Token",
    "TokenKind",
    "UnknownTagError",
    "abbreviations",
    "default_tagger",
    "detokenize",
    "normalize_line",
    "pos_tag",
    "pos_string",
    "set_default_tagger",
    "split_sentences",
    "tags_of",
    "tagset",
    "tokenize",
]
