"""Training-pair construction for the two models and the two baselines.

Books prose becomes context+skeleton pairs: each sentence is chunked to at
most ``max_words`` words, split roughly in half without cutting words, and
emitted as ``first-half + tags-of-second-half -> second-half``. Lyrics
become line-shifted pairs within each song, both as tag sequences (for the
structure model) and as raw lines (for the lyrics-only baseline).

Word counts ignore punctuation tokens, but punctuation travels with the
word it follows so no half ever starts with a stray comma.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, TextIO

from .textproc import Sentence, Token, TokenKind, detokenize, pos_tag, split_sentences, tagset


class PairOrigin(str, Enum):
    LYRICS_STRUCTURE = "lyrics_structure"
    LYRICS_RAW = "lyrics_raw"
    BOOKS_VOCAB = "books_vocab"
    BOOKS_RAW = "books_raw"


@dataclass(frozen=True)
class TrainingPair:
    input: str
    target: str
    origin: PairOrigin
    provenance: tuple[str, int]

    def __post_init__(self):
        if not self.input or not self.target:
            raise ValueError("training pair input and target must be non-empty")
        if self.origin is PairOrigin.LYRICS_STRUCTURE:
            known = tagset()
            bad = [t for t in (self.input + " " + self.target).split() if t not in known]
            if bad:
                raise ValueError(f"structure pair contains non-tag tokens: {bad}")
        elif self.origin is PairOrigin.BOOKS_VOCAB:
            # context+skeleton inputs end with the target's tag suffix
            if self.input.split()[-1] not in tagset():
                raise ValueError("books_vocab pair input must end with tag tokens")


@dataclass(frozen=True)
class Song:
    id: str
    genre: str
    lines: list[str]

    def __post_init__(self):
        if not self.lines:
            raise ValueError(f"song {self.id!r} has no lines")
        if any(not line.strip() for line in self.lines):
            raise ValueError(f"song {self.id!r} contains an empty line")


@dataclass(frozen=True)
class SplitConfig:
    max_words: int = 15
    ratio: float = 0.5
    partition_fractions: tuple[float, float, float] = (0.90, 0.05, 0.05)
    seed: int = 0

    def __post_init__(self):
        if self.max_words < 2:
            raise ValueError("max_words must be >= 2")
        if not 0.0 < self.ratio < 1.0:
            raise ValueError("ratio must lie strictly between 0 and 1")
        fracs = self.partition_fractions
        if len(fracs) != 3 or any(f < 0 for f in fracs):
            raise ValueError("partition_fractions must be three non-negative reals")
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise ValueError("partition_fractions must sum to 1")


@dataclass
class IngestReport:
    """Counts gathered while building pairs, for the human-readable report."""

    pair_counts: dict[str, int] = field(default_factory=dict)
    skipped_short_sentences: int = 0
    documents: int = 0
    songs: int = 0
    skipped_songs: int = 0

    def count(self, origin: PairOrigin) -> None:
        self.pair_counts[origin.value] = self.pair_counts.get(origin.value, 0) + 1

    def to_text(self) -> str:
        lines = ["ingestion report", "================"]
        if self.documents:
            lines.append(f"documents ingested: {self.documents}")
        if self.songs:
            lines.append(f"songs ingested: {self.songs} (skipped: {self.skipped_songs})")
        for origin in sorted(self.pair_counts):
            lines.append(f"pairs [{origin}]: {self.pair_counts[origin]}")
        lines.append(f"sentences skipped (fewer than 2 words): {self.skipped_short_sentences}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "pair_counts": dict(sorted(self.pair_counts.items())),
            "skipped_short_sentences": self.skipped_short_sentences,
            "documents": self.documents,
            "songs": self.songs,
            "skipped_songs": self.skipped_songs,
        }


def _word_units(tokens: list[Token]) -> list[list[Token]]:
    """Group tokens into units of one word plus any trailing punctuation.

    Leading punctuation (before the first word) attaches forward to the
    first unit so nothing is dropped.
    """
    units: list[list[Token]] = []
    pending: list[Token] = []
    for tok in tokens:
        if tok.kind is TokenKind.PUNCTUATION:
            if units:
                units[-1].append(tok)
            else:
                pending.append(tok)
        else:
            units.append(pending + [tok])
            pending = []
    if pending:
        # punctuation-only tail (or a punctuation-only sentence)
        if units:
            units[-1].extend(pending)
        else:
            units.append(pending)
    return units


def word_count(tokens: list[Token]) -> int:
    """Number of non-punctuation tokens."""
    return sum(1 for t in tokens if t.kind is not TokenKind.PUNCTUATION)


def chunk_long_sentence(sentence: Sentence, max_words: int) -> list[Sentence]:
    """Split a sentence into consecutive chunks of at most max_words words.

    Every chunk except the last holds exactly max_words words; chunk
    concatenation reproduces the original token sequence. Chunks inherit
    the originating sentence's source span.
    """
    if max_words < 2:
        raise ValueError("max_words must be >= 2")
    if word_count(sentence.tokens) <= max_words:
        return [sentence]
    units = _word_units(sentence.tokens)
    chunks = []
    for i in range(0, len(units), max_words):
        group = units[i : i + max_words]
        tokens = [tok for unit in group for tok in unit]
        chunks.append(Sentence(tokens, sentence.source_span))
    return chunks


def half_split(sentence: Sentence, ratio: float = 0.5) -> tuple[list[Token], list[Token]]:
    """Split a sentence's tokens into two non-empty halves at a word boundary.

    The first half holds floor(ratio * n) words, clamped to [1, n-1]; no
    token is ever divided. Sentences with fewer than two words are rejected.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie strictly between 0 and 1")
    n = word_count(sentence.tokens)
    if n < 2:
        raise ValueError("cannot half-split a sentence with fewer than 2 words")
    k = min(max(int(ratio * n), 1), n - 1)
    units = _word_units(sentence.tokens)
    first = [tok for unit in units[:k] for tok in unit]
    second = [tok for unit in units[k:] for tok in unit]
    return first, second


def _strip_edge_punctuation(tokens: list[Token]) -> list[Token]:
    lo, hi = 0, len(tokens)
    while lo < hi and tokens[lo].kind is TokenKind.PUNCTUATION:
        lo += 1
    while hi > lo and tokens[hi - 1].kind is TokenKind.PUNCTUATION:
        hi -= 1
    return tokens[lo:hi]


def build_books_pairs(
    documents: Iterable[tuple[str, str]],
    cfg: SplitConfig | None = None,
    report: IngestReport | None = None,
) -> list[TrainingPair]:
    """Build context+skeleton pairs (and raw-text baseline pairs) from prose.

    Each chunked sentence with at least two words yields one books_vocab
    pair ``detok(s1) + " " + tags(s2) -> detok(s2)`` and one parallel
    books_raw pair ``detok(s1) -> detok(s2)`` sharing the provenance index.
    Sentence-edge punctuation (final periods, enclosing quotes) is dropped
    from each chunk so targets read like lyric lines; internal punctuation
    stays.
    """
    cfg = cfg or SplitConfig()
    report = report if report is not None else IngestReport()
    pairs: list[TrainingPair] = []
    for doc_id, text in documents:
        report.documents += 1
        idx = 0
        for sentence in split_sentences(text):
            for chunk in chunk_long_sentence(sentence, cfg.max_words):
                tokens = _strip_edge_punctuation(chunk.tokens)
                if word_count(tokens) < 2:
                    report.skipped_short_sentences += 1
                    continue
                trimmed = Sentence(tokens, chunk.source_span)
                s1, s2 = half_split(trimmed, cfg.ratio)
                tags = " ".join(tt.tag.tag for tt in pos_tag(s2))
                vocab_pair = TrainingPair(
                    input=detokenize(s1) + " " + tags,
                    target=detokenize(s2),
                    origin=PairOrigin.BOOKS_VOCAB,
                    provenance=(doc_id, idx),
                )
                raw_pair = TrainingPair(
                    input=detokenize(s1),
                    target=detokenize(s2),
                    origin=PairOrigin.BOOKS_RAW,
                    provenance=(doc_id, idx),
                )
                pairs.append(vocab_pair)
                pairs.append(raw_pair)
                report.count(PairOrigin.BOOKS_VOCAB)
                report.count(PairOrigin.BOOKS_RAW)
                idx += 1
    return pairs


def build_lyrics_pairs(
    songs: Iterable[Song],
    report: IngestReport | None = None,
) -> list[TrainingPair]:
    """Build line-shifted pairs per song, as tag sequences and raw lines.

    Pairs never cross song boundaries; songs with fewer than two lines
    contribute nothing.
    """
    from .textproc import normalize_line, pos_string

    report = report if report is not None else IngestReport()
    pairs: list[TrainingPair] = []
    for song in songs:
        report.songs += 1
        if len(song.lines) < 2:
            report.skipped_songs += 1
            continue
        for i in range(len(song.lines) - 1):
            cur, nxt = song.lines[i], song.lines[i + 1]
            pairs.append(
                TrainingPair(
                    input=pos_string(cur),
                    target=pos_string(nxt),
                    origin=PairOrigin.LYRICS_STRUCTURE,
                    provenance=(song.id, i),
                )
            )
            pairs.append(
                TrainingPair(
                    input=normalize_line(cur),
                    target=normalize_line(nxt),
                    origin=PairOrigin.LYRICS_RAW,
                    provenance=(song.id, i),
                )
            )
            report.count(PairOrigin.LYRICS_STRUCTURE)
            report.count(PairOrigin.LYRICS_RAW)
    return pairs


def partition(
    pairs: list[TrainingPair], cfg: SplitConfig
) -> tuple[list[TrainingPair], list[TrainingPair], list[TrainingPair]]:
    """Deterministically shuffle and split pairs into train/validation/test.

    Sizes follow the configured fractions via largest-remainder rounding,
    so they match within one element; the three lists are disjoint and
    their union is the input.
    """
    order = list(range(len(pairs)))
    random.Random(cfg.seed).shuffle(order)
    shuffled = [pairs[i] for i in order]

    n = len(pairs)
    fracs = cfg.partition_fractions
    sizes = [int(f * n) for f in fracs]
    remainders = [(f * n - int(f * n), -i) for i, f in enumerate(fracs)]
    leftover = n - sum(sizes)
    for _, neg_i in sorted(remainders, reverse=True)[:leftover]:
        sizes[-neg_i] += 1

    train = shuffled[: sizes[0]]
    validation = shuffled[sizes[0] : sizes[0] + sizes[1]]
    test = shuffled[sizes[0] + sizes[1] :]
    return train, validation, test


# --- JSONL interchange -----------------------------------------------------


def pair_to_json(pair: TrainingPair) -> dict:
    return {
        "input": pair.input,
        "target": pair.target,
        "origin": pair.origin.value,
        "doc": pair.provenance[0],
        "idx": pair.provenance[1],
    }


def pair_from_json(obj: dict) -> TrainingPair:
    return TrainingPair(
        input=obj["input"],
        target=obj["target"],
        origin=PairOrigin(obj["origin"]),
        provenance=(obj["doc"], obj["idx"]),
    )


def write_pairs(pairs: Iterable[TrainingPair], out: TextIO) -> None:
    for pair in pairs:
        out.write(json.dumps(pair_to_json(pair), ensure_ascii=False) + "\n")


def read_pairs(path: str | Path) -> list[TrainingPair]:
    pairs = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                pairs.append(pair_from_json(json.loads(line)))
    return pairs


def read_songs(path: str | Path) -> list[Song]:
    """Read the JSON Lines song format: {"id", "genre", "lines"}."""
    songs = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                obj = json.loads(line)
                songs.append(Song(id=obj["id"], genre=obj.get("genre", ""), lines=list(obj["lines"])))
    return songs
