"""Per-verse repetition and length statistics, aggregated as mean ± stderr.

Four statistics per verse: mean words per line, mean word length per line,
number of consecutive line repeats, and the fraction of each line's unique
words already present in the previous line. Lines are compared under
whitespace/punctuation-spacing normalization and lowercasing, since
near-identical lyric lines frequently differ only in spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .composer import Verse
from .textproc import TokenKind, normalize_line, tokenize

_WORD_CHARS_EXTRA = "'’"  # apostrophes count toward word length


@dataclass(frozen=True)
class VerseStats:
    words_per_line: float
    avg_word_length: float
    line_repeats: int
    repeated_word_fraction: float

    def __post_init__(self):
        if self.line_repeats < 0:
            raise ValueError("line_repeats must be non-negative")
        if not 0.0 <= self.repeated_word_fraction <= 1.0:
            raise ValueError("repeated_word_fraction must lie in [0, 1]")


STAT_NAMES = ("words_per_line", "avg_word_length", "line_repeats", "repeated_word_fraction")


@dataclass(frozen=True)
class AggregateStats:
    """Per-statistic (mean, stderr) over n verses."""

    means: dict[str, float]
    stderrs: dict[str, float]
    n: int


def _word_tokens(line: str) -> list[str]:
    return [t.surface for t in tokenize(line) if t.kind is not TokenKind.PUNCTUATION]


def _word_length(surface: str) -> int:
    return sum(1 for c in surface if c.isalnum() or c in _WORD_CHARS_EXTRA)


def _normalize(line: str) -> str:
    return normalize_line(line).lower()


def _unique_words(line: str) -> set[str]:
    return {w.lower() for w in _word_tokens(line)}


def verse_stats(verse: Verse) -> VerseStats:
    """Compute the four statistics for one verse (needs >= 2 lines)."""
    lines = list(verse.lines)
    if len(lines) < 2:
        raise ValueError("pairwise verse statistics need at least 2 lines")

    word_counts = []
    length_means = []
    for line in lines:
        words = _word_tokens(line)
        word_counts.append(len(words))
        length_means.append(
            sum(_word_length(w) for w in words) / len(words) if words else 0.0
        )

    repeats = 0
    fractions = []
    for prev, cur in zip(lines, lines[1:]):
        if _normalize(prev) == _normalize(cur):
            repeats += 1
        cur_words = _unique_words(cur)
        if cur_words:
            fractions.append(len(cur_words & _unique_words(prev)) / len(cur_words))
        else:
            fractions.append(0.0)

    return VerseStats(
        words_per_line=sum(word_counts) / len(lines),
        avg_word_length=sum(length_means) / len(lines),
        line_repeats=repeats,
        repeated_word_fraction=sum(fractions) / len(fractions),
    )


def aggregate(stats: list[VerseStats]) -> AggregateStats:
    """Mean and standard error (sample sd / sqrt(n); 0 when n = 1)."""
    if not stats:
        raise ValueError("cannot aggregate an empty statistics list")
    n = len(stats)
    means: dict[str, float] = {}
    stderrs: dict[str, float] = {}
    for name in STAT_NAMES:
        values = [float(getattr(s, name)) for s in stats]
        mean = sum(values) / n
        if n == 1:
            stderr = 0.0
        else:
            variance = sum((v - mean) ** 2 for v in values) / (n - 1)
            stderr = math.sqrt(variance) / math.sqrt(n)
        means[name] = mean
        stderrs[name] = stderr
    return AggregateStats(means=means, stderrs=stderrs, n=n)


def aggregate_to_json(agg: AggregateStats) -> dict:
    return {
        "n": agg.n,
        "stats": {
            name: {"mean": agg.means[name], "stderr": agg.stderrs[name]}
            for name in STAT_NAMES
        },
    }


def format_report(per_generator: dict[str, AggregateStats]) -> str:
    """Fixed-width text table: one row per generator, four ± columns."""
    headers = ["generator", "words/line", "word length", "line repeats", "repeated words"]
    rows = [headers]
    for name in sorted(per_generator):
        agg = per_generator[name]
        row = [name]
        for stat in STAT_NAMES:
            row.append(f"{agg.means[stat]:.3f} ± {agg.stderrs[stat]:.3f}")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(headers))]
    out = []
    for i, row in enumerate(rows):
        out.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"
