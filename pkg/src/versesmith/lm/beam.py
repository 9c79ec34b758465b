"""Deterministic beam search over a trained sequence model.

Hypotheses are expanded token by token from the context ``input <sep>``;
choosing EOS finishes a hypothesis, and hypotheses reaching ``max_len``
finish as-is. Sentinels are never emitted into candidates. Ranking is by
descending score with ties broken lexicographically on the token strings,
so results are reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

import numpy as np

from .ngram import SequenceModel
from .vocab import EOS_ID, SEP_ID, UNK_ID


@dataclass(frozen=True)
class Candidate:
    """One decoded continuation: surface tokens and summed log-probability."""

    tokens: tuple[str, ...]
    score: float

    def __post_init__(self):
        if self.score > 0:
            raise ValueError("candidate score must be a log-probability (<= 0)")

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def beam_decode(
    model: SequenceModel,
    input_text: str,
    width: int,
    max_len: int | None = None,
) -> list[Candidate]:
    """Return up to ``width`` continuations of ``input_text``, best first.

    Keeps the ``width`` highest-scoring partial hypotheses per step. At a
    width no smaller than the number of possible sequences nothing is ever
    pruned and the result equals exhaustive enumeration. May return fewer
    than ``width`` candidates when fewer hypotheses reach completion.
    """
    if width < 1:
        raise ValueError("width must be >= 1")
    if max_len is None:
        config = getattr(model, "config", None)
        max_len = config.max_decode_len if config is not None else 25

    vocab = model.vocab
    token_of = vocab.token_of
    base_ids = vocab.encode(input_text.split()) + [SEP_ID]
    # decoding emits only tokens the model observed on the target side
    emittable = getattr(model, "emittable", None)
    blocked = None if emittable is None else ~np.asarray(emittable, dtype=bool)

    def words(seq: tuple[int, ...]) -> tuple[str, ...]:
        return tuple(token_of[i] for i in seq)

    def sort_key(item: tuple[float, tuple[int, ...]]):
        score, seq = item
        return (-score, words(seq))

    live: list[tuple[float, tuple[int, ...]]] = [(0.0, ())]
    finished: list[tuple[float, tuple[int, ...]]] = []

    for _depth in range(max_len):
        pool: list[tuple[float, tuple[int, ...]]] = []
        for score, seq in live:
            probs = model.distribution_ids(base_ids + list(seq))
            with np.errstate(divide="ignore"):
                logp = np.minimum(np.log(probs), 0.0)
            p_eos = logp[EOS_ID]
            if isfinite(p_eos):
                finished.append((score + float(p_eos), seq))
            logp[UNK_ID] = logp[SEP_ID] = logp[EOS_ID] = -np.inf
            if blocked is not None:
                logp[blocked] = -np.inf
            finite = int(np.isfinite(logp).sum())
            k = min(width, finite)
            if k == 0:
                continue
            # kth-largest cut, keeping ties so lexicographic break stays exact
            kth = np.partition(logp, len(logp) - k)[len(logp) - k]
            for tid in np.nonzero(logp >= kth)[0]:
                pool.append((score + float(logp[tid]), seq + (int(tid),)))
        pool.sort(key=sort_key)
        live = pool[:width]
        if not live:
            break
    finished.extend(live)  # hypotheses truncated at max_len

    finished.sort(key=sort_key)
    return [Candidate(words(seq), score) for score, seq in finished[:width]]
