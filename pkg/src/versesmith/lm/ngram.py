"""Interpolated n-gram sequence model over linearized input/target pairs.

Each training pair becomes one token sequence ``input <sep> target <eos>``.
Counts are kept per order; scoring linearly interpolates the maximum-
likelihood estimates of every order whose context was observed, which
keeps every conditional distribution summing to exactly 1. This is the
bundled reference backend for the sequence-model contract; a neural
backend can implement the same base class.
"""

from __future__ import annotations

import io
import json
import zipfile
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..corpus import PairOrigin, TrainingPair
from .kernels import interpolated_distribution
from .vocab import BOS_ID, EOS_ID, EOS_TOKEN, SEP_ID, SEP_TOKEN, UNK_ID, UNK_TOKEN, Vocabulary

MODEL_FORMAT_VERSION = 1


class ModelError(ValueError):
    """Invalid training input or model state."""


class ModelFormatError(ValueError):
    """Serialized payload is corrupt or has the wrong version."""


class ModelRole(str, Enum):
    STRUCTURE = "structure"
    VOCAB = "vocab"
    PURE_LYRICS = "pure_lyrics"
    PURE_BOOKS = "pure_books"


ROLE_OF_ORIGIN = {
    PairOrigin.LYRICS_STRUCTURE: ModelRole.STRUCTURE,
    PairOrigin.BOOKS_VOCAB: ModelRole.VOCAB,
    PairOrigin.LYRICS_RAW: ModelRole.PURE_LYRICS,
    PairOrigin.BOOKS_RAW: ModelRole.PURE_BOOKS,
}


@dataclass(frozen=True)
class NgramConfig:
    order: int = 4
    interpolation_weights: tuple[float, ...] | None = None
    unk_threshold: int = 1
    max_decode_len: int = 25

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.unk_threshold < 1:
            raise ValueError("unk_threshold must be >= 1")
        if self.max_decode_len < 1:
            raise ValueError("max_decode_len must be >= 1")
        if self.interpolation_weights is not None:
            w = self.interpolation_weights
            if len(w) != self.order:
                raise ValueError("need one interpolation weight per order")
            if any(x < 0 for x in w):
                raise ValueError("interpolation weights must be non-negative")
            if abs(sum(w) - 1.0) > 1e-9:
                raise ValueError("interpolation weights must sum to 1")

    @property
    def weights(self) -> tuple[float, ...]:
        if self.interpolation_weights is not None:
            return self.interpolation_weights
        return tuple([1.0 / self.order] * self.order)


def high_order_weights(order: int) -> tuple[float, ...]:
    """Interpolation weights doubling per order (w_k proportional to 2^k).

    Concentrating mass on the highest observed order keeps the smoothing
    floor from letting early EOS outscore full-length continuations, so
    generation-oriented training uses these instead of the uniform default.
    """
    raw = [float(2 ** k) for k in range(order)]
    total = sum(raw)
    return tuple(w / total for w in raw)


class SequenceModel:
    """Base class for conditional sequence models usable by beam search.

    Subclasses supply ``vocab``, ``role`` and ``distribution_ids``; the
    string-level API and normalization contract live here.
    """

    vocab: Vocabulary
    role: ModelRole

    def distribution_ids(self, context_ids: list[int]) -> np.ndarray:
        """Next-token probabilities over all vocabulary ids (incl. EOS)."""
        raise NotImplementedError

    def distribution(self, context_tokens: list[str]) -> np.ndarray:
        """Like distribution_ids, with unknown tokens mapped to UNK."""
        return self.distribution_ids(self.vocab.encode(context_tokens))


def next_token_distribution(model: SequenceModel, context: list[str]) -> dict[str, float]:
    """Full next-token distribution as a token->probability mapping."""
    probs = model.distribution(context)
    return {tok: float(p) for tok, p in zip(model.vocab.token_of, probs)}


class NgramModel(SequenceModel):
    """Trained interpolated n-gram model (immutable after fit/load)."""

    def __init__(
        self,
        vocab: Vocabulary,
        config: NgramConfig,
        role: ModelRole,
        unigram: np.ndarray,
        tables: list[dict[tuple[int, ...], tuple[np.ndarray, np.ndarray, float]]],
        emittable: np.ndarray | None = None,
    ):
        if unigram.sum() <= 0:
            raise ModelError("model has no counts; fit it on a corpus first")
        self.vocab = vocab
        self.config = config
        self.role = role
        self.unigram = unigram.astype(np.float64)
        self.unigram_total = float(self.unigram.sum())
        self.tables = tables
        # which ids decoding may emit: tokens observed on the target side
        # (sentinels excluded; EOS is handled by the decoder itself)
        if emittable is None:
            emittable = np.ones(len(vocab), dtype=bool)
            emittable[:3] = False
        self.emittable = emittable
        self._weights = np.asarray(config.weights, dtype=np.float64)

    def distribution_ids(self, context_ids: list[int]) -> np.ndarray:
        order = self.config.order
        padded = [BOS_ID] * (order - 1) + list(context_ids)
        rows = [
            self.tables[k - 2].get(tuple(padded[len(padded) - (k - 1):]))
            for k in range(2, order + 1)
        ]
        out = np.empty(len(self.vocab), dtype=np.float64)
        interpolated_distribution(self.unigram, self.unigram_total, self._weights, rows, out)
        return out


def fit(pairs: list[TrainingPair], cfg: NgramConfig | None = None) -> NgramModel:
    """Train an n-gram model on pairs sharing a single origin.

    Tokens whose corpus frequency falls below ``unk_threshold`` are
    replaced by UNK (at the default threshold of 1 every observed token is
    kept and UNK only absorbs out-of-vocabulary input at scoring time).
    Training is deterministic: identical pairs and config produce a
    byte-identical serialized model.
    """
    cfg = cfg or NgramConfig()
    if not pairs:
        raise ModelError("empty corpus")
    origins = {p.origin for p in pairs}
    if len(origins) > 1:
        names = ", ".join(sorted(o.value for o in origins))
        raise ModelError(f"heterogeneous corpus: mixed origins ({names})")
    role = ROLE_OF_ORIGIN[next(iter(origins))]

    tokenized = [(p.input.split(), p.target.split()) for p in pairs]
    freq: dict[str, int] = {}
    for inp, tgt in tokenized:
        for tok in inp:
            freq[tok] = freq.get(tok, 0) + 1
        for tok in tgt:
            freq[tok] = freq.get(tok, 0) + 1
    kept = {tok for tok, n in freq.items() if n >= cfg.unk_threshold}
    vocab = Vocabulary.build(kept)

    order = cfg.order
    unigram = np.zeros(len(vocab), dtype=np.float64)
    emittable = np.zeros(len(vocab), dtype=bool)
    raw_tables: list[dict[tuple[int, ...], dict[int, int]]] = [{} for _ in range(order - 1)]
    for inp, tgt in tokenized:
        tgt_ids = vocab.encode(tgt)
        for tid in tgt_ids:
            emittable[tid] = True
        ids = vocab.encode(inp) + [SEP_ID] + tgt_ids + [EOS_ID]
        padded = [BOS_ID] * (order - 1) + ids
        for pos, target_id in enumerate(ids):
            unigram[target_id] += 1
            end = pos + order - 1
            for k in range(2, order + 1):
                ctx = tuple(padded[end - (k - 1): end])
                row = raw_tables[k - 2].setdefault(ctx, {})
                row[target_id] = row.get(target_id, 0) + 1

    tables: list[dict[tuple[int, ...], tuple[np.ndarray, np.ndarray, float]]] = []
    for raw in raw_tables:
        table = {}
        for ctx in sorted(raw):
            row = raw[ctx]
            ids_arr = np.array(sorted(row), dtype=np.int32)
            counts_arr = np.array([row[i] for i in ids_arr], dtype=np.float64)
            table[ctx] = (ids_arr, counts_arr, float(counts_arr.sum()))
        tables.append(table)

    emittable[:3] = False  # sentinels are never surface emissions
    return NgramModel(vocab, cfg, role, unigram, tables, emittable)


# --- serialization ----------------------------------------------------------


def _npy_bytes(arr: np.ndarray) -> bytes:
    buf = io.BytesIO()
    np.save(buf, arr, allow_pickle=False)
    return buf.getvalue()


def serialize(model: NgramModel) -> bytes:
    """Versioned zip container: meta.json plus one array set per order."""
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:

        def add(name: str, data: bytes) -> None:
            # fixed timestamp so identical models serialize byte-identically
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            zf.writestr(info, data)

        meta = {
            "format_version": MODEL_FORMAT_VERSION,
            "role": model.role.value,
            "config": {
                "order": model.config.order,
                "interpolation_weights": list(model.config.interpolation_weights)
                if model.config.interpolation_weights is not None
                else None,
                "unk_threshold": model.config.unk_threshold,
                "max_decode_len": model.config.max_decode_len,
            },
            "vocab": list(model.vocab.token_of),
        }
        add("meta.json", json.dumps(meta, ensure_ascii=False, sort_keys=True).encode("utf-8"))
        add("unigram.npy", _npy_bytes(model.unigram.astype(np.int64)))
        add("emittable.npy", _npy_bytes(model.emittable.astype(np.uint8)))
        for k in range(2, model.config.order + 1):
            table = model.tables[k - 2]
            contexts = np.array(sorted(table), dtype=np.int32).reshape(len(table), k - 1)
            offsets = np.zeros(len(table) + 1, dtype=np.int64)
            all_ids: list[np.ndarray] = []
            all_counts: list[np.ndarray] = []
            for i, ctx in enumerate(sorted(table)):
                ids_arr, counts_arr, _ = table[ctx]
                all_ids.append(ids_arr)
                all_counts.append(counts_arr.astype(np.int64))
                offsets[i + 1] = offsets[i] + len(ids_arr)
            add(f"order{k}.contexts.npy", _npy_bytes(contexts))
            add(f"order{k}.offsets.npy", _npy_bytes(offsets))
            add(f"order{k}.ids.npy", _npy_bytes(
                np.concatenate(all_ids) if all_ids else np.zeros(0, dtype=np.int32)))
            add(f"order{k}.counts.npy", _npy_bytes(
                np.concatenate(all_counts) if all_counts else np.zeros(0, dtype=np.int64)))
    return buf.getvalue()


def deserialize(data: bytes) -> NgramModel:
    """Inverse of serialize; rejects wrong versions and corrupt payloads."""
    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
        meta = json.loads(zf.read("meta.json").decode("utf-8"))
    except (zipfile.BadZipFile, KeyError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"corrupt model payload: {exc}") from exc

    version = meta.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format version {version!r}, expected {MODEL_FORMAT_VERSION}"
        )
    try:
        cfg_raw = meta["config"]
        cfg = NgramConfig(
            order=cfg_raw["order"],
            interpolation_weights=tuple(cfg_raw["interpolation_weights"])
            if cfg_raw["interpolation_weights"] is not None
            else None,
            unk_threshold=cfg_raw["unk_threshold"],
            max_decode_len=cfg_raw["max_decode_len"],
        )
        role = ModelRole(meta["role"])
        vocab = Vocabulary(tuple(meta["vocab"]))

        def load(name: str) -> np.ndarray:
            return np.load(io.BytesIO(zf.read(name)), allow_pickle=False)

        unigram = load("unigram.npy").astype(np.float64)
        emittable = load("emittable.npy").astype(bool)
        tables = []
        for k in range(2, cfg.order + 1):
            contexts = load(f"order{k}.contexts.npy")
            offsets = load(f"order{k}.offsets.npy")
            ids_flat = load(f"order{k}.ids.npy")
            counts_flat = load(f"order{k}.counts.npy").astype(np.float64)
            table = {}
            for i in range(contexts.shape[0]):
                lo, hi = int(offsets[i]), int(offsets[i + 1])
                ids_arr = np.ascontiguousarray(ids_flat[lo:hi])
                counts_arr = np.ascontiguousarray(counts_flat[lo:hi])
                table[tuple(int(x) for x in contexts[i])] = (
                    ids_arr, counts_arr, float(counts_arr.sum()))
            tables.append(table)
    except (KeyError, ValueError, OSError) as exc:
        raise ModelFormatError(f"corrupt model payload: {exc}") from exc
    return NgramModel(vocab, cfg, role, unigram, tables, emittable)


def save_model(model: NgramModel, path) -> None:
    with open(path, "wb") as f:
        f.write(serialize(model))


def load_model(path) -> NgramModel:
    with open(path, "rb") as f:
        return deserialize(f.read())
