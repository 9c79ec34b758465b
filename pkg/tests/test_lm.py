from __future__ import annotations

import io
import json
import zipfile

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from versesmith.corpus import PairOrigin, TrainingPair
from versesmith.lm import (
    ModelError,
    ModelFormatError,
    ModelRole,
    NgramConfig,
    deserialize,
    fit,
    next_token_distribution,
    serialize,
)
from versesmith.lm.ngram import high_order_weights


def pair(inp, tgt, origin=PairOrigin.BOOKS_RAW, idx=0):
    return TrainingPair(inp, tgt, origin, ("t", idx))


ONE_PAIR = [pair("a b", "c d")]


class TestFit:
    def test_one_pair_hand_counts(self):
        """Hand-computed interpolation on the corpus {a b -> c d}, order 2.

        Linearized: a b <sep> c d <eos>. Unigram: six tokens, once each.
        After context <sep> the bigram table holds only c (count 1 of 1),
        so P(c) = 0.5 * 1 + 0.5 * (1/6) = 7/12.
        """
        model = fit(ONE_PAIR, NgramConfig(order=2))
        dist = next_token_distribution(model, ["a", "b", "<sep>"])
        assert dist["c"] == pytest.approx(7 / 12, abs=1e-12)
        assert max(dist, key=dist.get) == "c"
        # an unigram-only token after the same context
        assert dist["a"] == pytest.approx(0.5 * (1 / 6), abs=1e-12)

    def test_role_follows_origin(self):
        cases = {
            PairOrigin.LYRICS_STRUCTURE: ModelRole.STRUCTURE,
            PairOrigin.BOOKS_VOCAB: ModelRole.VOCAB,
            PairOrigin.LYRICS_RAW: ModelRole.PURE_LYRICS,
            PairOrigin.BOOKS_RAW: ModelRole.PURE_BOOKS,
        }
        for origin, role in cases.items():
            inp = "DT NN" if origin is PairOrigin.LYRICS_STRUCTURE else "a b"
            tgt = "DT" if origin is PairOrigin.LYRICS_STRUCTURE else "c"
            if origin is PairOrigin.BOOKS_VOCAB:
                inp = "a b DT"
            assert fit([pair(inp, tgt, origin)], NgramConfig(order=2)).role is role

    def test_empty_corpus(self):
        with pytest.raises(ModelError, match="empty corpus"):
            fit([], NgramConfig(order=2))

    def test_heterogeneous_corpus(self):
        pairs = [pair("a", "b", PairOrigin.BOOKS_RAW), pair("a", "b", PairOrigin.LYRICS_RAW)]
        with pytest.raises(ModelError, match="heterogeneous"):
            fit(pairs, NgramConfig(order=2))

    def test_deterministic_bytes(self):
        pairs = [pair("a b", "c d"), pair("b a", "d c", idx=1), pair("c", "a b a", idx=2)]
        cfg = NgramConfig(order=3)
        assert serialize(fit(pairs, cfg)) == serialize(fit(pairs, cfg))

    def test_unk_threshold_default_keeps_hapaxes(self):
        model = fit(ONE_PAIR, NgramConfig(order=2))
        assert "c" in model.vocab.id_of

    def test_unk_threshold_two_drops_hapaxes(self):
        pairs = [pair("a a b", "a c")]
        model = fit(pairs, NgramConfig(order=2, unk_threshold=2))
        assert "a" in model.vocab.id_of
        assert "b" not in model.vocab.id_of
        assert "c" not in model.vocab.id_of

    def test_emittable_marks_target_side_only(self):
        pairs = [pair("x y", "z w")]
        model = fit(pairs, NgramConfig(order=2))
        ids = model.vocab.id_of
        assert model.emittable[ids["z"]] and model.emittable[ids["w"]]
        assert not model.emittable[ids["x"]] and not model.emittable[ids["y"]]
        assert not model.emittable[:3].any()


class TestDistribution:
    def test_sums_to_one(self):
        model = fit(ONE_PAIR, NgramConfig(order=2))
        for ctx in (["a"], ["a", "b", "<sep>"], [], ["zzz"], ["c", "d"]):
            assert sum(next_token_distribution(model, ctx).values()) == pytest.approx(1.0, abs=1e-9)

    def test_oov_context_equals_unk_substitution(self):
        model = fit(ONE_PAIR, NgramConfig(order=3))
        with_oov = model.distribution(["never-seen", "b", "<sep>"])
        with_unk = model.distribution(["<unk>", "b", "<sep>"])
        assert np.array_equal(with_oov, with_unk)

    def test_covers_full_vocabulary(self):
        model = fit(ONE_PAIR, NgramConfig(order=2))
        dist = next_token_distribution(model, ["a"])
        assert set(dist) == set(model.vocab.token_of)

    @given(st.lists(st.sampled_from(["a", "b", "c", "d", "zz"]), max_size=8),
           st.integers(2, 5))
    @settings(max_examples=150)
    def test_normalization_property(self, ctx, order):
        pairs = [pair("a b", "c d"), pair("b c", "a", idx=1), pair("d", "b b c", idx=2)]
        model = fit(pairs, NgramConfig(order=order))
        probs = model.distribution(ctx)
        assert abs(float(probs.sum()) - 1.0) < 1e-9
        assert float(probs.min()) >= 0.0 and float(probs.max()) <= 1.0

    def test_zero_unigram_weight_backoff(self):
        cfg = NgramConfig(order=2, interpolation_weights=(0.0, 1.0))
        model = fit(ONE_PAIR, cfg)
        # seen context: pure bigram
        assert next_token_distribution(model, ["a"])["b"] == pytest.approx(1.0)
        # unseen context: falls back to the raw unigram estimate
        dist = next_token_distribution(model, ["d", "d"])
        assert sum(dist.values()) == pytest.approx(1.0, abs=1e-9)


class TestConfig:
    def test_order_bounds(self):
        with pytest.raises(ValueError):
            NgramConfig(order=1)

    def test_weight_validation(self):
        with pytest.raises(ValueError):
            NgramConfig(order=3, interpolation_weights=(0.5, 0.5))
        with pytest.raises(ValueError):
            NgramConfig(order=2, interpolation_weights=(0.9, 0.2))
        with pytest.raises(ValueError):
            NgramConfig(order=2, interpolation_weights=(-0.1, 1.1))

    def test_default_weights_uniform(self):
        assert NgramConfig(order=4).weights == (0.25, 0.25, 0.25, 0.25)

    def test_high_order_weights(self):
        w = high_order_weights(4)
        assert sum(w) == pytest.approx(1.0)
        assert w == (1 / 15, 2 / 15, 4 / 15, 8 / 15)

    def test_unk_threshold_minimum(self):
        with pytest.raises(ValueError):
            NgramConfig(order=2, unk_threshold=0)


class TestSerialization:
    def test_round_trip_scores_identical(self):
        pairs = [pair("a b", "c d"), pair("b a", "d c", idx=1), pair("a c", "b d", idx=2)]
        model = fit(pairs, NgramConfig(order=4))
        clone = deserialize(serialize(model))
        rng = np.random.default_rng(0)
        tokens = list(model.vocab.token_of)
        for _ in range(100):
            ctx = [tokens[i] for i in rng.integers(0, len(tokens), rng.integers(0, 6))]
            assert np.array_equal(model.distribution(ctx), clone.distribution(ctx))
        assert clone.role is model.role
        assert clone.config == model.config
        assert np.array_equal(clone.emittable, model.emittable)

    def test_truncated_payload(self):
        data = serialize(fit(ONE_PAIR, NgramConfig(order=2)))
        with pytest.raises(ModelFormatError, match="corrupt"):
            deserialize(data[: len(data) // 2])

    def test_garbage_payload(self):
        with pytest.raises(ModelFormatError):
            deserialize(b"not a model at all")

    def test_version_mismatch_names_versions(self):
        data = serialize(fit(ONE_PAIR, NgramConfig(order=2)))
        src = zipfile.ZipFile(io.BytesIO(data))
        out = io.BytesIO()
        with zipfile.ZipFile(out, "w") as zf:
            for name in src.namelist():
                payload = src.read(name)
                if name == "meta.json":
                    meta = json.loads(payload)
                    meta["format_version"] = 99
                    payload = json.dumps(meta).encode()
                zf.writestr(name, payload)
        with pytest.raises(ModelFormatError, match="99.*expected 1"):
            deserialize(out.getvalue())
