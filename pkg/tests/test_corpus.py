from __future__ import annotations

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from versesmith.corpus import (
    IngestReport,
    PairOrigin,
    Song,
    SplitConfig,
    TrainingPair,
    build_books_pairs,
    build_lyrics_pairs,
    chunk_long_sentence,
    half_split,
    pair_from_json,
    pair_to_json,
    partition,
    word_count,
    write_pairs,
)
from versesmith.textproc import split_sentences, tokenize

WORDS = ["go", "run", "sing", "end", "top", "sun", "sky", "arm", "dog", "cat",
         "map", "red", "hat", "cup", "pen", "log", "bee", "owl", "fig", "ash"]


def sentence_of(n_words: int):
    text = " ".join(WORDS[i % len(WORDS)] for i in range(n_words))
    (s,) = split_sentences(text)
    return s


class TestChunking:
    def test_below_threshold_unchanged(self):
        s = sentence_of(8)
        assert chunk_long_sentence(s, 15) == [s]

    def test_31_words(self):
        chunks = chunk_long_sentence(sentence_of(31), 15)
        assert [word_count(c.tokens) for c in chunks] == [15, 15, 1]

    def test_30_words(self):
        chunks = chunk_long_sentence(sentence_of(30), 15)
        assert [word_count(c.tokens) for c in chunks] == [15, 15]

    def test_punctuation_travels_with_preceding_word(self):
        (s,) = split_sentences("one two three, four five six")
        chunks = chunk_long_sentence(s, 3)
        assert [t.surface for t in chunks[0].tokens] == ["one", "two", "three", ","]
        assert [t.surface for t in chunks[1].tokens] == ["four", "five", "six"]

    def test_bad_max_words(self):
        with pytest.raises(ValueError):
            chunk_long_sentence(sentence_of(5), 1)

    @given(st.integers(2, 60), st.integers(2, 20))
    @settings(max_examples=120)
    def test_concatenation_lossless(self, n_words, max_words):
        s = sentence_of(n_words)
        chunks = chunk_long_sentence(s, max_words)
        flat = [t.surface for c in chunks for t in c.tokens]
        assert flat == [t.surface for t in s.tokens]
        for c in chunks[:-1]:
            assert word_count(c.tokens) == max_words


class TestHalfSplit:
    def test_worked_example(self):
        (s,) = split_sentences("The quick brown fox jumped over the fence")
        s1, s2 = half_split(s, 0.5)
        assert " ".join(t.surface for t in s1) == "The quick brown fox"
        assert " ".join(t.surface for t in s2) == "jumped over the fence"

    def test_two_words(self):
        s1, s2 = half_split(sentence_of(2), 0.5)
        assert (word_count(s1), word_count(s2)) == (1, 1)

    def test_nine_words_floor(self):
        s1, s2 = half_split(sentence_of(9), 0.5)
        assert (word_count(s1), word_count(s2)) == (4, 5)

    def test_ratio_other_than_half(self):
        s1, s2 = half_split(sentence_of(10), 0.3)
        assert (word_count(s1), word_count(s2)) == (3, 7)

    def test_single_word_rejected(self):
        with pytest.raises(ValueError):
            half_split(sentence_of(1), 0.5)

    @given(st.integers(2, 40), st.floats(0.01, 0.99))
    @settings(max_examples=150)
    def test_halves_nonempty_and_lossless(self, n, ratio):
        s = sentence_of(n)
        s1, s2 = half_split(s, ratio)
        assert word_count(s1) >= 1 and word_count(s2) >= 1
        assert [t.surface for t in s1 + s2] == [t.surface for t in s.tokens]


class TestBooksPairs:
    def test_worked_example_pair(self):
        pairs = build_books_pairs([("doc", "The quick brown fox jumped over the fence")])
        vocab = [p for p in pairs if p.origin is PairOrigin.BOOKS_VOCAB]
        assert vocab[0].input == "The quick brown fox VBD IN DT NN"
        assert vocab[0].target == "jumped over the fence"

    def test_empty_document(self):
        assert build_books_pairs([("doc", "")]) == []

    def test_two_sentences_distinct_provenance(self):
        pairs = build_books_pairs([("doc", "The fox jumped over it. The dog sat on it.")])
        vocab = [p for p in pairs if p.origin is PairOrigin.BOOKS_VOCAB]
        assert len(vocab) >= 2
        assert len({p.provenance for p in vocab}) == len(vocab)

    def test_raw_pairs_parallel(self):
        pairs = build_books_pairs([("doc", "The fox jumped over the fence.")])
        vocab = [p for p in pairs if p.origin is PairOrigin.BOOKS_VOCAB]
        raw = [p for p in pairs if p.origin is PairOrigin.BOOKS_RAW]
        assert len(vocab) == len(raw)
        for v, r in zip(vocab, raw):
            assert v.provenance == r.provenance
            assert v.target == r.target
            assert v.input.startswith(r.input + " ")

    def test_tag_suffix_matches_target_length(self):
        pairs = build_books_pairs([("doc", "The old fox jumped over the little fence, slowly.")])
        from versesmith.textproc import tagset
        known = tagset()
        for p in pairs:
            if p.origin is not PairOrigin.BOOKS_VOCAB:
                continue
            toks = p.input.split()
            n_tags = 0
            for tok in reversed(toks):
                if tok in known:
                    n_tags += 1
                else:
                    break
            assert n_tags == len(p.target.split())

    def test_short_sentences_skipped_and_reported(self):
        report = IngestReport()
        pairs = build_books_pairs([("doc", "Stop. The fox jumped far.")], report=report)
        assert report.skipped_short_sentences == 1
        assert report.pair_counts["books_vocab"] == len(
            [p for p in pairs if p.origin is PairOrigin.BOOKS_VOCAB])


class TestLyricsPairs:
    def test_shift_by_one(self):
        songs = [Song("a", "pop", ["la la", "da da", "ba ba"])]
        pairs = build_lyrics_pairs(songs)
        structure = [p for p in pairs if p.origin is PairOrigin.LYRICS_STRUCTURE]
        raw = [p for p in pairs if p.origin is PairOrigin.LYRICS_RAW]
        assert len(structure) == 2 and len(raw) == 2
        assert raw[0].input == "la la" and raw[0].target == "da da"
        assert raw[1].input == "da da" and raw[1].target == "ba ba"

    def test_single_line_song(self):
        assert build_lyrics_pairs([Song("a", "pop", ["only line"])]) == []

    def test_no_cross_song_pairs(self):
        songs = [Song("a", "pop", ["a1", "a2", "a3"]), Song("b", "pop", ["b1", "b2", "b3"])]
        pairs = build_lyrics_pairs(songs)
        structure = [p for p in pairs if p.origin is PairOrigin.LYRICS_STRUCTURE]
        assert len(structure) == 4
        raw = [p for p in pairs if p.origin is PairOrigin.LYRICS_RAW]
        assert not any(p.input.startswith("a") and p.target.startswith("b") for p in raw)

    def test_count_per_song(self):
        for n in range(1, 6):
            songs = [Song("s", "pop", [f"line {i}" for i in range(n)])]
            pairs = build_lyrics_pairs(songs)
            per_origin = max(0, n - 1)
            assert len(pairs) == 2 * per_origin

    def test_structure_pairs_are_tag_strings(self):
        from versesmith.textproc import tagset
        pairs = build_lyrics_pairs([Song("a", "pop", ["the fox", "a fence"])])
        structure = [p for p in pairs if p.origin is PairOrigin.LYRICS_STRUCTURE]
        for p in structure:
            assert all(t in tagset() for t in (p.input + " " + p.target).split())

    def test_song_validation(self):
        with pytest.raises(ValueError):
            Song("a", "pop", [])
        with pytest.raises(ValueError):
            Song("a", "pop", ["ok", "   "])


class TestPartition:
    def _pairs(self, n):
        return [TrainingPair(f"in {i}", f"out {i}", PairOrigin.LYRICS_RAW, ("d", i))
                for i in range(n)]

    def test_sizes_100(self):
        cfg = SplitConfig(partition_fractions=(0.9, 0.05, 0.05), seed=7)
        train, val, test = partition(self._pairs(100), cfg)
        assert (len(train), len(val), len(test)) == (90, 5, 5)

    def test_empty(self):
        cfg = SplitConfig(seed=1)
        assert partition([], cfg) == ([], [], [])

    def test_deterministic(self):
        cfg = SplitConfig(seed=42)
        pairs = self._pairs(37)
        assert partition(pairs, cfg) == partition(pairs, cfg)

    def test_different_seed_different_shuffle(self):
        pairs = self._pairs(50)
        a = partition(pairs, SplitConfig(seed=1))
        b = partition(pairs, SplitConfig(seed=2))
        assert a != b

    @given(st.integers(0, 120), st.integers(0, 2 ** 31))
    @settings(max_examples=100)
    def test_bijection_within_one(self, n, seed):
        pairs = self._pairs(n)
        cfg = SplitConfig(partition_fractions=(0.8, 0.1, 0.1), seed=seed)
        train, val, test = partition(pairs, cfg)
        combined = train + val + test
        assert sorted(p.provenance for p in combined) == sorted(p.provenance for p in pairs)
        assert len(set(p.provenance for p in combined)) == n
        for got, frac in zip((train, val, test), cfg.partition_fractions):
            assert abs(len(got) - frac * n) <= 1

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SplitConfig(max_words=1)
        with pytest.raises(ValueError):
            SplitConfig(ratio=0.0)
        with pytest.raises(ValueError):
            SplitConfig(partition_fractions=(0.5, 0.2, 0.2))


class TestPairValidation:
    def test_empty_sides_rejected(self):
        with pytest.raises(ValueError):
            TrainingPair("", "x", PairOrigin.LYRICS_RAW, ("d", 0))
        with pytest.raises(ValueError):
            TrainingPair("x", "", PairOrigin.LYRICS_RAW, ("d", 0))

    def test_structure_pair_rejects_surface_words(self):
        with pytest.raises(ValueError):
            TrainingPair("DT fox", "NN", PairOrigin.LYRICS_STRUCTURE, ("d", 0))

    def test_vocab_pair_requires_tag_suffix(self):
        with pytest.raises(ValueError):
            TrainingPair("a b", "c d", PairOrigin.BOOKS_VOCAB, ("d", 0))

    def test_jsonl_round_trip(self):
        pair = TrainingPair("a b DT NN", "c d", PairOrigin.BOOKS_VOCAB, ("doc", 3))
        buf = io.StringIO()
        write_pairs([pair], buf)
        import json
        assert pair_from_json(json.loads(buf.getvalue())) == pair
        assert pair_to_json(pair)["idx"] == 3
