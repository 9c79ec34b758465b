from __future__ import annotations

import pytest

from versesmith.corpus import PairOrigin, build_books_pairs, build_lyrics_pairs
from versesmith.fixtures import load_fixture
from versesmith.lm import NgramConfig, fit
from versesmith.lm.ngram import high_order_weights

# Generation-oriented config used for the bundled fixture models: the high
# order makes the tag models condition on most of a line's skeleton, and
# the doubling weights keep the smoothing floor from rewarding early EOS.
FIXTURE_CONFIG = NgramConfig(order=8, interpolation_weights=high_order_weights(8))


def _pairs(pairs, origin: PairOrigin):
    return [p for p in pairs if p.origin is origin]


@pytest.fixture(scope="session")
def fixture_models():
    """The four models of the experimental protocol, trained once."""
    book_pairs = build_books_pairs(load_fixture("tiny_books"))
    song_pairs = build_lyrics_pairs(load_fixture("fixture_songs"))
    rep_pairs = build_lyrics_pairs(load_fixture("repetitive_songs"))
    return {
        "structure": fit(_pairs(song_pairs, PairOrigin.LYRICS_STRUCTURE), FIXTURE_CONFIG),
        "vocab": fit(_pairs(book_pairs, PairOrigin.BOOKS_VOCAB), FIXTURE_CONFIG),
        "pure_lyrics": fit(_pairs(rep_pairs, PairOrigin.LYRICS_RAW), FIXTURE_CONFIG),
        "pure_books": fit(_pairs(book_pairs, PairOrigin.BOOKS_RAW), FIXTURE_CONFIG),
    }


@pytest.fixture(scope="session")
def model_dir(fixture_models, tmp_path_factory):
    """Fixture models serialized to disk for CLI and service tests."""
    from versesmith.lm import save_model

    root = tmp_path_factory.mktemp("models")
    for name, model in fixture_models.items():
        save_model(model, root / f"{name}.vsm")
    return root
