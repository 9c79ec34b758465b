"""Committed desk-scale corpora, hash-pinned so tests run against known data.

Fixture ids:
  fox_sentence      one-sentence prose document (the worked splitting example)
  tiny_books        two short original prose documents in period style
  fixture_songs     eight synthetic songs with varied lines
  repetitive_songs  songs whose every line maps to itself
  starters          twenty seed lines drawn from the song fixtures
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from ..corpus import Song, read_songs

_ROOT = resources.files("versesmith.fixtures")


class FixtureError(ValueError):
    """Unknown fixture id or content hash mismatch."""


def _manifest() -> dict:
    return json.loads(_ROOT.joinpath("manifest.json").read_text("utf-8"))


def manifest() -> dict:
    """The fixture manifest: id -> {description, files: [{path, sha256}]}."""
    return _manifest()


def _verified_bytes(entry: dict) -> bytes:
    data = _ROOT.joinpath("data").joinpath(entry["path"]).read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != entry["sha256"]:
        raise FixtureError(
            f"fixture file {entry['path']!r} hash mismatch: "
            f"expected {entry['sha256']}, got {digest}"
        )
    return data


def fixture_texts(fixture_id: str) -> list[tuple[str, str]]:
    """Hash-verified (name, text) pairs for one fixture id."""
    entry = _manifest().get(fixture_id)
    if entry is None:
        raise FixtureError(f"unknown fixture id: {fixture_id!r}")
    out = []
    for file_entry in entry["files"]:
        stem = file_entry["path"].rsplit("/", 1)[-1].rsplit(".", 1)[0]
        out.append((stem, _verified_bytes(file_entry).decode("utf-8")))
    return out


def load_fixture(fixture_id: str):
    """Parse a fixture into domain objects.

    Song fixtures return ``list[Song]``, the starters fixture a
    ``list[str]`` of lines, and prose fixtures ``list[(doc_id, text)]``
    ready for the books pair builder.
    """
    texts = fixture_texts(fixture_id)
    if fixture_id in ("fixture_songs", "repetitive_songs"):
        songs: list[Song] = []
        for _, text in texts:
            for line in text.splitlines():
                line = line.strip()
                if line:
                    obj = json.loads(line)
                    songs.append(Song(id=obj["id"], genre=obj.get("genre", ""),
                                      lines=list(obj["lines"])))
        return songs
    if fixture_id == "starters":
        lines: list[str] = []
        for _, text in texts:
            lines.extend(l.strip() for l in text.splitlines() if l.strip())
        return lines
    return texts


__all__ = ["FixtureError", "fixture_texts", "load_fixture", "manifest", "read_songs"]
