"""Command-line pipeline: ingest, train, generate, evaluate, serve.

Every command is reproducible: all randomness flows from explicit --seed
flags and outputs carry no timestamps, so identical inputs give identical
output bytes. Machine-readable results go to stdout, diagnostics to
stderr; exit codes are 0 (success), 1 (runtime failure), 2 (usage error).
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from . import __version__
from .composer import GeneratorKind, GeneratorSpec, enumerate_verses, expand_verse, tree_to_json, verse_to_json
from .corpus import (
    IngestReport,
    PairOrigin,
    SplitConfig,
    build_books_pairs,
    build_lyrics_pairs,
    partition,
    read_pairs,
    read_songs,
    write_pairs,
)
from .lm import ModelRole, NgramConfig, fit, load_model, save_model
from .lm.ngram import high_order_weights
from .metrics import aggregate, aggregate_to_json, format_report, verse_stats

ROLE_FLAGS = {
    "structure": (ModelRole.STRUCTURE, PairOrigin.LYRICS_STRUCTURE),
    "vocab": (ModelRole.VOCAB, PairOrigin.BOOKS_VOCAB),
    "pure-lyrics": (ModelRole.PURE_LYRICS, PairOrigin.LYRICS_RAW),
    "pure-books": (ModelRole.PURE_BOOKS, PairOrigin.BOOKS_RAW),
}

GENERATOR_FLAGS = {
    "rich": GeneratorKind.RICH_LYRICS,
    "pure-lyrics": GeneratorKind.PURE_LYRICS,
    "pure-books": GeneratorKind.PURE_BOOKS,
}


def _fail(message: str) -> "click.ClickException":
    return click.ClickException(message)


def _parse_weights(spec: str, order: int) -> tuple[float, ...] | None:
    """--weights uniform | auto | comma-separated reals (one per order)."""
    if spec == "uniform":
        return None
    if spec == "auto":
        return high_order_weights(order)
    try:
        weights = tuple(float(x) for x in spec.split(","))
    except ValueError as exc:
        raise _fail(f"cannot parse --weights {spec!r}: {exc}") from exc
    if len(weights) != order:
        raise _fail(f"--weights needs {order} values for --order {order}, got {len(weights)}")
    return weights


def _write_report(report: IngestReport, out_dir: Path) -> None:
    (out_dir / "ingest_report.txt").write_text(report.to_text(), "utf-8")
    (out_dir / "ingest_report.json").write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")


def _parse_fractions(spec: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(x) for x in spec.split(","))
    except ValueError as exc:
        raise _fail(f"cannot parse --partition {spec!r}: {exc}") from exc
    if len(parts) != 3:
        raise _fail("--partition needs three comma-separated fractions (train,val,test)")
    return parts  # type: ignore[return-value]


def _write_origin_files(pairs, out: Path, names: dict[PairOrigin, str],
                        fractions: str | None, seed: int) -> None:
    """One JSONL per origin; with --partition also .train/.val/.test files."""
    for origin, name in names.items():
        subset = [p for p in pairs if p.origin is origin]
        with open(out / f"{name}.jsonl", "w", encoding="utf-8") as f:
            write_pairs(subset, f)
        if fractions is None:
            continue
        cfg = SplitConfig(partition_fractions=_parse_fractions(fractions), seed=seed)
        for split_name, split_pairs in zip(("train", "val", "test"), partition(subset, cfg)):
            with open(out / f"{name}.{split_name}.jsonl", "w", encoding="utf-8") as f:
                write_pairs(split_pairs, f)


@click.group()
@click.version_option(__version__)
def main():
    """Two-model lyric verse generation pipeline."""


@main.command("ingest-lyrics")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Songs file, JSON Lines: {id, genre, lines}.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Directory for pair files and the ingestion report.")
@click.option("--partition", "fractions", default=None,
              help="Also write .train/.val/.test files, e.g. 0.9,0.05,0.05.")
@click.option("--seed", default=0, show_default=True, help="Partition shuffle seed.")
def ingest_lyrics(in_path: str, out_dir: str, fractions: str | None, seed: int):
    """Build line-shifted structure and raw pairs from songs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        songs = read_songs(in_path)
    except (OSError, ValueError, KeyError) as exc:
        raise _fail(f"cannot read songs from {in_path}: {exc}") from exc
    report = IngestReport()
    pairs = build_lyrics_pairs(songs, report)
    _write_origin_files(pairs, out, {PairOrigin.LYRICS_STRUCTURE: "lyrics_structure",
                                     PairOrigin.LYRICS_RAW: "lyrics_raw"},
                        fractions, seed)
    _write_report(report, out)
    click.echo(f"wrote {len(pairs)} pairs to {out}", err=True)


@main.command("ingest-books")
@click.option("--in", "in_dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory of UTF-8 .txt files, one book per file.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--ratio", default=0.5, show_default=True,
              help="Fraction of words in the first half of each sentence.")
@click.option("--max-words", default=15, show_default=True,
              help="Chunk sentences longer than this many words.")
@click.option("--partition", "fractions", default=None,
              help="Also write .train/.val/.test files, e.g. 0.9,0.05,0.05.")
@click.option("--seed", default=0, show_default=True, help="Partition shuffle seed.")
def ingest_books(in_dir: str, out_dir: str, ratio: float, max_words: int,
                 fractions: str | None, seed: int):
    """Build context+skeleton and raw pairs from prose documents."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    docs = []
    for path in sorted(Path(in_dir).glob("*.txt")):
        docs.append((path.stem, path.read_text("utf-8")))
    if not docs:
        raise _fail(f"no .txt files found in {in_dir}")
    try:
        cfg = SplitConfig(max_words=max_words, ratio=ratio)
    except ValueError as exc:
        raise _fail(str(exc)) from exc
    report = IngestReport()
    pairs = build_books_pairs(docs, cfg, report)
    _write_origin_files(pairs, out, {PairOrigin.BOOKS_VOCAB: "books_vocab",
                                     PairOrigin.BOOKS_RAW: "books_raw"},
                        fractions, seed)
    _write_report(report, out)
    click.echo(f"wrote {len(pairs)} pairs to {out}", err=True)


@main.command("train")
@click.option("--pairs", "pairs_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--role", required=True, type=click.Choice(sorted(ROLE_FLAGS)))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--order", default=4, show_default=True, help="N-gram order.")
@click.option("--weights", default="uniform", show_default=True,
              help="Interpolation weights: uniform, auto (doubling per order), or comma list.")
@click.option("--unk-threshold", default=1, show_default=True,
              help="Minimum corpus frequency for a token to stay in the vocabulary.")
@click.option("--max-decode-len", default=25, show_default=True)
def train(pairs_path: str, role: str, out_path: str, order: int, weights: str,
          unk_threshold: int, max_decode_len: int):
    """Fit the n-gram reference model on one pair file."""
    expected_role, expected_origin = ROLE_FLAGS[role]
    pairs = read_pairs(pairs_path)
    if not pairs:
        raise _fail(f"no pairs in {pairs_path}")
    origins = {p.origin for p in pairs}
    if origins != {expected_origin}:
        names = ", ".join(sorted(o.value for o in origins))
        raise _fail(f"--role {role} expects origin {expected_origin.value}, "
                    f"but {pairs_path} holds {names}")
    try:
        cfg = NgramConfig(order=order, interpolation_weights=_parse_weights(weights, order),
                          unk_threshold=unk_threshold, max_decode_len=max_decode_len)
        model = fit(pairs, cfg)
    except ValueError as exc:
        raise _fail(str(exc)) from exc
    assert model.role is expected_role
    save_model(model, out_path)
    click.echo(f"trained {role} model on {len(pairs)} pairs -> {out_path}", err=True)


def _load_role_model(path: str | None, role: ModelRole):
    if path is None:
        raise _fail(f"--{role.value.replace('_', '-')}-model is required for this generator")
    try:
        model = load_model(path)
    except OSError as exc:
        raise _fail(f"cannot read model file {path}: {exc}") from exc
    if model.role is not role:
        raise _fail(f"model {path} has role {model.role.value}, expected {role.value}")
    return model


def _build_spec(generator: str, width: int, lines: int, structure_model: str | None,
                vocab_model: str | None, pure_lyrics_model: str | None,
                pure_books_model: str | None) -> GeneratorSpec:
    kind = GENERATOR_FLAGS[generator]
    if kind is GeneratorKind.RICH_LYRICS:
        return GeneratorSpec(
            kind,
            structure_model=_load_role_model(structure_model, ModelRole.STRUCTURE),
            vocab_model=_load_role_model(vocab_model, ModelRole.VOCAB),
            width=width, lines_per_verse=lines)
    if kind is GeneratorKind.PURE_LYRICS:
        return GeneratorSpec(
            kind, baseline_model=_load_role_model(pure_lyrics_model, ModelRole.PURE_LYRICS),
            width=width, lines_per_verse=lines)
    return GeneratorSpec(
        kind, baseline_model=_load_role_model(pure_books_model, ModelRole.PURE_BOOKS),
        width=width, lines_per_verse=lines)


_MODEL_OPTIONS = [
    click.option("--structure-model", type=click.Path(exists=True, dir_okay=False)),
    click.option("--vocab-model", type=click.Path(exists=True, dir_okay=False)),
    click.option("--pure-lyrics-model", type=click.Path(exists=True, dir_okay=False)),
    click.option("--pure-books-model", type=click.Path(exists=True, dir_okay=False)),
]


def model_options(fn):
    for opt in reversed(_MODEL_OPTIONS):
        fn = opt(fn)
    return fn


@main.command("generate")
@click.option("--starter", required=True, help="Seed line for the verse.")
@click.option("--generator", required=True, type=click.Choice(sorted(GENERATOR_FLAGS)))
@click.option("--width", default=3, show_default=True)
@click.option("--lines", default=5, show_default=True)
@click.option("--tree", "as_tree", is_flag=True, help="Print the verse tree instead of flat verses.")
@model_options
def generate(starter: str, generator: str, width: int, lines: int, as_tree: bool,
             structure_model, vocab_model, pure_lyrics_model, pure_books_model):
    """Expand one starter into its verse tree and print JSON Lines."""
    spec = _build_spec(generator, width, lines, structure_model, vocab_model,
                       pure_lyrics_model, pure_books_model)
    try:
        tree = expand_verse(starter, spec)
    except ValueError as exc:
        raise _fail(str(exc)) from exc
    if as_tree:
        click.echo(json.dumps(tree_to_json(tree), ensure_ascii=False))
    else:
        for verse in enumerate_verses(tree):
            click.echo(json.dumps(verse_to_json(verse, generator), ensure_ascii=False))


@main.command("evaluate")
@click.option("--starters", "starters_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Text file with one candidate starter line per line.")
@click.option("--n", "n_starters", default=100, show_default=True,
              help="How many starters to sample (without replacement).")
@click.option("--width", default=3, show_default=True)
@click.option("--lines", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json",
              show_default=True)
@model_options
def evaluate(starters_path: str, n_starters: int, width: int, lines: int, seed: int, fmt: str,
             structure_model, vocab_model, pure_lyrics_model, pure_books_model):
    """Run every generator over sampled starters and print the stats table."""
    all_lines = [l.strip() for l in Path(starters_path).read_text("utf-8").splitlines() if l.strip()]
    if not all_lines:
        raise _fail(f"no starter lines in {starters_path}")
    rng = random.Random(seed)
    starters = rng.sample(all_lines, min(n_starters, len(all_lines)))

    specs = {
        "rich": _build_spec("rich", width, lines, structure_model, vocab_model, None, None),
        "pure-lyrics": _build_spec("pure-lyrics", width, lines, None, None,
                                   pure_lyrics_model, None),
        "pure-books": _build_spec("pure-books", width, lines, None, None, None,
                                  pure_books_model),
    }
    per_generator = {}
    for name in sorted(specs):
        stats = []
        for starter in starters:
            for verse in enumerate_verses(expand_verse(starter, specs[name])):
                if len(verse.lines) >= 2:
                    stats.append(verse_stats(verse))
        per_generator[name] = aggregate(stats)

    if fmt == "table":
        click.echo(format_report(per_generator), nl=False)
    else:
        payload = {
            "seed": seed,
            "width": width,
            "lines_per_verse": lines,
            "starters": starters,
            "generators": {name: aggregate_to_json(agg)
                           for name, agg in sorted(per_generator.items())},
        }
        click.echo(json.dumps(payload, ensure_ascii=False, sort_keys=True))


@main.command("serve")
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Service config JSON (see README for the key reference).")
@click.option("--host", default=None, help="Override the configured bind host.")
@click.option("--port", default=None, type=int, help="Override the configured port.")
def serve(config_path: str, host: str | None, port: int | None):
    """Start the co-writing HTTP service."""
    import uvicorn

    from .service import ServiceConfig, create_app

    try:
        cfg = ServiceConfig.from_file(config_path)
        app = create_app(cfg)
    except (OSError, ValueError) as exc:
        raise _fail(f"cannot start service: {exc}") from exc
    uvicorn.run(app, host=host or cfg.host, port=port or cfg.port, log_level="warning")


if __name__ == "__main__":
    main()
