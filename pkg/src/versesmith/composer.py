"""Line generators and incremental verse expansion.

The composed generator turns a line into its tag skeleton, decodes
next-line skeletons with the structure model, then has the vocabulary
model realize each skeleton given the original line as context:
``next = V(line . S(tags(line)))``. Structure and vocabulary beams are
pooled by summed log-score and deduplicated on surface text. The two
baselines decode a single model directly on the raw line.

Verse expansion applies a generator breadth-first: every node at depth
below the verse length receives up to ``width`` children generated from
its own line, giving up to width**lines_per_verse verses per starter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .lm import Candidate, ModelRole, SequenceModel, beam_decode
from .textproc import normalize_line, pos_string


class GeneratorKind(str, Enum):
    RICH_LYRICS = "rich_lyrics"
    PURE_LYRICS = "pure_lyrics"
    PURE_BOOKS = "pure_books"


class GeneratorError(ValueError):
    """Misconfigured generator or invalid seed line."""


class ExpansionError(RuntimeError):
    """A generation step failed while expanding a verse tree."""


_BASELINE_ROLE = {
    GeneratorKind.PURE_LYRICS: ModelRole.PURE_LYRICS,
    GeneratorKind.PURE_BOOKS: ModelRole.PURE_BOOKS,
}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    structure_model: SequenceModel | None = None
    vocab_model: SequenceModel | None = None
    baseline_model: SequenceModel | None = None
    width: int = 3
    lines_per_verse: int = 5

    def __post_init__(self):
        if self.width < 1:
            raise GeneratorError("width must be >= 1")
        if self.lines_per_verse < 1:
            raise GeneratorError("lines_per_verse must be >= 1")
        if self.kind is GeneratorKind.RICH_LYRICS:
            if self.structure_model is None or self.vocab_model is None:
                raise GeneratorError("composed generator needs a structure and a vocabulary model")
            if self.structure_model.role is not ModelRole.STRUCTURE:
                raise GeneratorError(f"structure model has role {self.structure_model.role.value}")
            if self.vocab_model.role is not ModelRole.VOCAB:
                raise GeneratorError(f"vocabulary model has role {self.vocab_model.role.value}")
        else:
            expected = _BASELINE_ROLE[self.kind]
            if self.baseline_model is None:
                raise GeneratorError(f"{self.kind.value} needs a baseline model")
            if self.baseline_model.role is not expected:
                raise GeneratorError(
                    f"baseline model has role {self.baseline_model.role.value}, "
                    f"expected {expected.value}"
                )


@dataclass
class VerseNode:
    line: str
    score: float
    children: list["VerseNode"] = field(default_factory=list)


@dataclass
class VerseTree:
    starter: str
    root: VerseNode
    width: int
    lines_per_verse: int


@dataclass(frozen=True)
class Verse:
    """One root-to-leaf path: the starter plus its generated lines."""

    lines: tuple[str, ...]
    scores: tuple[float, ...]

    def __post_init__(self):
        if not self.lines:
            raise ValueError("a verse has at least its starter line")
        if len(self.scores) != len(self.lines) - 1:
            raise ValueError("one score per generated line")


def _normalized_seed(line: str) -> str:
    seed = normalize_line(line)
    if not seed:
        raise GeneratorError("empty seed line")
    return seed


def rich_lyrics_step(
    line: str, spec: GeneratorSpec, exclude: frozenset[str] = frozenset()
) -> list[Candidate]:
    """Top ``width`` composed continuations of one line.

    Decodes ``width`` skeletons, realizes each with ``width`` vocabulary
    beams, pools the width*width completions by summed log-score, drops
    surfaces listed in ``exclude``, and deduplicates on surface text.
    """
    if spec.kind is not GeneratorKind.RICH_LYRICS:
        raise GeneratorError(f"rich_lyrics_step called on a {spec.kind.value} generator")
    seed = _normalized_seed(line)
    skeleton_input = pos_string(seed)

    best: dict[str, Candidate] = {}
    for skel in beam_decode(spec.structure_model, skeleton_input, spec.width):
        if not skel.tokens:
            continue  # an empty skeleton gives the vocabulary model nothing to realize
        for cand in beam_decode(spec.vocab_model, seed + " " + skel.text, spec.width):
            text = cand.text
            if not text or text in exclude:
                continue
            total = skel.score + cand.score
            prev = best.get(text)
            if prev is None or total > prev.score:
                best[text] = Candidate(cand.tokens, total)
    pooled = sorted(best.values(), key=lambda c: (-c.score, c.tokens))
    return pooled[: spec.width]


def baseline_step(
    line: str, spec: GeneratorSpec, exclude: frozenset[str] = frozenset()
) -> list[Candidate]:
    """Top ``width`` single-model continuations of one line."""
    if spec.kind not in _BASELINE_ROLE:
        raise GeneratorError(f"baseline_step called on a {spec.kind.value} generator")
    seed = _normalized_seed(line)
    # widen the decode when excluding previously offered lines so a fresh
    # regeneration can still fill the candidate list
    decode_width = spec.width + len(exclude)
    out = []
    for cand in beam_decode(spec.baseline_model, seed, decode_width):
        if not cand.text or cand.text in exclude:
            continue
        out.append(cand)
        if len(out) == spec.width:
            break
    return out


def generation_step(
    line: str, spec: GeneratorSpec, exclude: frozenset[str] = frozenset()
) -> list[Candidate]:
    if spec.kind is GeneratorKind.RICH_LYRICS:
        return rich_lyrics_step(line, spec, exclude)
    return baseline_step(line, spec, exclude)


def expand_verse(starter: str, spec: GeneratorSpec) -> VerseTree:
    """Breadth-first verse tree of all beam alternatives from a starter.

    Identical lines share one generation step per tree (generation is pure,
    so the memo cannot change results, only skip repeated decodes). Step
    failures are re-raised with the offending node path.
    """
    if not starter.strip():
        raise GeneratorError("empty seed line")
    root = VerseNode(line=starter, score=0.0)
    memo: dict[str, list[Candidate]] = {}
    frontier: list[tuple[VerseNode, tuple[int, ...]]] = [(root, ())]
    for depth in range(spec.lines_per_verse):
        next_frontier: list[tuple[VerseNode, tuple[int, ...]]] = []
        for node, path in frontier:
            try:
                candidates = memo.get(node.line)
                if candidates is None:
                    candidates = generation_step(node.line, spec)
                    memo[node.line] = candidates
            except GeneratorError as exc:
                raise ExpansionError(
                    f"generation failed at depth {depth}, node path {list(path)}: {exc}"
                ) from exc
            for i, cand in enumerate(candidates):
                child = VerseNode(line=cand.text, score=cand.score)
                node.children.append(child)
                next_frontier.append((child, path + (i,)))
        frontier = next_frontier
    return VerseTree(starter=starter, root=root, width=spec.width,
                     lines_per_verse=spec.lines_per_verse)


def enumerate_verses(tree: VerseTree) -> list[Verse]:
    """One verse per leaf, in stable left-to-right tree order."""
    verses: list[Verse] = []

    def walk(node: VerseNode, lines: list[str], scores: list[float]) -> None:
        if not node.children:
            verses.append(Verse(tuple(lines), tuple(scores)))
            return
        for child in node.children:
            walk(child, lines + [child.line], scores + [child.score])

    walk(tree.root, [tree.starter], [])
    return verses


def tree_to_json(tree: VerseTree) -> dict:
    def node_json(node: VerseNode) -> dict:
        return {
            "line": node.line,
            "score": node.score,
            "children": [node_json(c) for c in node.children],
        }

    return {
        "starter": tree.starter,
        "width": tree.width,
        "lines_per_verse": tree.lines_per_verse,
        "root": node_json(tree.root),
    }


def verse_to_json(verse: Verse, generator: str) -> dict:
    return {
        "starter": verse.lines[0],
        "lines": list(verse.lines),
        "scores": list(verse.scores),
        "generator": generator,
    }
