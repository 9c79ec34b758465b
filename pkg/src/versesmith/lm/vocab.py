"""Token index shared by every sequence-model backend."""

from __future__ import annotations

from dataclasses import dataclass, field

UNK_TOKEN = "<unk>"
SEP_TOKEN = "<sep>"
EOS_TOKEN = "<eos>"

UNK_ID = 0
SEP_ID = 1
EOS_ID = 2

SENTINEL_TOKENS = (UNK_TOKEN, SEP_TOKEN, EOS_TOKEN)

# Context-padding symbol used before the start of a sequence. Internal to
# the n-gram backend: it appears in context keys only and is never a
# vocabulary member, so it can never be predicted.
BOS_ID = -1


@dataclass(frozen=True)
class Vocabulary:
    """Bidirectional token<->id map with reserved sentinel slots 0..2."""

    token_of: tuple[str, ...]
    id_of: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.token_of[:3] != SENTINEL_TOKENS:
            raise ValueError("vocabulary must start with the UNK/SEP/EOS sentinels")
        mapping = {tok: i for i, tok in enumerate(self.token_of)}
        if len(mapping) != len(self.token_of):
            raise ValueError("vocabulary contains duplicate tokens")
        object.__setattr__(self, "id_of", mapping)

    @classmethod
    def build(cls, surface_tokens: set[str]) -> "Vocabulary":
        """Sentinels first, then surface tokens in sorted order."""
        ordered = [t for t in sorted(surface_tokens) if t not in SENTINEL_TOKENS]
        return cls(tuple(SENTINEL_TOKENS) + tuple(ordered))

    def __len__(self) -> int:
        return len(self.token_of)

    def id_or_unk(self, token: str) -> int:
        return self.id_of.get(token, UNK_ID)

    def encode(self, tokens: list[str]) -> list[int]:
        get = self.id_of.get
        return [get(t, UNK_ID) for t in tokens]
