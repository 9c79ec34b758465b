"""Service configuration: model paths per generator role plus serving knobs.

JSON file, documented in the README. Example:

    {
      "models": {
        "structure": "models/structure.vsm",
        "vocab": "models/vocab.vsm",
        "pure_lyrics": "models/pure_lyrics.vsm",
        "pure_books": "models/pure_books.vsm"
      },
      "default_width": 3,
      "default_lines": 5,
      "session_dir": "sessions",
      "host": "127.0.0.1",
      "port": 8000,
      "static_dir": null
    }

Generators are derived from the models present: ``rich_lyrics`` needs
``structure`` and ``vocab``; each baseline needs its own model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..composer import GeneratorKind, GeneratorSpec
from ..lm import ModelRole, load_model


@dataclass
class ServiceConfig:
    model_paths: dict[str, str]
    default_width: int = 3
    default_lines: int = 5
    session_dir: str = "sessions"
    host: str = "127.0.0.1"
    port: int = 8000
    static_dir: str | None = None
    base_dir: Path = field(default_factory=Path)

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        path = Path(path)
        raw = json.loads(path.read_text("utf-8"))
        return cls(
            model_paths=dict(raw.get("models", {})),
            default_width=int(raw.get("default_width", 3)),
            default_lines=int(raw.get("default_lines", 5)),
            session_dir=raw.get("session_dir", "sessions"),
            host=raw.get("host", "127.0.0.1"),
            port=int(raw.get("port", 8000)),
            static_dir=raw.get("static_dir"),
            base_dir=path.parent,
        )

    def resolve(self, p: str) -> Path:
        q = Path(p)
        return q if q.is_absolute() else self.base_dir / q


def load_generators(cfg: ServiceConfig) -> dict[str, GeneratorSpec]:
    """Load every generator whose models the config provides.

    Model files are loaded once at startup and treated as immutable while
    serving; a missing or mis-roled file fails fast here.
    """
    models = {}
    for role_name, path in cfg.model_paths.items():
        role = ModelRole(role_name)
        model = load_model(cfg.resolve(path))
        if model.role is not role:
            raise ValueError(
                f"model at {path} has role {model.role.value}, configured as {role.value}"
            )
        models[role] = model

    generators: dict[str, GeneratorSpec] = {}
    if ModelRole.STRUCTURE in models and ModelRole.VOCAB in models:
        generators[GeneratorKind.RICH_LYRICS.value] = GeneratorSpec(
            GeneratorKind.RICH_LYRICS,
            structure_model=models[ModelRole.STRUCTURE],
            vocab_model=models[ModelRole.VOCAB],
            width=cfg.default_width,
            lines_per_verse=cfg.default_lines,
        )
    if ModelRole.PURE_LYRICS in models:
        generators[GeneratorKind.PURE_LYRICS.value] = GeneratorSpec(
            GeneratorKind.PURE_LYRICS,
            baseline_model=models[ModelRole.PURE_LYRICS],
            width=cfg.default_width,
            lines_per_verse=cfg.default_lines,
        )
    if ModelRole.PURE_BOOKS in models:
        generators[GeneratorKind.PURE_BOOKS.value] = GeneratorSpec(
            GeneratorKind.PURE_BOOKS,
            baseline_model=models[ModelRole.PURE_BOOKS],
            width=cfg.default_width,
            lines_per_verse=cfg.default_lines,
        )
    return generators
