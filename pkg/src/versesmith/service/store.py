"""File-backed session persistence with crash-safe writes.

One JSON document per session. Writes go to a temp file in the same
directory, are fsynced, then atomically renamed over the target (and the
directory entry is fsynced too), so any state acknowledged to a client
survives an abrupt process kill.
"""

from __future__ import annotations

import json
import os
from pathlib import Path


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, session_id: str) -> Path:
        if not session_id.replace("-", "").isalnum():
            raise ValueError(f"invalid session id: {session_id!r}")
        return self.root / f"{session_id}.json"

    def save(self, doc: dict) -> None:
        path = self._path(doc["id"])
        tmp = path.with_suffix(".json.tmp")
        data = json.dumps(doc, ensure_ascii=False).encode("utf-8")
        fd = os.open(tmp, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o644)
        try:
            os.write(fd, data)
            os.fsync(fd)
        finally:
            os.close(fd)
        os.replace(tmp, path)
        dir_fd = os.open(self.root, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)

    def load(self, session_id: str) -> dict | None:
        try:
            path = self._path(session_id)
        except ValueError:
            return None
        try:
            return json.loads(path.read_text("utf-8"))
        except FileNotFoundError:
            return None

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))
