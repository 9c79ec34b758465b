"""HTTP API for interactive co-writing and batch generation.

Sessions hold a growing verse: the client picks one of the offered
candidates, the choice seeds the next generation step, and every accepted
state is durable on disk before the response goes out. Mutating requests
carry the revision they saw; a mismatch is answered with a 409 so a stale
client can refetch without losing anything.
"""

from __future__ import annotations

import threading
import uuid
from collections import defaultdict
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from ..composer import GeneratorSpec, enumerate_verses, expand_verse, generation_step, tree_to_json
from ..metrics import aggregate, aggregate_to_json, verse_stats
from .config import ServiceConfig, load_generators
from .store import SessionStore


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _view(doc: dict) -> dict:
    return {
        "id": doc["id"],
        "generator": doc["generator"],
        "status": doc["status"],
        "revision": doc["revision"],
        "accepted_lines": doc["accepted_lines"],
        "candidates": [
            {"index": i, "text": c["text"], "score": c["score"]}
            for i, c in enumerate(doc["pending"])
        ],
        "width": doc["width"],
        "lines_per_verse": doc["lines_per_verse"],
    }


def create_app(
    config: ServiceConfig,
    generators: dict[str, GeneratorSpec] | None = None,
) -> FastAPI:
    if generators is None:
        generators = load_generators(config)
    store = SessionStore(Path(config.session_dir) if Path(config.session_dir).is_absolute()
                         else config.base_dir / config.session_dir)
    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
    locks_guard = threading.Lock()

    app = FastAPI(title="versesmith", version="1")

    def lock_for(session_id: str) -> threading.Lock:
        with locks_guard:
            return locks[session_id]

    @app.exception_handler(ApiError)
    def handle_api_error(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "message": exc.message})

    def get_generator(name: str, width: int | None, lines: int | None) -> GeneratorSpec:
        spec = generators.get(name)
        if spec is None:
            raise ApiError(400, "unknown_generator",
                           f"unknown generator {name!r}; see /v1/generators")
        if width is not None or lines is not None:
            spec = GeneratorSpec(
                kind=spec.kind,
                structure_model=spec.structure_model,
                vocab_model=spec.vocab_model,
                baseline_model=spec.baseline_model,
                width=width if width is not None else spec.width,
                lines_per_verse=lines if lines is not None else spec.lines_per_verse,
            )
        return spec

    def load_doc(session_id: str) -> dict:
        doc = store.load(session_id)
        if doc is None:
            raise ApiError(404, "session_not_found", f"no session {session_id!r}")
        return doc

    def check_revision(doc: dict, body: dict) -> None:
        revision = body.get("revision")
        if not isinstance(revision, int):
            raise ApiError(400, "missing_revision",
                           "mutating requests must carry the current revision")
        if revision != doc["revision"]:
            raise ApiError(409, "revision_conflict",
                           f"request carries revision {revision}, session is at {doc['revision']}")

    def offer(doc: dict, spec: GeneratorSpec, seed_line: str, fresh_position: bool) -> None:
        """Fill doc['pending'] with candidates for the current position."""
        position = str(len(doc["accepted_lines"]))
        exclude = frozenset() if fresh_position else frozenset(doc["offered"].get(position, []))
        candidates = generation_step(seed_line, spec, exclude)
        pending = [{"text": c.text, "score": c.score} for c in candidates]
        doc["pending"] = pending
        seen = doc["offered"].setdefault(position, [])
        for c in pending:
            if c["text"] not in seen:
                seen.append(c["text"])
        doc["last_offer"][position] = pending
        doc["history"].append({
            "type": "offered", "position": int(position),
            "lines": [c["text"] for c in pending], "at": _now(),
        })

    # --- session lifecycle -------------------------------------------------

    @app.get("/v1/generators")
    def list_generators():
        return {"generators": [
            {"name": name, "width": spec.width, "lines_per_verse": spec.lines_per_verse}
            for name, spec in sorted(generators.items())
        ]}

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: dict):
        starter = (body.get("starter") or "").strip()
        if not starter:
            raise ApiError(400, "empty_starter", "starter line must be non-empty")
        width = body.get("width")
        spec = get_generator(body.get("generator", ""), width, None)
        doc = {
            "id": uuid.uuid4().hex,
            "generator": body["generator"],
            "width": spec.width,
            "lines_per_verse": spec.lines_per_verse,
            "status": "active",
            "revision": 0,
            "accepted_lines": [starter],
            "pending": [],
            "offered": {},
            "last_offer": {},
            "history": [{"type": "created", "starter": starter, "at": _now()}],
        }
        offer(doc, spec, starter, fresh_position=True)
        store.save(doc)
        return _view(doc)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        return _view(load_doc(session_id))

    @app.post("/v1/sessions/{session_id}/choose")
    def choose(session_id: str, body: dict):
        with lock_for(session_id):
            doc = load_doc(session_id)
            if doc["status"] != "active":
                raise ApiError(409, "session_completed", "this verse is already complete")
            check_revision(doc, body)
            index = body.get("index")
            if not isinstance(index, int) or not 0 <= index < len(doc["pending"]):
                raise ApiError(409, "stale_index",
                               f"candidate index {index!r} is not offered "
                               f"(have {len(doc['pending'])})")
            chosen = doc["pending"][index]
            doc["accepted_lines"].append(chosen["text"])
            doc["history"].append({
                "type": "chosen", "index": index, "line": chosen["text"], "at": _now(),
            })
            if len(doc["accepted_lines"]) >= doc["lines_per_verse"] + 1:
                doc["status"] = "completed"
                doc["pending"] = []
            else:
                spec = get_generator(doc["generator"], doc["width"], doc["lines_per_verse"])
                offer(doc, spec, chosen["text"], fresh_position=True)
            doc["revision"] += 1
            store.save(doc)
            return _view(doc)

    @app.post("/v1/sessions/{session_id}/regenerate")
    def regenerate(session_id: str, body: dict):
        with lock_for(session_id):
            doc = load_doc(session_id)
            if doc["status"] != "active":
                raise ApiError(409, "session_completed", "this verse is already complete")
            check_revision(doc, body)
            spec = get_generator(doc["generator"], doc["width"], doc["lines_per_verse"])
            doc["history"].append({"type": "regenerated", "at": _now()})
            offer(doc, spec, doc["accepted_lines"][-1], fresh_position=False)
            doc["revision"] += 1
            store.save(doc)
            return _view(doc)

    @app.post("/v1/sessions/{session_id}/undo")
    def undo(session_id: str, body: dict):
        with lock_for(session_id):
            doc = load_doc(session_id)
            check_revision(doc, body)
            if len(doc["accepted_lines"]) < 2:
                raise ApiError(409, "nothing_to_undo", "only the starter line is accepted")
            removed = doc["accepted_lines"].pop()
            position = str(len(doc["accepted_lines"]))
            doc["pending"] = doc["last_offer"].get(position, [])
            doc["status"] = "active"
            doc["history"].append({"type": "undone", "line": removed, "at": _now()})
            doc["revision"] += 1
            store.save(doc)
            return _view(doc)

    @app.get("/v1/sessions/{session_id}/export")
    def export_session(session_id: str):
        doc = load_doc(session_id)
        return PlainTextResponse("\n".join(doc["accepted_lines"]) + "\n")

    # --- batch endpoints ---------------------------------------------------

    @app.post("/v1/generate")
    def batch_generate(body: dict):
        spec = get_generator(body.get("generator", ""), body.get("width"), body.get("lines"))
        results = []
        for starter in body.get("starters", []):
            if not (starter or "").strip():
                results.append({"starter": starter,
                                "error": {"code": "empty_starter",
                                          "message": "starter line must be non-empty"}})
                continue
            tree = expand_verse(starter, spec)
            results.append({"starter": starter, "tree": tree_to_json(tree)})
        return {"results": results}

    @app.post("/v1/evaluate")
    def batch_evaluate(body: dict):
        names = body.get("generators") or sorted(generators)
        width, lines = body.get("width"), body.get("lines")
        starters = body.get("starters", [])
        per_generator = {}
        errors = []
        for name in names:
            spec = get_generator(name, width, lines)
            stats = []
            for starter in starters:
                if not (starter or "").strip():
                    errors.append({"generator": name, "starter": starter,
                                   "code": "empty_starter"})
                    continue
                for verse in enumerate_verses(expand_verse(starter, spec)):
                    if len(verse.lines) >= 2:
                        stats.append(verse_stats(verse))
            per_generator[name] = aggregate_to_json(aggregate(stats)) if stats else None
        return {"generators": per_generator, "errors": errors}

    if config.static_dir:
        static_root = config.resolve(config.static_dir)
        if static_root.is_dir():
            app.mount("/", StaticFiles(directory=static_root, html=True), name="ui")

    return app
