"""Co-writing HTTP service: sessions, batch generation, file persistence."""

from .app import ApiError, create_app
from .config import ServiceConfig, load_generators
from .store import SessionStore

__all__ = ["ApiError", "ServiceConfig", "SessionStore", "create_app", "load_generators"]
