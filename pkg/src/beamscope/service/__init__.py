from .app import create_app
from .config import ServiceConfig
from .store import FileStore

__all__ = ["FileStore", "ServiceConfig", "create_app"]
