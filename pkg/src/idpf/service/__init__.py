"""HTTP filtering service: accounts, grants, list CRUD, and the filter endpoint."""

from .app import ServiceConfig, create_app
from .pipeline import FilterOutcome, execute_filter
from .store import Store

__all__ = ["FilterOutcome", "ServiceConfig", "Store", "create_app", "execute_filter"]
