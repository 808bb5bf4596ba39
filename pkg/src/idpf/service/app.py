"""HTTP API: registration, sessions, grants, list management, filtering.

App-originated calls authenticate with the X-Api-Key header; user calls
with Authorization: Bearer <token>. Errors are JSON bodies of the shape
{"error": code, "detail": text}.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from fastapi import Depends, FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..match_engine import InvalidTerm, MatchStrategy, Term
from ..policy import FilterScheme, ListKind
from ..vocab import Category
from .auth import (
    DEFAULT_ITERATIONS,
    MIN_PASSWORD_CHARS,
    dummy_record,
    hash_password,
    new_api_key,
    new_session_token,
    verify_password,
)
from .auth import PasswordRecord
from .pipeline import execute_filter
from .store import Store

MAX_TEXT_BYTES = 1 << 20


@dataclass
class ServiceConfig:
    db_path: str | Path = "idpf.sqlite3"
    pbkdf2_iterations: int = DEFAULT_ITERATIONS
    session_ttl_seconds: float = 24 * 3600.0
    default_strategy: MatchStrategy = MatchStrategy.TRIE_KEYWORD_PROCESSOR
    max_text_bytes: int = MAX_TEXT_BYTES
    host: str = "127.0.0.1"
    port: int = 8000


class ServiceError(Exception):
    def __init__(self, code: str, detail: str, status: int):
        super().__init__(detail)
        self.code = code
        self.detail = detail
        self.status = status


def _err(code: str, detail: str, status: int) -> ServiceError:
    return ServiceError(code, detail, status)


class RegisterUserBody(BaseModel):
    username: str
    password: str


class LoginBody(BaseModel):
    username: str
    password: str


class RegisterAppBody(BaseModel):
    name: str
    strategy: str | None = None


class GrantBody(BaseModel):
    app_id: str
    allow_filtering: bool = True
    allow_others_to_share_me: bool = True


class TermBody(BaseModel):
    app_id: str
    term: str


class SchemeBody(BaseModel):
    categories: list[str] = []
    numerals: bool = False
    placeholder: str = "[FILTERED]"


class FilterBody(BaseModel):
    sender: str
    text: str
    scheme: SchemeBody = SchemeBody()


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = Store(config.db_path)
    app = FastAPI(title="idpf", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.config = config

    @app.exception_handler(ServiceError)
    async def service_error(_request: Request, exc: ServiceError):
        return JSONResponse({"error": exc.code, "detail": exc.detail}, status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    async def validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            {"error": "ValidationError", "detail": str(exc.errors())}, status_code=422
        )

    def require_session(authorization: str | None = Header(default=None)) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise _err("InvalidSession", "missing bearer token", 401)
        user_id = store.session_user(authorization[len("Bearer ") :])
        if user_id is None:
            raise _err("InvalidSession", "unknown or expired session", 401)
        return user_id

    def require_app(x_api_key: str | None = Header(default=None)):
        if not x_api_key:
            raise _err("UnknownApiKey", "missing X-Api-Key header", 401)
        row = store.app_by_key(x_api_key)
        if row is None:
            raise _err("UnknownApiKey", "api key not recognized", 401)
        return row

    @app.post("/users", status_code=201)
    def register_user(body: RegisterUserBody):
        if len(body.password) < MIN_PASSWORD_CHARS:
            raise _err("WeakPassword", f"password must have at least {MIN_PASSWORD_CHARS} characters", 400)
        if not body.username:
            raise _err("ValidationError", "username must be non-empty", 422)
        if store.username_taken(body.username):
            raise _err("UsernameTaken", f"username {body.username!r} already registered", 409)
        record = hash_password(body.password, config.pbkdf2_iterations)
        user_id = store.create_user(body.username, record)
        return {"user_id": user_id}

    @app.post("/sessions", status_code=201)
    def login(body: LoginBody):
        row = store.user_by_name(body.username)
        if row is None:
            # burn the same PBKDF2 cost as a real verification
            verify_password(body.password, dummy_record(config.pbkdf2_iterations))
            raise _err("InvalidCredentials", "invalid username or password", 401)
        record = PasswordRecord(salt=row["salt"], iterations=row["iterations"], hash=row["pw_hash"])
        if not verify_password(body.password, record):
            raise _err("InvalidCredentials", "invalid username or password", 401)
        token = new_session_token()
        expires_at = time.time() + config.session_ttl_seconds
        store.put_session(token, row["user_id"], expires_at)
        return {"token": token, "expires_at": expires_at}

    @app.post("/apps", status_code=201)
    def register_app(body: RegisterAppBody):
        if not body.name.strip():
            raise _err("ValidationError", "app name must be non-empty", 422)
        strategy = MatchStrategy(body.strategy) if body.strategy else config.default_strategy
        api_key = new_api_key()
        app_id = store.create_app(body.name, api_key, strategy.value)
        return {"app_id": app_id, "api_key": api_key}

    @app.post("/grants")
    def grant_permission(body: GrantBody, user_id: str = Depends(require_session)):
        if not store.app_exists(body.app_id):
            raise _err("UnknownApp", f"no app {body.app_id!r}", 404)
        store.upsert_grant(user_id, body.app_id, body.allow_filtering, body.allow_others_to_share_me)
        return {
            "app_id": body.app_id,
            "allow_filtering": body.allow_filtering,
            "allow_others_to_share_me": body.allow_others_to_share_me,
        }

    def _list_view(owner: str, app_id: str) -> dict:
        lists = {
            kind.value: sorted(
                term.surface for term in store.get_list(owner, app_id, kind).terms.values()
            )
            for kind in ListKind
        }
        srb = set(store.get_list(owner, app_id, ListKind.SRB).terms)
        srw = set(store.get_list(owner, app_id, ListKind.SRW).terms)
        lists["conflicts"] = sorted(srb & srw)
        return lists

    def _check_list_target(app_id: str) -> None:
        if not store.app_exists(app_id):
            raise _err("UnknownApp", f"no app {app_id!r}", 404)

    @app.get("/lists")
    def get_lists(app_id: str, user_id: str = Depends(require_session)):
        _check_list_target(app_id)
        return _list_view(user_id, app_id)

    @app.put("/lists/{kind}/terms")
    def upsert_list_term(kind: ListKind, body: TermBody, user_id: str = Depends(require_session)):
        _check_list_target(body.app_id)
        try:
            term = Term.of(body.term)
        except InvalidTerm as exc:
            raise _err("InvalidTerm", str(exc), 400)
        store.upsert_term(user_id, body.app_id, kind, term)
        return _list_view(user_id, body.app_id)

    @app.delete("/lists/{kind}/terms")
    def remove_list_term(kind: ListKind, body: TermBody, user_id: str = Depends(require_session)):
        _check_list_target(body.app_id)
        store.remove_term(user_id, body.app_id, kind, body.term)
        return _list_view(user_id, body.app_id)

    @app.post("/filter")
    def filter_text(body: FilterBody, app_row=Depends(require_app)):
        if not store.user_exists(body.sender):
            raise _err("UnknownUser", f"no user {body.sender!r}", 404)
        grant = store.grant_for(body.sender, app_row["app_id"])
        if grant is None or not grant["allow_filtering"]:
            raise _err("PermissionNotGranted", "sender has not granted filtering for this app", 403)
        if len(body.text.encode("utf-8")) > config.max_text_bytes:
            raise _err("TextTooLarge", f"text exceeds {config.max_text_bytes} bytes", 413)
        try:
            categories = [Category(c) for c in body.scheme.categories]
        except ValueError as exc:
            raise _err("ValidationError", f"unknown category: {exc}", 422)
        scheme = FilterScheme.of(categories, body.scheme.numerals, body.scheme.placeholder)
        app_id = app_row["app_id"]
        outcome = execute_filter(
            sender=body.sender,
            app_id=app_id,
            text=body.text,
            scheme=scheme,
            strategy=MatchStrategy(app_row["strategy"]),
            lists=store.lists_for_app(app_id),
            strict_users=store.strict_users(app_id),
        )
        created_at = time.time()
        report_id = store.add_report(
            app_id,
            body.sender,
            outcome.total_masked,
            outcome.by_source,
            outcome.spans,
            outcome.owner_hits,
            created_at,
        )
        return {
            "filtered_text": outcome.filtered_text,
            "report": {
                "report_id": report_id,
                "app_id": app_id,
                "timestamp": created_at,
                "total_masked": outcome.total_masked,
                "by_source": outcome.by_source,
                "spans": [list(row) for row in outcome.spans],
            },
        }

    @app.get("/reports")
    def get_reports(app_id: str, since: float = 0.0, user_id: str = Depends(require_session)):
        if not store.app_exists(app_id):
            raise _err("UnknownApp", f"no app {app_id!r}", 404)
        own = store.reports_for_sender(user_id, app_id, since)
        stubs = store.notifications_for_owner(user_id, app_id, since)
        merged = sorted(own + stubs, key=lambda r: (r["timestamp"], r["report_id"]))
        return {"reports": merged}

    return app
