"""Single-file SQLite persistence for accounts, apps, grants, lists, reports.

Original request text is never written anywhere; reports hold offsets and
counts only. All access is serialized behind one lock, and every write is
a transaction, so a filter invocation reads a consistent snapshot.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import time
from pathlib import Path

from ..match_engine import Term, normalize
from ..policy import ListKind, PolicyList
from .auth import PasswordRecord, new_id

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    user_id    TEXT PRIMARY KEY,
    username   TEXT UNIQUE NOT NULL,
    salt       BLOB NOT NULL,
    iterations INTEGER NOT NULL,
    pw_hash    BLOB NOT NULL,
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS apps (
    app_id     TEXT PRIMARY KEY,
    name       TEXT NOT NULL,
    api_key    TEXT UNIQUE NOT NULL,
    strategy   TEXT NOT NULL,
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS grants (
    user_id  TEXT NOT NULL,
    app_id   TEXT NOT NULL,
    allow_filtering INTEGER NOT NULL,
    allow_others_to_share_me INTEGER NOT NULL,
    updated_at REAL NOT NULL,
    PRIMARY KEY (user_id, app_id)
);
CREATE TABLE IF NOT EXISTS lists (
    owner      TEXT NOT NULL,
    app_id     TEXT NOT NULL,
    kind       TEXT NOT NULL,
    updated_at REAL NOT NULL,
    PRIMARY KEY (owner, app_id, kind)
);
CREATE TABLE IF NOT EXISTS list_terms (
    owner      TEXT NOT NULL,
    app_id     TEXT NOT NULL,
    kind       TEXT NOT NULL,
    normalized TEXT NOT NULL,
    surface    TEXT NOT NULL,
    PRIMARY KEY (owner, app_id, kind, normalized)
);
CREATE TABLE IF NOT EXISTS reports (
    report_id    INTEGER PRIMARY KEY AUTOINCREMENT,
    app_id       TEXT NOT NULL,
    sender       TEXT NOT NULL,
    created_at   REAL NOT NULL,
    total_masked INTEGER NOT NULL,
    by_source    TEXT NOT NULL,
    spans        TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS report_owner_hits (
    report_id INTEGER NOT NULL,
    owner     TEXT NOT NULL,
    hits      INTEGER NOT NULL,
    PRIMARY KEY (report_id, owner)
);
CREATE TABLE IF NOT EXISTS sessions (
    token      TEXT PRIMARY KEY,
    user_id    TEXT NOT NULL,
    expires_at REAL NOT NULL
);
"""


class Store:
    def __init__(self, path: str | Path):
        self._conn = sqlite3.connect(str(path), check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        self._lock = threading.RLock()
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    # -- users ---------------------------------------------------------

    def create_user(self, username: str, record: PasswordRecord) -> str:
        user_id = new_id()
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO users VALUES (?, ?, ?, ?, ?, ?)",
                (user_id, username, record.salt, record.iterations, record.hash, time.time()),
            )
        return user_id

    def username_taken(self, username: str) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM users WHERE username = ?", (username,)
            ).fetchone()
        return row is not None

    def user_by_name(self, username: str):
        with self._lock:
            return self._conn.execute(
                "SELECT * FROM users WHERE username = ?", (username,)
            ).fetchone()

    def user_exists(self, user_id: str) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM users WHERE user_id = ?", (user_id,)
            ).fetchone()
        return row is not None

    # -- sessions ------------------------------------------------------

    def put_session(self, token: str, user_id: str, expires_at: float) -> None:
        with self._lock, self._conn:
            self._conn.execute("INSERT INTO sessions VALUES (?, ?, ?)", (token, user_id, expires_at))

    def session_user(self, token: str) -> str | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT user_id, expires_at FROM sessions WHERE token = ?", (token,)
            ).fetchone()
        if row is None or row["expires_at"] < time.time():
            return None
        return row["user_id"]

    # -- apps ----------------------------------------------------------

    def create_app(self, name: str, api_key: str, strategy: str) -> str:
        app_id = new_id()
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO apps VALUES (?, ?, ?, ?, ?)",
                (app_id, name, api_key, strategy, time.time()),
            )
        return app_id

    def app_by_key(self, api_key: str):
        with self._lock:
            return self._conn.execute(
                "SELECT * FROM apps WHERE api_key = ?", (api_key,)
            ).fetchone()

    def app_exists(self, app_id: str) -> bool:
        with self._lock:
            row = self._conn.execute("SELECT 1 FROM apps WHERE app_id = ?", (app_id,)).fetchone()
        return row is not None

    # -- grants --------------------------------------------------------

    def upsert_grant(self, user_id: str, app_id: str, allow_filtering: bool,
                     allow_others_to_share_me: bool) -> None:
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO grants VALUES (?, ?, ?, ?, ?) "
                "ON CONFLICT(user_id, app_id) DO UPDATE SET "
                "allow_filtering = excluded.allow_filtering, "
                "allow_others_to_share_me = excluded.allow_others_to_share_me, "
                "updated_at = excluded.updated_at",
                (user_id, app_id, int(allow_filtering), int(allow_others_to_share_me), time.time()),
            )

    def grant_for(self, user_id: str, app_id: str):
        with self._lock:
            return self._conn.execute(
                "SELECT * FROM grants WHERE user_id = ? AND app_id = ?", (user_id, app_id)
            ).fetchone()

    def strict_users(self, app_id: str) -> set[str]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT user_id FROM grants WHERE app_id = ? AND allow_others_to_share_me = 0",
                (app_id,),
            ).fetchall()
        return {row["user_id"] for row in rows}

    # -- lists ---------------------------------------------------------

    def upsert_term(self, owner: str, app_id: str, kind: ListKind, term: Term) -> None:
        now = time.time()
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO lists VALUES (?, ?, ?, ?) "
                "ON CONFLICT(owner, app_id, kind) DO UPDATE SET updated_at = excluded.updated_at",
                (owner, app_id, kind.value, now),
            )
            self._conn.execute(
                "INSERT OR REPLACE INTO list_terms VALUES (?, ?, ?, ?, ?)",
                (owner, app_id, kind.value, term.normalized, term.surface),
            )

    def remove_term(self, owner: str, app_id: str, kind: ListKind, surface: str) -> None:
        now = time.time()
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO lists VALUES (?, ?, ?, ?) "
                "ON CONFLICT(owner, app_id, kind) DO UPDATE SET updated_at = excluded.updated_at",
                (owner, app_id, kind.value, now),
            )
            self._conn.execute(
                "DELETE FROM list_terms WHERE owner = ? AND app_id = ? AND kind = ? AND normalized = ?",
                (owner, app_id, kind.value, normalize(surface)),
            )

    def get_list(self, owner: str, app_id: str, kind: ListKind) -> PolicyList:
        with self._lock:
            meta = self._conn.execute(
                "SELECT updated_at FROM lists WHERE owner = ? AND app_id = ? AND kind = ?",
                (owner, app_id, kind.value),
            ).fetchone()
            rows = self._conn.execute(
                "SELECT normalized, surface FROM list_terms "
                "WHERE owner = ? AND app_id = ? AND kind = ? ORDER BY normalized",
                (owner, app_id, kind.value),
            ).fetchall()
        plist = PolicyList(owner, app_id, kind, updated_at=meta["updated_at"] if meta else 0.0)
        for row in rows:
            plist.terms[row["normalized"]] = Term(normalized=row["normalized"], surface=row["surface"])
        return plist

    def lists_for_app(self, app_id: str) -> list[PolicyList]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT owner, kind, normalized, surface FROM list_terms WHERE app_id = ? "
                "ORDER BY owner, kind, normalized",
                (app_id,),
            ).fetchall()
        lists: dict[tuple[str, str], PolicyList] = {}
        for row in rows:
            key = (row["owner"], row["kind"])
            plist = lists.get(key)
            if plist is None:
                plist = PolicyList(row["owner"], app_id, ListKind(row["kind"]))
                lists[key] = plist
            plist.terms[row["normalized"]] = Term(normalized=row["normalized"], surface=row["surface"])
        return [lists[key] for key in sorted(lists)]

    # -- reports -------------------------------------------------------

    def add_report(
        self,
        app_id: str,
        sender: str,
        total_masked: int,
        by_source: dict[str, int],
        spans: list[tuple[int, int, str]],
        owner_hits: dict[str, int],
        created_at: float | None = None,
    ) -> int:
        created_at = time.time() if created_at is None else created_at
        with self._lock, self._conn:
            cur = self._conn.execute(
                "INSERT INTO reports (app_id, sender, created_at, total_masked, by_source, spans) "
                "VALUES (?, ?, ?, ?, ?, ?)",
                (app_id, sender, created_at, total_masked,
                 json.dumps(by_source, sort_keys=True), json.dumps(spans)),
            )
            report_id = cur.lastrowid
            for owner, hits in owner_hits.items():
                self._conn.execute(
                    "INSERT INTO report_owner_hits VALUES (?, ?, ?)", (report_id, owner, hits)
                )
        return report_id

    def reports_for_sender(self, sender: str, app_id: str, since: float) -> list[dict]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM reports WHERE sender = ? AND app_id = ? AND created_at > ? "
                "ORDER BY created_at, report_id",
                (sender, app_id, since),
            ).fetchall()
        return [
            {
                "type": "report",
                "report_id": row["report_id"],
                "app_id": row["app_id"],
                "timestamp": row["created_at"],
                "total_masked": row["total_masked"],
                "by_source": json.loads(row["by_source"]),
                "spans": json.loads(row["spans"]),
            }
            for row in rows
        ]

    def notifications_for_owner(self, owner: str, app_id: str, since: float) -> list[dict]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT r.report_id, r.app_id, r.created_at, h.hits FROM report_owner_hits h "
                "JOIN reports r ON r.report_id = h.report_id "
                "WHERE h.owner = ? AND r.app_id = ? AND r.sender != ? AND r.created_at > ? "
                "ORDER BY r.created_at, r.report_id",
                (owner, app_id, owner, since),
            ).fetchall()
        return [
            {
                "type": "notification",
                "report_id": row["report_id"],
                "app_id": row["app_id"],
                "timestamp": row["created_at"],
                "masked_count": row["hits"],
            }
            for row in rows
        ]

    # -- test/audit helper ----------------------------------------------

    def dump_all_text(self) -> str:
        """Every textual and binary cell in the datastore, for leak scans."""
        chunks: list[str] = []
        with self._lock:
            tables = [
                row["name"]
                for row in self._conn.execute(
                    "SELECT name FROM sqlite_master WHERE type = 'table'"
                ).fetchall()
            ]
            for table in tables:
                for row in self._conn.execute(f"SELECT * FROM {table}").fetchall():
                    for value in tuple(row):
                        if isinstance(value, bytes):
                            chunks.append(value.hex())
                        else:
                            chunks.append(str(value))
        return "\n".join(chunks)
