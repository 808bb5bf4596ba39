"""Password storage and session tokens.

Passwords are never stored; only a PBKDF2-HMAC-SHA256 transform with a
per-account random salt. Verification is constant-time.
"""

from __future__ import annotations

import hashlib
import hmac
import os
import secrets
from dataclasses import dataclass

DEFAULT_ITERATIONS = 210_000
SALT_BYTES = 16
HASH_BYTES = 32
MIN_PASSWORD_CHARS = 8


@dataclass(frozen=True)
class PasswordRecord:
    salt: bytes
    iterations: int
    hash: bytes


def hash_password(password: str, iterations: int = DEFAULT_ITERATIONS) -> PasswordRecord:
    salt = os.urandom(SALT_BYTES)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, iterations, dklen=HASH_BYTES)
    return PasswordRecord(salt=salt, iterations=iterations, hash=digest)


def verify_password(password: str, record: PasswordRecord) -> bool:
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), record.salt, record.iterations, dklen=HASH_BYTES
    )
    return hmac.compare_digest(digest, record.hash)


_dummies: dict[int, PasswordRecord] = {}


def dummy_record(iterations: int) -> PasswordRecord:
    """A throwaway record so unknown-user logins cost the same as real ones."""
    if iterations not in _dummies:
        _dummies[iterations] = hash_password(secrets.token_hex(16), iterations)
    return _dummies[iterations]


def new_session_token() -> str:
    return secrets.token_hex(16)


def new_api_key() -> str:
    return secrets.token_hex(32)


def new_id() -> str:
    return secrets.token_hex(16)
