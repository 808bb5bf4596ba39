"""Command line entry point for running the filtering service."""

from __future__ import annotations

import argparse
import os

from ..match_engine import MatchStrategy
from .app import MAX_TEXT_BYTES, ServiceConfig, create_app
from .auth import DEFAULT_ITERATIONS


def build_config(argv: list[str] | None = None) -> ServiceConfig:
    env = os.environ
    parser = argparse.ArgumentParser(prog="idpf-serve", description="Run the filtering service")
    parser.add_argument("--host", default=env.get("IDPF_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(env.get("IDPF_PORT", "8000")))
    parser.add_argument("--db", default=env.get("IDPF_DB", "idpf.sqlite3"),
                        help="datastore path (single SQLite file)")
    parser.add_argument("--pbkdf2-iterations", type=int,
                        default=int(env.get("IDPF_PBKDF2_ITERATIONS", str(DEFAULT_ITERATIONS))))
    parser.add_argument("--default-strategy", choices=[s.value for s in MatchStrategy],
                        default=env.get("IDPF_STRATEGY", MatchStrategy.TRIE_KEYWORD_PROCESSOR.value))
    parser.add_argument("--max-text-bytes", type=int,
                        default=int(env.get("IDPF_MAX_TEXT_BYTES", str(MAX_TEXT_BYTES))))
    parser.add_argument("--session-ttl", type=float,
                        default=float(env.get("IDPF_SESSION_TTL", str(24 * 3600))))
    args = parser.parse_args(argv)
    return ServiceConfig(
        db_path=args.db,
        pbkdf2_iterations=args.pbkdf2_iterations,
        session_ttl_seconds=args.session_ttl,
        default_strategy=MatchStrategy(args.default_strategy),
        max_text_bytes=args.max_text_bytes,
        host=args.host,
        port=args.port,
    )


def main(argv: list[str] | None = None) -> int:
    import uvicorn

    config = build_config(argv)
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
