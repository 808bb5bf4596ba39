"""One-time computation of the golden masked counts for the benchmark sets.

Generates the 10 canonical sentence sets, runs the brute-force oracle over
each joined set, cross-checks the trie strategy span-for-span, and freezes
the per-set counts into tests/data/golden_counts.json. Slow by design (the
oracle tries every term at every position); run once, commit the output.
"""

from __future__ import annotations

import json
import platform
import sys
import time
from multiprocessing import Pool
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from idpf.bench import generate_sentences, load_word_source  # noqa: E402
from idpf.match_engine import MatchStrategy, compile_matcher, load_terms, oracle_matches  # noqa: E402
from idpf.vocab import Category, default_category  # noqa: E402

SEEDS = list(range(1, 11))
N_SENTENCES = 10_000
INJECT_RATE = 0.015
JOINER = "\n\n"

_surnames = None


def _work(seed: int):
    global _surnames
    if _surnames is None:
        _surnames = [t.surface for t in default_category(Category.NAMES).terms]
    words = load_word_source()
    sset = generate_sentences(N_SENTENCES, seed, words, inject=_surnames, inject_rate=INJECT_RATE)
    joined = JOINER.join(sset.sentences)
    started = time.perf_counter()
    oracle_spans = [s.key() for s in oracle_matches(_surnames, joined)]
    oracle_secs = time.perf_counter() - started
    trie = compile_matcher(_surnames, MatchStrategy.TRIE_KEYWORD_PROCESSOR)
    trie_spans = [s.key() for s in trie.find_matches(joined)]
    assert trie_spans == oracle_spans, f"seed {seed}: trie diverges from oracle"
    print(f"seed {seed}: {len(oracle_spans)} masked spans (oracle {oracle_secs:.0f}s)", flush=True)
    return seed, len(oracle_spans)


def main() -> int:
    with Pool(2) as pool:
        results = dict(pool.map(_work, SEEDS))
    counts = [results[seed] for seed in SEEDS]
    payload = {
        "seeds": SEEDS,
        "n_sentences": N_SENTENCES,
        "inject_rate": INJECT_RATE,
        "joiner": JOINER,
        "blacklist": "bundled names category (800 surnames)",
        "verified_against": "oracle_matches, span-for-span",
        "python": platform.python_version(),
        "counts": counts,
    }
    out = REPO / "tests" / "data" / "golden_counts.json"
    out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
