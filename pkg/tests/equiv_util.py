"""Random workload generator for cross-strategy equivalence checks."""

from __future__ import annotations

import random

from idpf.match_engine import InvalidTerm, MatchStrategy, Term, compile_matcher, oracle_matches

ALPHABETS = [
    "abcdefgh",
    "abc ABC xyz",
    "aàâäbcçdeéèêë ñö üß",
    "abc 0123456789 _-+.",
    "日本語中文한국어 abc",
    "ab😀🙈 cd 1²3",
    "a\tb\nc d e",
]

SEPARATORS = [" ", "  ", "\t", "\n", ", ", ". ", "-", "_", "+", "!", "…", "、"]


def _random_token(rng: random.Random, alphabet: str) -> str:
    width = rng.randint(1, 8)
    return "".join(rng.choice(alphabet) for _ in range(width))


def make_case(rng: random.Random):
    """One random (terms, text, flags) workload with planted term hits."""
    alphabet = rng.choice(ALPHABETS)
    term_count = rng.randint(0, 50)
    terms: list[Term] = []
    while len(terms) < term_count:
        token = _random_token(rng, alphabet)
        if rng.random() < 0.25:
            token = token + " " + _random_token(rng, alphabet)
        try:
            terms.append(Term.of(token))
        except InvalidTerm:
            term_count -= 1
    case_sensitive = rng.random() < 0.3
    numeral_mode = rng.random() < 0.4

    target_len = rng.randint(0, 2000)
    parts: list[str] = []
    size = 0
    while size < target_len:
        roll = rng.random()
        if terms and roll < 0.35:
            surface = rng.choice(terms).surface
            if not case_sensitive and rng.random() < 0.5:
                surface = "".join(
                    c.upper() if rng.random() < 0.5 else c.lower() for c in surface
                )
            parts.append(surface)
        elif roll < 0.45:
            parts.append(str(rng.randint(0, 10**6)))
        else:
            parts.append(_random_token(rng, alphabet))
        size += len(parts[-1])
        sep = rng.choice(SEPARATORS)
        parts.append(sep)
        size += len(sep)
    text = "".join(parts)[:target_len]
    return terms, text, case_sensitive, numeral_mode


def span_signature(spans):
    return [s.key() for s in spans]


def check_case(terms, text, case_sensitive, numeral_mode):
    """Compare all strategies against the oracle; return None or a message."""
    expected = span_signature(
        oracle_matches(terms, text, case_sensitive=case_sensitive, numeral_mode=numeral_mode)
    )
    for strategy in MatchStrategy:
        matcher = compile_matcher(terms, strategy, case_sensitive, numeral_mode)
        got = span_signature(matcher.find_matches(text))
        if got != expected:
            return (
                f"{strategy.value} diverged from oracle\n"
                f"terms={[t.surface for t in terms]!r}\n"
                f"text={text!r}\ncase_sensitive={case_sensitive} numeral_mode={numeral_mode}\n"
                f"oracle={expected!r}\ngot={got!r}"
            )
    return None
