"""Ground-truth matcher used to cross-check the real strategies.

Deliberately naive: every term is tried at every position with explicit
boundary checks, and overlap resolution is re-implemented inline rather
than shared with any strategy. Intended for small inputs.
"""

from __future__ import annotations

from typing import Iterable

from .spans import NUMERAL, MatchSpan
from .terms import Term, coerce_terms


def _word(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def _fold(ch: str) -> str:
    low = ch.lower()
    return low if len(low) == 1 else ch


def oracle_matches(
    terms: Iterable[Term | str],
    text: str,
    case_sensitive: bool = False,
    numeral_mode: bool = False,
) -> list[MatchSpan]:
    unique = coerce_terms(terms)
    keyed: list[tuple[str, Term]] = []
    seen = set()
    for term in unique:
        key = term.match_key(case_sensitive)
        if key not in seen:
            seen.add(key)
            keyed.append((key, term))

    chars = []
    for ch in text:
        if ch.isspace():
            chars.append(" ")
        elif case_sensitive:
            chars.append(ch)
        else:
            chars.append(_fold(ch))
    prepared = "".join(chars)

    n = len(prepared)
    spans: list[MatchSpan] = []
    pos = 0
    while pos < n:
        start_ok = pos == 0 or not _word(prepared[pos - 1])
        best_end = 0
        best_term = None
        if start_ok:
            for key, term in keyed:
                end = pos + len(key)
                if end <= n and prepared.startswith(key, pos):
                    if end == n or not _word(prepared[end]):
                        if end > best_end:
                            best_end = end
                            best_term = term
        num_end = 0
        if numeral_mode and prepared[pos].isdecimal():
            if pos == 0 or not prepared[pos - 1].isdecimal():
                num_end = pos + 1
                while num_end < n and prepared[num_end].isdecimal():
                    num_end += 1
        if best_term is not None and best_end >= num_end:
            spans.append(MatchSpan(pos, best_end, best_term))
            pos = best_end
        elif num_end:
            spans.append(MatchSpan(pos, num_end, NUMERAL))
            pos = num_end
        else:
            pos += 1
    return spans
