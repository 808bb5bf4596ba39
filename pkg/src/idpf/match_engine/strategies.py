"""Three interchangeable multi-keyword matchers sharing one contract.

All strategies return the same spans for the same (terms, text, flags):
maximal, non-overlapping, word-boundary matches resolved leftmost-first,
longest-at-each-start. Matching runs over a 1:1 "prepared" copy of the
text (whitespace mapped to spaces, case optionally folded) so offsets
carry straight back to the original.
"""

from __future__ import annotations

import re
import time
from enum import Enum
from typing import Iterable, Sequence

from .spans import NUMERAL, Matched, MatchSpan, sweep_leftmost_longest
from .terms import Term, coerce_terms, is_word_char, prepare_text


class MatchStrategy(str, Enum):
    REGEX_ALTERNATION = "regex"
    KMP_PER_KEYWORD = "kmp"
    TRIE_KEYWORD_PROCESSOR = "trie"


def digit_run_candidates(text: str) -> list[tuple[int, int, Matched]]:
    """Maximal runs of digit characters, as numeral candidates."""
    out: list[tuple[int, int, Matched]] = []
    n = len(text)
    i = 0
    while i < n:
        if text[i].isdecimal():
            j = i + 1
            while j < n and text[j].isdecimal():
                j += 1
            out.append((i, j, NUMERAL))
            i = j
        else:
            i += 1
    return out


def _boundary_ok(text: str, start: int, end: int) -> bool:
    if start > 0 and is_word_char(text[start - 1]):
        return False
    if end < len(text) and is_word_char(text[end]):
        return False
    return True


class _RegexEngine:
    """One alternation of escaped literals, longest alternative first.

    The regex scanner natively implements the resolution rule: leftmost
    position wins, the longest boundary-valid alternative wins there, and
    scanning resumes after the match. A digit-run branch is appended when
    numeral mode is on; a valid term match is never shorter than a digit
    run starting at the same position, so branch order preserves the
    term-beats-numeral tie rule.
    """

    def __init__(self, keys: Sequence[str], numeral_mode: bool):
        branches = []
        if keys:
            alts = "|".join(re.escape(k) for k in sorted(keys, key=lambda k: (-len(k), k)))
            branches.append(rf"(?<!\w)(?:{alts})(?!\w)")
        if numeral_mode:
            branches.append(r"(?P<num>(?<!\d)\d+)")
        self._pattern = re.compile("|".join(branches)) if branches else None

    def find(self, text: str, term_by_key: dict[str, Term]) -> list[MatchSpan]:
        if self._pattern is None:
            return []
        spans = []
        for m in self._pattern.finditer(text):
            if m.lastgroup == "num":
                spans.append(MatchSpan(m.start(), m.end(), NUMERAL))
            else:
                spans.append(MatchSpan(m.start(), m.end(), term_by_key[m.group(0)]))
        return spans


def _kmp_failure(pattern: str) -> list[int]:
    fail = [0] * len(pattern)
    k = 0
    for i in range(1, len(pattern)):
        while k and pattern[i] != pattern[k]:
            k = fail[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        fail[i] = k
    return fail


def _kmp_occurrences(text: str, pattern: str, fail: list[int]) -> list[int]:
    """Start offsets of every (possibly overlapping) occurrence."""
    out = []
    n = len(pattern)
    p0 = pattern[0]
    j = 0
    for i, ch in enumerate(text):
        if j == 0:
            if ch != p0:
                continue
            j = 1
            if n == 1:
                out.append(i)
                j = 0
            continue
        while j and ch != pattern[j]:
            j = fail[j - 1]
        if ch == pattern[j]:
            j += 1
            if j == n:
                out.append(i - n + 1)
                j = fail[j - 1]
    return out


class _KmpEngine:
    """Knuth-Morris-Pratt scan per keyword, then shared overlap resolution."""

    def __init__(self, keys: Sequence[str], numeral_mode: bool):
        self._patterns = [(key, _kmp_failure(key)) for key in keys]
        self._numeral_mode = numeral_mode

    def find(self, text: str, term_by_key: dict[str, Term]) -> list[MatchSpan]:
        candidates: list[tuple[int, int, Matched]] = []
        for key, fail in self._patterns:
            term = term_by_key[key]
            size = len(key)
            for start in _kmp_occurrences(text, key, fail):
                if _boundary_ok(text, start, start + size):
                    candidates.append((start, start + size, term))
        if self._numeral_mode:
            candidates.extend(digit_run_candidates(text))
        return sweep_leftmost_longest(candidates)


_LEAF = object()  # trie key marking a complete keyword; never equals a text char


class _TrieEngine:
    """Character trie walked in a single pass over the text.

    At every boundary-valid position the walk records the deepest node that
    both completes a keyword and ends on a word boundary; the scan then
    resumes after the accepted match.
    """

    def __init__(self, keys: Sequence[str], numeral_mode: bool):
        root: dict = {}
        for key in keys:
            node = root
            for ch in key:
                nxt = node.get(ch)
                if nxt is None:
                    nxt = {}
                    node[ch] = nxt
                node = nxt
            node[_LEAF] = key
        self._root = root
        self._numeral_mode = numeral_mode

    def find(self, text: str, term_by_key: dict[str, Term]) -> list[MatchSpan]:
        spans = []
        root = self._root
        numerals = self._numeral_mode
        n = len(text)
        pos = 0
        while pos < n:
            best_end = 0
            best_key = None
            if root and (pos == 0 or not is_word_char(text[pos - 1])):
                node = root
                i = pos
                while i < n:
                    node = node.get(text[i])
                    if node is None:
                        break
                    i += 1
                    key = node.get(_LEAF)
                    if key is not None and (i == n or not is_word_char(text[i])):
                        best_end = i
                        best_key = key
            num_end = 0
            if numerals and text[pos].isdecimal() and (pos == 0 or not text[pos - 1].isdecimal()):
                j = pos + 1
                while j < n and text[j].isdecimal():
                    j += 1
                num_end = j
            if best_end >= num_end and best_key is not None:
                spans.append(MatchSpan(pos, best_end, term_by_key[best_key]))
                pos = best_end
            elif num_end:
                spans.append(MatchSpan(pos, num_end, NUMERAL))
                pos = num_end
            else:
                pos += 1
        return spans


_ENGINES = {
    MatchStrategy.REGEX_ALTERNATION: _RegexEngine,
    MatchStrategy.KMP_PER_KEYWORD: _KmpEngine,
    MatchStrategy.TRIE_KEYWORD_PROCESSOR: _TrieEngine,
}


class Matcher:
    """A compiled, immutable term matcher.

    Safe to share across threads; compile once, match many times.
    ``compile_seconds`` records how long compilation took.
    """

    def __init__(
        self,
        terms: Iterable[Term | str],
        strategy: MatchStrategy = MatchStrategy.TRIE_KEYWORD_PROCESSOR,
        case_sensitive: bool = False,
        numeral_mode: bool = False,
    ):
        self.strategy = MatchStrategy(strategy)
        self.case_sensitive = case_sensitive
        self.numeral_mode = numeral_mode
        self.terms = tuple(coerce_terms(terms))
        started = time.perf_counter()
        term_by_key: dict[str, Term] = {}
        for term in self.terms:
            key = term.match_key(case_sensitive)
            if key not in term_by_key:
                term_by_key[key] = term
        self._term_by_key = term_by_key
        self._engine = _ENGINES[self.strategy](list(term_by_key), numeral_mode)
        self.compile_seconds = time.perf_counter() - started

    def find_matches(self, text: str) -> list[MatchSpan]:
        """All maximal, non-overlapping, word-boundary matches in the text."""
        if not text or (not self._term_by_key and not self.numeral_mode):
            return []
        prepared = prepare_text(text, self.case_sensitive)
        return self._engine.find(prepared, self._term_by_key)


def compile_matcher(
    terms: Iterable[Term | str],
    strategy: MatchStrategy = MatchStrategy.TRIE_KEYWORD_PROCESSOR,
    case_sensitive: bool = False,
    numeral_mode: bool = False,
) -> Matcher:
    """Compile a term set under the given strategy."""
    return Matcher(terms, strategy, case_sensitive, numeral_mode)


def find_matches(matcher: Matcher, text: str) -> list[MatchSpan]:
    return matcher.find_matches(text)
