"""Term model and the normalization rules shared by every matching strategy."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

MAX_TERM_CHARS = 256

_WS = re.compile(r"\s")


class InvalidTerm(ValueError):
    """A surface string that cannot become a matchable term."""

    def __init__(self, surface: str, reason: str):
        super().__init__(f"invalid term {surface!r}: {reason}")
        self.surface = surface
        self.reason = reason


def is_word_char(ch: str) -> bool:
    """Letters, digits, and underscore make up the word alphabet.

    Matches the regex ``\\w`` class so all strategies agree on boundaries.
    """
    return ch.isalnum() or ch == "_"


def fold_char(ch: str) -> str:
    """Length-preserving lowercase of a single character.

    The rare characters whose lowercase form expands (e.g. U+0130) are kept
    unchanged so offsets into folded text always line up with the original.
    """
    low = ch.lower()
    return low if len(low) == 1 else ch


def fold_text(text: str) -> str:
    lowered = text.lower()
    if len(lowered) == len(text):
        return lowered
    return "".join(fold_char(ch) for ch in text)


def prepare_text(text: str, case_sensitive: bool = False) -> str:
    """Map text 1:1 into match space: every whitespace character becomes a
    single space, and case is folded unless the matcher is case sensitive.

    Offsets into the result are valid offsets into the original text.
    """
    if not case_sensitive:
        text = fold_text(text)
    return _WS.sub(" ", text)


def normalize(surface: str) -> str:
    """Canonical term form: case-folded, inner whitespace runs collapsed to
    single spaces, surrounding whitespace trimmed."""
    return fold_text(" ".join(surface.split()))


@dataclass(frozen=True, order=True)
class Term:
    """A blacklist/whitelist vocabulary item.

    ``surface`` is what the user typed; ``normalized`` is the canonical form
    used for matching and deduplication.
    """

    normalized: str
    surface: str

    @classmethod
    def of(cls, surface: str) -> "Term":
        if not surface:
            raise InvalidTerm(surface, "empty")
        if len(surface) > MAX_TERM_CHARS:
            raise InvalidTerm(surface, f"longer than {MAX_TERM_CHARS} characters")
        norm = normalize(surface)
        if not norm:
            raise InvalidTerm(surface, "whitespace only")
        if not any(is_word_char(ch) for ch in norm):
            raise InvalidTerm(surface, "contains no word character")
        return cls(normalized=norm, surface=surface)

    def match_key(self, case_sensitive: bool = False) -> str:
        """The literal string searched for in prepared text."""
        if case_sensitive:
            return " ".join(self.surface.split())
        return self.normalized


def coerce_terms(terms) -> list[Term]:
    """Accept strings or Terms; validate and deduplicate under normalization.

    Order is deterministic (sorted by normalized form) regardless of input
    order so compiled matchers behave identically across runs.
    """
    by_norm: dict[str, Term] = {}
    for item in terms:
        term = item if isinstance(item, Term) else Term.of(item)
        kept = by_norm.get(term.normalized)
        if kept is None or term.surface < kept.surface:
            by_norm[term.normalized] = term
    return [by_norm[key] for key in sorted(by_norm)]


def load_terms(path: str | Path) -> list[Term]:
    """Read a newline-delimited UTF-8 term file.

    Lines starting with '#' are comments; trailing whitespace is stripped;
    blank lines are skipped. Duplicates (under normalization) collapse.
    """
    text = Path(path).read_text(encoding="utf-8")
    surfaces = []
    for line in text.splitlines():
        line = line.rstrip()
        if not line or line.startswith("#"):
            continue
        surfaces.append(line)
    return coerce_terms(surfaces)
