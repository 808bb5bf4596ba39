"""Located matches, overlap resolution, and mask application."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .terms import Term

DEFAULT_PLACEHOLDER = "[FILTERED]"


class _Numeral:
    """Sentinel standing in for the matched term on digit-run spans."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NUMERAL"


NUMERAL = _Numeral()

Matched = Union[Term, _Numeral]


class SpanOutOfBounds(ValueError):
    pass


class OverlappingSpans(ValueError):
    pass


@dataclass(frozen=True)
class MatchSpan:
    """A located hit: ``text[start:end]`` matched ``matched_term``.

    Offsets are code point indices into the original text, always on
    character boundaries, so slicing and splicing are safe.
    """

    start: int
    end: int
    matched_term: Matched

    @property
    def is_numeral(self) -> bool:
        return self.matched_term is NUMERAL

    def key(self) -> tuple[int, int, str]:
        norm = "#NUM" if self.is_numeral else self.matched_term.normalized
        return (self.start, self.end, norm)


def sweep_leftmost_longest(
    candidates: Iterable[tuple[int, int, Matched]],
) -> list[MatchSpan]:
    """Resolve overlapping candidates into a non-overlapping span list.

    Scans left to right; at each start position the longest candidate wins
    (a term beats a numeral run of equal length), and anything beginning
    before the accepted span ends is dropped.
    """
    best: dict[int, tuple[int, int, Matched]] = {}
    for start, end, matched in candidates:
        rank = (end, 0 if matched is NUMERAL else 1, matched)
        kept = best.get(start)
        if kept is None or rank[:2] > kept[:2]:
            best[start] = rank
    spans: list[MatchSpan] = []
    pos = 0
    for start in sorted(best):
        if start < pos:
            continue
        end, _, matched = best[start]
        spans.append(MatchSpan(start, end, matched))
        pos = end
    return spans


def validate_spans(text: str, spans: Iterable[MatchSpan]) -> None:
    """Raise if spans are unsorted, overlapping, or out of bounds."""
    last_end = 0
    for span in spans:
        if not (0 <= span.start < span.end <= len(text)):
            raise SpanOutOfBounds(f"span {span.start}..{span.end} in text of length {len(text)}")
        if span.start < last_end:
            raise OverlappingSpans(f"span {span.start}..{span.end} overlaps or precedes a prior span")
        last_end = span.end


def apply_mask(
    text: str,
    spans: Iterable[MatchSpan],
    placeholder: str = DEFAULT_PLACEHOLDER,
) -> str:
    """Replace every span with the placeholder, preserving all other text."""
    parts: list[str] = []
    last = 0
    for span in spans:
        if not (0 <= span.start < span.end <= len(text)):
            raise SpanOutOfBounds(f"span {span.start}..{span.end} in text of length {len(text)}")
        if span.start < last:
            raise OverlappingSpans(f"span {span.start}..{span.end} overlaps or precedes a prior span")
        parts.append(text[last : span.start])
        parts.append(placeholder)
        last = span.end
    parts.append(text[last:])
    return "".join(parts)
