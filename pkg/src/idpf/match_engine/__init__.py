"""Multi-keyword matching: term model, strategies, spans, and the oracle."""

from .oracle import oracle_matches
from .spans import (
    DEFAULT_PLACEHOLDER,
    NUMERAL,
    MatchSpan,
    OverlappingSpans,
    SpanOutOfBounds,
    apply_mask,
    sweep_leftmost_longest,
    validate_spans,
)
from .strategies import Matcher, MatchStrategy, compile_matcher, find_matches
from .terms import InvalidTerm, Term, coerce_terms, is_word_char, load_terms, normalize, prepare_text

__all__ = [
    "DEFAULT_PLACEHOLDER",
    "InvalidTerm",
    "Matcher",
    "MatchSpan",
    "MatchStrategy",
    "NUMERAL",
    "OverlappingSpans",
    "SpanOutOfBounds",
    "Term",
    "apply_mask",
    "coerce_terms",
    "compile_matcher",
    "find_matches",
    "is_word_char",
    "load_terms",
    "normalize",
    "oracle_matches",
    "prepare_text",
    "sweep_leftmost_longest",
    "validate_spans",
]
