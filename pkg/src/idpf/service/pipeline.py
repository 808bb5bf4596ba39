"""The filtering pipeline, independent of HTTP and storage.

Composes effective-policy compilation, matching, whitelist resolution,
link extension, and masking. The HTTP handler and the end-to-end equality
tests call this same function, so there is no service-layer drift.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..match_engine import MatchStrategy, apply_mask, compile_matcher
from ..policy import (
    SENDER_ORB,
    SYSTEM,
    FilterScheme,
    PolicyList,
    compile_effective,
    resolve,
)
from ..vocab import Category, extend_link_spans


@dataclass(frozen=True)
class FilterOutcome:
    filtered_text: str
    total_masked: int
    by_source: dict[str, int]
    spans: list[tuple[int, int, str]]
    owner_hits: dict[str, int]


def execute_filter(
    sender: str,
    app_id: str,
    text: str,
    scheme: FilterScheme,
    strategy: MatchStrategy,
    lists: Iterable[PolicyList],
    strict_users: Iterable[str] = (),
) -> FilterOutcome:
    policy = compile_effective(sender, app_id, scheme, lists, strict_users)
    matcher = compile_matcher(
        policy.matcher_terms(), strategy, numeral_mode=scheme.numeral_mode
    )
    spans = matcher.find_matches(text)
    if Category.LINKS in scheme.categories:
        spans = extend_link_spans(text, spans)
    resolved = resolve(policy, spans, text)

    masked_spans = [att.span for att in resolved.masked]
    filtered = apply_mask(text, masked_spans, scheme.placeholder)
    by_source = Counter(att.entry.source for att in resolved.masked)
    span_rows = [
        (att.span.start, att.span.end, att.entry.source) for att in resolved.masked
    ]
    owner_hits: Counter[str] = Counter()
    for att in resolved.masked:
        owner = att.entry.owner
        if owner not in (SYSTEM, SENDER_ORB) and owner != sender:
            owner_hits[owner] += 1
    return FilterOutcome(
        filtered_text=filtered,
        total_masked=len(masked_spans),
        by_source=dict(by_source),
        spans=span_rows,
        owner_hits=dict(owner_hits),
    )
