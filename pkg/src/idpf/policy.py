"""Per-(user, app) filtering lists and effective-policy resolution.

Three lists exist for every (user, app) pair: a self-regarding blacklist
(terms the owner forbids anyone to share about them), an other-regarding
blacklist (terms the owner filters from their own outgoing messages), and
a self-regarding whitelist (terms the owner declares shareable, which take
precedence over everything else that the owner controls).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .match_engine import MatchSpan, Term, normalize
from .vocab import Category, category_terms as load_category_terms

SYSTEM = "SYSTEM"
SENDER_ORB = "SENDER_ORB"

SOURCE_ORB = "orb"
SOURCE_NUMERAL = "numeral"


def srb_source(owner: str) -> str:
    return f"srb:{owner}"


def category_source(category: Category) -> str:
    return f"category:{category.value}"


class ListKind(str, Enum):
    SRB = "srb"
    ORB = "orb"
    SRW = "srw"


class UnknownUser(LookupError):
    pass


class UnknownApp(LookupError):
    pass


@dataclass
class PolicyList:
    """One list of a (owner, app, kind) triple; terms keyed by normalized form."""

    owner: str
    app: str
    kind: ListKind
    terms: dict[str, Term] = field(default_factory=dict)
    updated_at: float = 0.0

    def term_set(self) -> tuple[Term, ...]:
        return tuple(self.terms[key] for key in sorted(self.terms))


@dataclass(frozen=True)
class FilterScheme:
    """Sender-selected filtering options for one send event."""

    categories: frozenset[Category] = frozenset()
    numerals: bool = False
    placeholder: str = "[FILTERED]"

    @classmethod
    def of(cls, categories: Iterable[Category | str] = (), numerals: bool = False,
           placeholder: str = "[FILTERED]") -> "FilterScheme":
        return cls(frozenset(Category(c) for c in categories), numerals, placeholder)

    @property
    def numeral_mode(self) -> bool:
        return self.numerals or Category.NUMERALS in self.categories


@dataclass(frozen=True)
class OwnedEntry:
    """A blacklist term with the identity that put it there.

    ``owner`` is a user id for SRB entries, or the SENDER_ORB / SYSTEM
    sentinels; ``source`` is the stable report key ("srb:<user>", "orb",
    "category:<id>").
    """

    term: Term
    owner: str
    source: str

    @property
    def priority(self) -> tuple:
        # user SRB outranks the sender's ORB, which outranks categories
        if self.owner not in (SYSTEM, SENDER_ORB):
            return (0, self.owner)
        if self.owner == SENDER_ORB:
            return (1, "")
        return (2, self.source)


@dataclass(frozen=True)
class EffectivePolicy:
    """The compiled, owner-tagged term set governing one filter invocation."""

    app: str
    sender: str
    blacklist: tuple[OwnedEntry, ...]
    sender_whitelist: frozenset[str]
    per_owner_whitelists: Mapping[str, frozenset[str]]
    scheme: FilterScheme

    def entries_by_norm(self) -> dict[str, tuple[OwnedEntry, ...]]:
        index: dict[str, list[OwnedEntry]] = {}
        for entry in self.blacklist:
            index.setdefault(entry.term.normalized, []).append(entry)
        return {key: tuple(val) for key, val in index.items()}

    def matcher_terms(self) -> tuple[Term, ...]:
        seen: dict[str, Term] = {}
        for entry in self.blacklist:
            seen.setdefault(entry.term.normalized, entry.term)
        return tuple(seen[key] for key in sorted(seen))


@dataclass(frozen=True)
class AttributedSpan:
    """A span plus the entry that decided its fate."""

    span: MatchSpan
    entry: OwnedEntry


@dataclass(frozen=True)
class ResolvedSpans:
    masked: tuple[AttributedSpan, ...]
    preserved: tuple[AttributedSpan, ...]


def compile_effective(
    sender: str,
    app: str,
    scheme: FilterScheme,
    lists: Iterable[PolicyList],
    strict_users: Iterable[str] = (),
    categories: Mapping[Category, Sequence[Term]] | None = None,
) -> EffectivePolicy:
    """Union all SRBs for the app, the sender's ORB, and the selected
    category vocabularies into one owner-tagged blacklist.

    Entries for the same term are deduplicated with priority
    user-SRB > sender-ORB > category; all same-priority SRB owners are
    kept so the conservative masking rule can consider each of them.
    Strict users (those who disallowed others sharing their data) have
    their whitelists dropped.
    """
    strict = set(strict_users)
    if categories is None:
        wanted = [c for c in scheme.categories if c is not Category.NUMERALS]
        categories = load_category_terms(wanted)

    srb_entries: dict[str, list[OwnedEntry]] = {}
    orb_entries: dict[str, OwnedEntry] = {}
    sys_entries: dict[str, OwnedEntry] = {}
    per_owner_wl: dict[str, frozenset[str]] = {}
    sender_wl: frozenset[str] = frozenset()

    for plist in lists:
        if plist.app != app:
            continue
        if plist.kind is ListKind.SRB:
            for norm, term in plist.terms.items():
                srb_entries.setdefault(norm, []).append(
                    OwnedEntry(term, plist.owner, srb_source(plist.owner))
                )
        elif plist.kind is ListKind.ORB and plist.owner == sender:
            for norm, term in plist.terms.items():
                orb_entries.setdefault(norm, OwnedEntry(term, SENDER_ORB, SOURCE_ORB))
        elif plist.kind is ListKind.SRW and plist.owner not in strict:
            norms = frozenset(plist.terms)
            per_owner_wl[plist.owner] = norms
            if plist.owner == sender:
                sender_wl = norms

    for category in sorted(scheme.categories, key=lambda c: c.value):
        if category is Category.NUMERALS:
            continue
        source = category_source(category)
        for term in categories.get(category, ()):
            sys_entries.setdefault(term.normalized, OwnedEntry(term, SYSTEM, source))

    merged: list[OwnedEntry] = []
    for norm, entries in srb_entries.items():
        merged.extend(sorted(entries, key=lambda e: e.owner))
    for norm, entry in orb_entries.items():
        if norm not in srb_entries:
            merged.append(entry)
    for norm, entry in sys_entries.items():
        if norm not in srb_entries and norm not in orb_entries:
            merged.append(entry)
    merged.sort(key=lambda e: (e.term.normalized, e.priority))

    return EffectivePolicy(
        app=app,
        sender=sender,
        blacklist=tuple(merged),
        sender_whitelist=sender_wl,
        per_owner_whitelists=per_owner_wl,
        scheme=scheme,
    )


def resolve(policy: EffectivePolicy, spans: Sequence[MatchSpan], text: str) -> ResolvedSpans:
    """Split spans into masked and preserved per whitelist precedence.

    A span is preserved only when every entry it matched agrees: an SRB
    entry defers to its owner's whitelist, while ORB and category entries
    defer to the sender's whitelist. Numeral spans are preserved when the
    digits themselves appear in the sender's whitelist.
    """
    index = policy.entries_by_norm()
    masked: list[AttributedSpan] = []
    preserved: list[AttributedSpan] = []
    for span in spans:
        if span.is_numeral:
            norm = normalize(text[span.start : span.end])
            entry = OwnedEntry(Term(normalized=norm, surface=text[span.start : span.end]),
                               SYSTEM, SOURCE_NUMERAL)
            if norm in policy.sender_whitelist:
                preserved.append(AttributedSpan(span, entry))
            else:
                masked.append(AttributedSpan(span, entry))
            continue
        norm = span.matched_term.normalized
        entries = index.get(norm)
        if not entries:
            raise ValueError(f"span term {norm!r} is not in the effective blacklist")
        masking = []
        for entry in entries:
            if entry.owner in (SYSTEM, SENDER_ORB):
                allowed = norm in policy.sender_whitelist
            else:
                allowed = norm in policy.per_owner_whitelists.get(entry.owner, frozenset())
            if not allowed:
                masking.append(entry)
        if masking:
            masking.sort(key=lambda e: e.priority)
            masked.append(AttributedSpan(span, masking[0]))
        else:
            preserved.append(AttributedSpan(span, sorted(entries, key=lambda e: e.priority)[0]))
    return ResolvedSpans(masked=tuple(masked), preserved=tuple(preserved))


class PolicyRegistry:
    """In-memory settings collector: users, apps, and their lists.

    The reference implementation of list management; the HTTP service
    stores the same state in SQLite and compiles through the same
    ``compile_effective``/``resolve`` functions.
    """

    def __init__(self):
        self._users: set[str] = set()
        self._apps: set[str] = set()
        self._lists: dict[tuple[str, str, ListKind], PolicyList] = {}
        self._strict: set[tuple[str, str]] = set()

    def add_user(self, user: str) -> None:
        self._users.add(user)

    def add_app(self, app: str) -> None:
        self._apps.add(app)

    def set_strict(self, user: str, app: str, strict: bool) -> None:
        self._check(user, app)
        if strict:
            self._strict.add((user, app))
        else:
            self._strict.discard((user, app))

    def _check(self, owner: str, app: str) -> None:
        if owner not in self._users:
            raise UnknownUser(owner)
        if app not in self._apps:
            raise UnknownApp(app)

    def get_list(self, owner: str, app: str, kind: ListKind) -> PolicyList:
        self._check(owner, app)
        key = (owner, app, ListKind(kind))
        if key not in self._lists:
            self._lists[key] = PolicyList(owner, app, ListKind(kind))
        return self._lists[key]

    def upsert_entry(self, owner: str, app: str, kind: ListKind, term: Term | str) -> PolicyList:
        plist = self.get_list(owner, app, kind)
        term = term if isinstance(term, Term) else Term.of(term)
        plist.terms[term.normalized] = term
        plist.updated_at = time.time()
        return plist

    def remove_entry(self, owner: str, app: str, kind: ListKind, term: Term | str) -> PolicyList:
        plist = self.get_list(owner, app, kind)
        norm = term.normalized if isinstance(term, Term) else normalize(term)
        plist.terms.pop(norm, None)
        plist.updated_at = time.time()
        return plist

    def lists_for_app(self, app: str) -> list[PolicyList]:
        return [pl for (_, a, _), pl in sorted(self._lists.items()) if a == app]

    def strict_users(self, app: str) -> set[str]:
        return {user for (user, a) in self._strict if a == app}

    def conflict_terms(self, owner: str, app: str) -> list[str]:
        """Terms present in both SRB and SRW of the same owner (UI warning)."""
        srb = self.get_list(owner, app, ListKind.SRB).terms
        srw = self.get_list(owner, app, ListKind.SRW).terms
        return sorted(set(srb) & set(srw))

    def compile_effective(self, sender: str, app: str, scheme: FilterScheme) -> EffectivePolicy:
        self._check(sender, app)
        return compile_effective(
            sender, app, scheme, self.lists_for_app(app), self.strict_users(app)
        )


def export_list(plist: PolicyList) -> str:
    """Serialize a list with its 3-line header, loadable as a term file."""
    lines = [
        f"# owner: {plist.owner}",
        f"# app: {plist.app}",
        f"# kind: {plist.kind.value}",
    ]
    lines.extend(term.surface for term in plist.term_set())
    return "\n".join(lines) + "\n"


def import_list(raw: str) -> PolicyList:
    lines = raw.splitlines()
    header = {}
    for line in lines[:3]:
        if line.startswith("#") and ":" in line:
            key, _, value = line[1:].partition(":")
            header[key.strip()] = value.strip()
    missing = {"owner", "app", "kind"} - set(header)
    if missing:
        raise ValueError(f"list header missing fields: {sorted(missing)}")
    plist = PolicyList(header["owner"], header["app"], ListKind(header["kind"]))
    for line in lines[3:]:
        line = line.rstrip()
        if not line or line.startswith("#"):
            continue
        term = Term.of(line)
        plist.terms[term.normalized] = term
    plist.updated_at = time.time()
    return plist
