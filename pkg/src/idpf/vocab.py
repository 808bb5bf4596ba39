"""Built-in category vocabularies and user-supplied term files.

Six categories are defined: names, links, countries, diseases,
street_names, and numerals. Numerals is pattern based and carries no term
list. Links terms are URL prefixes with extended-span semantics applied as
a post-pass (see ``extend_link_spans``).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .match_engine import MatchSpan, Term, prepare_text, sweep_leftmost_longest
from .match_engine.terms import is_word_char


class Category(str, Enum):
    NAMES = "names"
    LINKS = "links"
    COUNTRIES = "countries"
    DISEASES = "diseases"
    STREET_NAMES = "street_names"
    NUMERALS = "numerals"


BUILTIN = "builtin"

_FILES = {
    Category.NAMES: "names.txt",
    Category.LINKS: "links.txt",
    Category.COUNTRIES: "countries.txt",
    Category.DISEASES: "diseases.txt",
    Category.STREET_NAMES: "street_names.txt",
}


class InvalidEncoding(ValueError):
    pass


class EmptyVocabulary(ValueError):
    pass


@dataclass(frozen=True)
class VocabularyCategory:
    id: Category
    terms: tuple[Term, ...]
    source: str

    @property
    def term_count(self) -> int:
        return len(self.terms)


def _parse_terms(raw: str) -> list[Term]:
    from .match_engine import coerce_terms

    surfaces = []
    for line in raw.splitlines():
        line = line.rstrip()
        if not line or line.startswith("#"):
            continue
        surfaces.append(line)
    return coerce_terms(surfaces)


def _data_dir():
    return resources.files("idpf") / "data" / "vocab"


def load_category(category: Category | str, path: str | Path | None = None) -> VocabularyCategory:
    """Load one category, from a user file or the bundled default.

    Terms are deduplicated under normalization. Loading is idempotent.
    """
    category = Category(category)
    if category is Category.NUMERALS:
        return VocabularyCategory(category, (), BUILTIN)
    if path is not None:
        source = str(path)
        file = Path(path)
        if not file.is_file():
            raise FileNotFoundError(source)
        data = file.read_bytes()
    else:
        source = BUILTIN
        data = (_data_dir() / _FILES[category]).read_bytes()
    try:
        raw = data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise InvalidEncoding(f"{source}: {err}") from err
    terms = _parse_terms(raw)
    if not terms:
        raise EmptyVocabulary(source)
    return VocabularyCategory(category, tuple(terms), source)


_defaults: dict[Category, VocabularyCategory] = {}


def default_category(category: Category | str) -> VocabularyCategory:
    category = Category(category)
    if category not in _defaults:
        _defaults[category] = load_category(category)
    return _defaults[category]


def list_categories() -> list[tuple[Category, int]]:
    """All six category ids with their current term counts."""
    return [(cat, default_category(cat).term_count) for cat in Category]


def category_terms(categories: Iterable[Category | str]) -> dict[Category, tuple[Term, ...]]:
    out: dict[Category, tuple[Term, ...]] = {}
    for cat in categories:
        loaded = default_category(cat)
        out[loaded.id] = loaded.terms
    return out


def link_prefixes() -> tuple[Term, ...]:
    return default_category(Category.LINKS).terms


def extend_link_spans(
    text: str,
    spans: Iterable[MatchSpan],
    prefixes: Iterable[Term] | None = None,
    case_sensitive: bool = False,
) -> list[MatchSpan]:
    """Apply link-prefix semantics and re-resolve the span list.

    A link prefix matches wherever it starts on a word boundary, and its
    span extends through the following run of non-space characters (the
    rest of the URL). Identical under every strategy because it runs over
    plain text after regular matching.
    """
    if prefixes is None:
        prefixes = link_prefixes()
    prepared = prepare_text(text, case_sensitive)
    n = len(prepared)
    candidates = [(s.start, s.end, s.matched_term) for s in spans]
    for term in prefixes:
        key = term.match_key(case_sensitive)
        pos = prepared.find(key)
        while pos != -1:
            if pos == 0 or not is_word_char(prepared[pos - 1]):
                end = pos + len(key)
                while end < n and prepared[end] != " ":
                    end += 1
                candidates.append((pos, end, term))
            pos = prepared.find(key, pos + 1)
    return sweep_leftmost_longest(candidates)


def manifest() -> dict[str, str]:
    raw = (_data_dir() / "manifest.json").read_text(encoding="utf-8")
    return json.loads(raw)


def compute_digests() -> dict[str, str]:
    out = {}
    for name in sorted(_FILES.values()):
        data = (_data_dir() / name).read_bytes()
        out[name] = hashlib.sha256(data).hexdigest()
    return out


def verify_manifest() -> dict[str, tuple[str, str]]:
    """Compare bundled files against the pinned manifest.

    Returns a mapping of file name to (expected, actual) for any mismatch;
    empty means every vocabulary file is intact.
    """
    expected = manifest()
    actual = compute_digests()
    mismatches = {}
    for name in sorted(set(expected) | set(actual)):
        if expected.get(name) != actual.get(name):
            mismatches[name] = (expected.get(name, "missing"), actual.get(name, "missing"))
    return mismatches
