import pytest

from idpf import vocab
from idpf.match_engine import InvalidTerm, Term, compile_matcher
from idpf.vocab import Category, EmptyVocabulary, InvalidEncoding


def test_bundled_names_has_800_terms():
    cat = vocab.load_category(Category.NAMES)
    assert cat.term_count == 800


def test_list_categories_reports_all_six():
    listing = vocab.list_categories()
    assert len(listing) == 6
    counts = dict(listing)
    assert counts[Category.NUMERALS] == 0
    assert counts[Category.NAMES] == 800
    for cat in (Category.LINKS, Category.COUNTRIES, Category.DISEASES, Category.STREET_NAMES):
        assert counts[cat] >= 1


def test_load_dedups_under_case_folding(tmp_path):
    path = tmp_path / "countries.txt"
    path.write_text("Hungary\nhungary\n", encoding="utf-8")
    cat = vocab.load_category(Category.COUNTRIES, path)
    assert cat.term_count == 1


def test_missing_path_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        vocab.load_category(Category.DISEASES, tmp_path / "nope.txt")


def test_invalid_encoding_raises(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"\xff\xfe\x00bad")
    with pytest.raises(InvalidEncoding):
        vocab.load_category(Category.NAMES, path)


def test_empty_vocabulary_raises(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# only comments\n\n", encoding="utf-8")
    with pytest.raises(EmptyVocabulary):
        vocab.load_category(Category.NAMES, path)


def test_load_is_idempotent(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("alpha\nbeta\n", encoding="utf-8")
    first = vocab.load_category(Category.COUNTRIES, path)
    second = vocab.load_category(Category.COUNTRIES, path)
    assert first.terms == second.terms


def test_bundled_terms_are_all_valid():
    for cat, _count in vocab.list_categories():
        loaded = vocab.default_category(cat)
        for term in loaded.terms:
            rebuilt = Term.of(term.surface)
            assert rebuilt.normalized == term.normalized


def test_manifest_matches_bundled_files():
    assert vocab.verify_manifest() == {}


class TestLinkExtension:
    def test_url_masked_through_non_space_run(self):
        text = "see https://example.com/a?q=1 for details"
        matcher = compile_matcher(vocab.link_prefixes())
        spans = vocab.extend_link_spans(text, matcher.find_matches(text))
        assert [(s.start, s.end) for s in spans] == [(4, 29)]
        assert text[4:29] == "https://example.com/a?q=1"

    def test_www_prefix(self):
        text = "go to www.example.org now"
        spans = vocab.extend_link_spans(text, [])
        assert [(text[s.start : s.end]) for s in spans] == ["www.example.org"]

    def test_no_match_mid_word(self):
        text = "xhttp://nope.com stays"
        spans = vocab.extend_link_spans(text, [])
        assert spans == []

    def test_link_swallows_overlapping_term_span(self):
        text = "read http://smith.example now"
        names = compile_matcher({"smith"})
        base = names.find_matches(text)
        assert base, "smith should match inside the URL host"
        spans = vocab.extend_link_spans(text, base)
        assert [(s.start, s.end) for s in spans] == [(5, 25)]
        assert spans[0].matched_term.normalized in {"http://", "https://", "www."}

    def test_identical_under_all_strategies(self):
        from idpf.match_engine import MatchStrategy

        text = "links: www.a.io https://b.c/d and plain smith too"
        results = []
        for strategy in MatchStrategy:
            matcher = compile_matcher({"smith"}, strategy)
            spans = vocab.extend_link_spans(text, matcher.find_matches(text))
            results.append([s.key() for s in spans])
        assert results[0] == results[1] == results[2]
