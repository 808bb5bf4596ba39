import pytest

from idpf.match_engine import InvalidTerm, Term, coerce_terms, load_terms, normalize


def test_normalize_collapses_whitespace_and_case():
    assert normalize("New  York") == "new york"
    assert normalize("  Smith\t") == "smith"
    assert normalize("A\n B") == "a b"


def test_term_of_keeps_surface():
    term = Term.of("New  York")
    assert term.surface == "New  York"
    assert term.normalized == "new york"


@pytest.mark.parametrize("bad", ["", "   ", "\t\n", "!!!", "..", "x" * 257])
def test_invalid_terms_rejected(bad):
    with pytest.raises(InvalidTerm):
        Term.of(bad)


def test_term_requires_word_character_but_allows_symbols_around_it():
    assert Term.of("+36301234567").normalized == "+36301234567"
    assert Term.of("jack@x.com").normalized == "jack@x.com"


def test_coerce_terms_dedups_under_normalization():
    terms = coerce_terms(["Hungary", "hungary", "HUNGARY"])
    assert len(terms) == 1
    assert terms[0].normalized == "hungary"


def test_coerce_terms_order_is_deterministic():
    a = coerce_terms(["beta", "alpha", "gamma"])
    b = coerce_terms(["gamma", "beta", "alpha"])
    assert [t.normalized for t in a] == ["alpha", "beta", "gamma"]
    assert a == b


def test_match_key_case_sensitive_collapses_whitespace_only():
    term = Term.of("New  York")
    assert term.match_key(case_sensitive=True) == "New York"
    assert term.match_key(case_sensitive=False) == "new york"


def test_load_terms_skips_comments_and_blank_lines(tmp_path):
    path = tmp_path / "terms.txt"
    path.write_text("# header\nsmith \n\njones\nSMITH\n", encoding="utf-8")
    terms = load_terms(path)
    assert sorted(t.normalized for t in terms) == ["jones", "smith"]
