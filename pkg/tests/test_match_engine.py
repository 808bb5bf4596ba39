import pytest

from idpf.match_engine import (
    NUMERAL,
    MatchSpan,
    MatchStrategy,
    OverlappingSpans,
    SpanOutOfBounds,
    Term,
    apply_mask,
    compile_matcher,
    oracle_matches,
)

ALL_STRATEGIES = list(MatchStrategy)


def spans_of(matcher, text):
    return [(s.start, s.end) for s in matcher.find_matches(text)]


class TestCompile:
    def test_single_term(self):
        m = compile_matcher({"smith"}, MatchStrategy.TRIE_KEYWORD_PROCESSOR)
        assert len(m.terms) == 1
        assert m.compile_seconds >= 0

    def test_empty_set_matches_nothing(self):
        m = compile_matcher(set(), MatchStrategy.KMP_PER_KEYWORD)
        assert m.find_matches("anything at all") == []

    def test_multiword_term_normalized(self):
        m = compile_matcher({"New  York"})
        assert m.terms[0].normalized == "new york"
        assert spans_of(m, "I love new york") == [(7, 15)]

    def test_invalid_term_reported(self):
        from idpf.match_engine import InvalidTerm

        with pytest.raises(InvalidTerm) as err:
            compile_matcher({"ok", "   "})
        assert err.value.surface == "   "


class TestFindMatches:
    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_word_boundary_excludes_embedded(self, strategy):
        m = compile_matcher({"smith"}, strategy)
        text = "Agent Smith met smithers."
        spans = m.find_matches(text)
        assert [(s.start, s.end) for s in spans] == [(6, 11)]
        assert text[6:11] == "Smith"

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_leftmost_longest_wins(self, strategy):
        m = compile_matcher({"new york", "york"}, strategy)
        text = "in New York today"
        spans = m.find_matches(text)
        assert [(s.start, s.end) for s in spans] == [(3, 11)]
        assert spans[0].matched_term.normalized == "new york"

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_shorter_term_taken_when_longer_fails_boundary(self, strategy):
        m = compile_matcher({"new york", "new"}, strategy)
        spans = m.find_matches("in new yorker times")
        assert [(s.start, s.end) for s in spans] == [(3, 6)]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_empty_terms_empty_result(self, strategy):
        m = compile_matcher(set(), strategy)
        assert m.find_matches("anything") == []

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_multiword_matches_single_whitespace_only(self, strategy):
        m = compile_matcher({"new york"}, strategy)
        assert spans_of(m, "new\tyork") == [(0, 8)]
        assert spans_of(m, "new\nyork") == [(0, 8)]
        assert spans_of(m, "new  york") == []

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_case_insensitive_by_default(self, strategy):
        m = compile_matcher({"Smith"}, strategy)
        assert spans_of(m, "SMITH smith SmItH") == [(0, 5), (6, 11), (12, 17)]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_case_sensitive_mode(self, strategy):
        m = compile_matcher({"Smith"}, strategy, case_sensitive=True)
        assert spans_of(m, "smith Smith SMITH") == [(6, 11)]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_symbol_edged_term(self, strategy):
        m = compile_matcher({"+36301234567"}, strategy)
        assert spans_of(m, "call me at +36301234567 now") == [(11, 23)]
        assert spans_of(m, "x+36301234567") == []

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_numeral_mode_maximal_runs(self, strategy):
        m = compile_matcher(set(), strategy, numeral_mode=True)
        spans = m.find_matches("a1 b22 c333")
        assert [(s.start, s.end) for s in spans] == [(1, 2), (4, 6), (8, 11)]
        assert all(s.matched_term is NUMERAL for s in spans)

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_numeral_and_terms_interact_leftmost(self, strategy):
        m = compile_matcher({"room"}, strategy, numeral_mode=True)
        spans = m.find_matches("room 12")
        assert [(s.start, s.end, s.is_numeral) for s in spans] == [
            (0, 4, False),
            (5, 7, True),
        ]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_digit_run_blocks_adjacent_term_boundary(self, strategy):
        m = compile_matcher({"abc"}, strategy, numeral_mode=True)
        spans = m.find_matches("12abc")
        assert [(s.start, s.end, s.is_numeral) for s in spans] == [(0, 2, True)]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_all_digit_term_beats_numeral_tie(self, strategy):
        m = compile_matcher({"12"}, strategy, numeral_mode=True)
        spans = m.find_matches("12 345")
        assert [(s.start, s.end, s.is_numeral) for s in spans] == [
            (0, 2, False),
            (3, 6, True),
        ]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_multibyte_boundary(self, strategy):
        m = compile_matcher({"é"}, strategy)
        assert spans_of(m, "café é") == [(5, 6)]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_compilation_deterministic(self, strategy):
        texts = ["alpha beta gamma", "beta beta", "no hits here"]
        a = compile_matcher(["beta", "alpha"], strategy)
        b = compile_matcher(["alpha", "beta"], strategy)
        for text in texts:
            assert a.find_matches(text) == b.find_matches(text)


class TestApplyMask:
    def test_direct_substitution(self):
        term = Term.of("smith")
        out = apply_mask("Call Smith now", [MatchSpan(5, 10, term)], "[FILTERED]")
        assert out == "Call [FILTERED] now"

    def test_no_spans(self):
        assert apply_mask("abc", [], "[FILTERED]") == "abc"

    def test_numeral_spans_with_custom_placeholder(self):
        spans = [MatchSpan(1, 2, NUMERAL), MatchSpan(4, 5, NUMERAL)]
        assert apply_mask("a1 b2", spans, "*") == "a* b*"

    def test_length_arithmetic(self):
        text = "one two three"
        spans = [MatchSpan(0, 3, Term.of("one")), MatchSpan(8, 13, Term.of("three"))]
        out = apply_mask(text, spans, "<X>")
        assert len(out) == len(text) - 8 + 2 * 3

    def test_out_of_bounds_rejected(self):
        with pytest.raises(SpanOutOfBounds):
            apply_mask("ab", [MatchSpan(1, 5, NUMERAL)], "*")

    def test_overlap_rejected(self):
        spans = [MatchSpan(0, 3, NUMERAL), MatchSpan(2, 4, NUMERAL)]
        with pytest.raises(OverlappingSpans):
            apply_mask("abcdef", spans, "*")


class TestOracle:
    def test_repeated_term(self):
        spans = oracle_matches({"ab"}, "ab ab")
        assert [(s.start, s.end) for s in spans] == [(0, 2), (3, 5)]

    def test_empty_text(self):
        assert oracle_matches({"a"}, "") == []

    def test_multibyte_boundary(self):
        spans = oracle_matches({"é"}, "café é")
        assert [(s.start, s.end) for s in spans] == [(5, 6)]

    def test_masking_fixpoint(self):
        m = compile_matcher({"smith", "jones"}, numeral_mode=True)
        text = "smith called jones 42 times"
        spans = m.find_matches(text)
        masked = apply_mask(text, spans, "[FILTERED]")
        assert m.find_matches(masked) == []
