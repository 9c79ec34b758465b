from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from versesmith.textproc import (
    PosTag,
    RuleTagger,
    TaggedToken,
    Token,
    TokenKind,
    UnknownTagError,
    abbreviations,
    detokenize,
    pos_tag,
    pos_string,
    split_sentences,
    tagset,
    tokenize,
)


def surfaces(text):
    return [t.surface for t in tokenize(text)]


class TestTokenize:
    def test_empty(self):
        assert tokenize("") == []

    def test_starter_line(self):
        assert surfaces("come on , uh") == ["come", "on", ",", "uh"]

    def test_contractions_stay_whole(self):
        assert surfaces("i'm the man of the woods") == ["i'm", "the", "man", "of", "the", "woods"]
        assert surfaces("'cause you tell me") == ["'cause", "you", "tell", "me"]
        assert surfaces("to-day we ride") == ["to-day", "we", "ride"]

    def test_punctuation_split_off(self):
        assert surfaces("the woods, again") == ["the", "woods", ",", "again"]
        assert surfaces("stop!") == ["stop", "!"]

    def test_kinds(self):
        kinds = {t.surface: t.kind for t in tokenize("wait 3 times , now")}
        assert kinds["wait"] is TokenKind.WORD
        assert kinds["3"] is TokenKind.NUMBER
        assert kinds[","] is TokenKind.PUNCTUATION

    def test_number_with_decimal(self):
        assert surfaces("costs 3.88 total") == ["costs", "3.88", "total"]

    def test_token_invariants(self):
        with pytest.raises(ValueError):
            Token("has space", TokenKind.WORD)
        with pytest.raises(ValueError):
            Token("", TokenKind.WORD)

    @given(st.text(max_size=120))
    @settings(max_examples=300)
    def test_idempotent_under_detokenize(self, text):
        once = tokenize(text)
        again = tokenize(detokenize(once))
        assert [(t.surface, t.kind) for t in once] == [(t.surface, t.kind) for t in again]

    @given(st.text(max_size=120))
    def test_no_whitespace_in_surfaces(self, text):
        for tok in tokenize(text):
            assert tok.surface
            assert not any(c.isspace() for c in tok.surface)

    @given(st.text(max_size=120))
    def test_punctuation_kind_iff_all_punctuation(self, text):
        for tok in tokenize(text):
            all_punct = not any(c.isalnum() for c in tok.surface)
            assert (tok.kind is TokenKind.PUNCTUATION) == all_punct


class TestPosTag:
    def test_worked_example(self):
        assert pos_string("jumped over the fence") == "VBD IN DT NN"

    def test_full_sentence_tags(self):
        assert pos_string("The quick brown fox") == "DT JJ JJ NN"

    def test_empty(self):
        assert pos_tag([]) == []
        assert pos_string("") == ""

    def test_lexicon_lookup(self):
        assert pos_string("the") == "DT"
        assert pos_string("the fence") == "DT NN"

    def test_punctuation_gets_punct(self):
        assert pos_string("wait , now !") == "VB PUNCT RB PUNCT"

    def test_numbers_get_cd(self):
        assert pos_string("3 times") == "CD NNS"

    def test_case_preserved_in_output(self):
        tagged = pos_tag(tokenize("The Fence"))
        assert [tt.token.surface for tt in tagged] == ["The", "Fence"]

    @given(st.text(max_size=80))
    def test_length_preserved(self, text):
        tokens = tokenize(text)
        assert len(pos_tag(tokens)) == len(tokens)

    @given(st.text(max_size=80))
    def test_pure_function(self, text):
        tokens = tokenize(text)
        first = [(tt.token.surface, tt.tag.tag) for tt in pos_tag(tokens)]
        second = [(tt.token.surface, tt.tag.tag) for tt in pos_tag(tokens)]
        assert first == second

    @given(st.text(max_size=80))
    def test_all_tags_in_tagset(self, text):
        for tt in pos_tag(tokenize(text)):
            assert tt.tag.tag in tagset()

    def test_unknown_tag_rejected(self):
        with pytest.raises(UnknownTagError):
            PosTag("NOPE")

    def test_custom_tagger_plugin(self):
        class AllNouns:
            def tag(self, tokens):
                return [TaggedToken(t, PosTag("NN")) for t in tokens]

        assert pos_string("jumped over", tagger=AllNouns()) == "NN NN"

    def test_bad_lexicon_rejected(self):
        with pytest.raises(UnknownTagError):
            RuleTagger({"word": "BOGUS"})


class TestSplitSentences:
    def test_abbreviation_no_break(self):
        got = split_sentences("Mr. Holmes sat down. He waited.")
        assert len(got) == 2
        assert [t.surface for t in got[0].tokens] == ["Mr", ".", "Holmes", "sat", "down", "."]
        assert [t.surface for t in got[1].tokens] == ["He", "waited", "."]

    def test_empty_document(self):
        assert split_sentences("") == []
        assert split_sentences("   \n  ") == []

    def test_quote_before_uppercase_breaks(self):
        got = split_sentences('"Stop!" He ran.')
        assert len(got) == 2
        assert got[0].text == '" Stop ! "'

    def test_quote_before_lowercase_does_not_break(self):
        got = split_sentences('"stop!" he said to me.')
        assert len(got) == 1

    def test_question_and_exclamation(self):
        got = split_sentences("Who is there? Nobody came! The end.")
        assert len(got) == 3

    def test_decimal_number_not_a_boundary(self):
        got = split_sentences("It cost 3.88 dollars. He paid.")
        assert len(got) == 2

    def test_initials_no_break(self):
        got = split_sentences("Johann S. Bach wrote music. People listened.")
        assert len(got) == 2

    def test_document_without_terminator(self):
        got = split_sentences("The quick brown fox jumped over the fence")
        assert len(got) == 1
        assert len(got[0].tokens) == 8

    def test_spans_are_byte_offsets(self):
        doc = "Héllo there. Bye."
        got = split_sentences(doc)
        raw = doc.encode("utf-8")
        for s in got:
            lo, hi = s.source_span
            assert 0 <= lo < hi <= len(raw)
        assert raw[got[0].source_span[0]:got[0].source_span[1]].decode("utf-8") == "Héllo there."

    def test_abbreviation_list_loaded(self):
        assert "mr." in abbreviations()
        assert "dr." in abbreviations()

    @given(st.text(max_size=300))
    @settings(max_examples=200)
    def test_tokens_preserved_in_order(self, doc):
        whole = [t.surface for t in tokenize(doc)]
        flat = [t.surface for s in split_sentences(doc) for t in s.tokens]
        assert flat == whole

    @given(st.text(max_size=300))
    def test_no_empty_sentences_and_spans_well_formed(self, doc):
        total = len(doc.encode("utf-8"))
        for s in split_sentences(doc):
            assert s.tokens
            lo, hi = s.source_span
            assert 0 <= lo < hi <= total
