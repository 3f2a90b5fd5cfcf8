from itertools import groupby

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polsenti.normalize import (
    NEGATIVE_SENTINEL,
    POSITIVE_SENTINEL,
    POLISH_DIACRITICS,
    DiacriticMap,
    EmoticonTable,
    EmoticonTableError,
    default_emoticon_table,
    fold_diacritics,
    load_emoticon_table,
    normalize,
    normalized_tokens,
    replace_emoticons,
    tokenize,
)

TABLE = EmoticonTable(positive=(":)", ":-)", ":d"), negative=(":(", ":'(", ":/"))


class TestFoldDiacritics:
    def test_single_letters(self):
        assert fold_diacritics("ą") == "a"
        assert fold_diacritics("ż") == "z"

    def test_identity_on_plain_ascii(self):
        assert fold_diacritics("abc xyz 123") == "abc xyz 123"

    def test_full_sentence(self):
        # Hand application of the map, letter by letter.
        assert fold_diacritics("zażółć gęślą") == "zazolc gesla"

    def test_uppercase_sources_fold_too(self):
        assert fold_diacritics("ŻÓŁĆ") == "zolc"

    def test_other_codepoints_preserved(self):
        assert fold_diacritics("émoji 🙂 ok") == "émoji 🙂 ok"

    @given(st.text())
    def test_no_mapped_codepoint_survives(self, text):
        folded = fold_diacritics(text)
        assert not (set(folded) & POLISH_DIACRITICS.sources)

    @given(st.text())
    def test_idempotent(self, text):
        once = fold_diacritics(text)
        assert fold_diacritics(once) == once

    def test_map_validation(self):
        with pytest.raises(ValueError):
            DiacriticMap(entries=(("ab", "a"),))
        with pytest.raises(ValueError):
            DiacriticMap(entries=(("ą", "A"),))


class TestReplaceEmoticons:
    def test_positive(self):
        assert replace_emoticons("dobra robota :)", TABLE) == "dobra robota  pos.emot "

    def test_negative(self):
        assert replace_emoticons("przegrana :(", TABLE) == "przegrana  neg.emot "

    def test_identity_without_emoticons(self):
        assert replace_emoticons("bez emotikonow", TABLE) == "bez emotikonow"

    def test_longest_match_first(self):
        table = EmoticonTable(positive=(":)", ":))"), negative=())
        assert replace_emoticons(":))", table) == " pos.emot "
        assert replace_emoticons(":)", table) == " pos.emot "

    def test_every_occurrence_replaced(self):
        out = replace_emoticons(":) tak :) nie :(", TABLE)
        assert out == " pos.emot  tak  pos.emot  nie  neg.emot "

    def test_table_disjointness_enforced(self):
        with pytest.raises(EmoticonTableError):
            EmoticonTable(positive=(":)",), negative=(":)",))


class TestNormalize:
    def test_composed_stages(self):
        assert normalize("Zły Dzień :(", TABLE) == "zly dzien  neg.emot "

    def test_empty(self):
        assert normalize("", TABLE) == ""

    def test_lowercase_only(self):
        assert normalize("OK", TABLE) == "ok"

    def test_uppercase_emoticon_matches_after_lowering(self):
        # ':d' is stored lowercase because matching runs post-lowercase.
        assert ":D" not in TABLE.entries
        assert normalize("super :D", TABLE) == "super  pos.emot "


class TestTokenize:
    def test_sigils_and_punctuation_separate(self):
        assert tokenize("rt @foo: tak, jest!") == ["rt", "foo", "tak", "jest"]

    def test_matches_word_boundary_reference(self):
        # Independent reference: maximal runs of alphanumeric codepoints.
        text = "rt @foo: tak, jest!"
        expected = [
            "".join(group)
            for is_word, group in groupby(text, key=lambda c: c.isalnum())
            if is_word
        ]
        assert tokenize(text) == expected

    def test_sentinels_stay_atomic(self):
        assert tokenize("pos.emot") == ["pos.emot"]
        assert tokenize("x pos.emot neg.emot y") == ["x", "pos.emot", "neg.emot", "y"]

    def test_sentinel_requires_word_boundary(self):
        assert tokenize("xpos.emot") == ["xpos", "emot"]
        assert tokenize("pos.emots") == ["pos", "emots"]

    def test_punctuation_only(self):
        assert tokenize("...") == []

    def test_underscore_separates(self):
        assert tokenize("m_kowalski1") == ["m", "kowalski1"]


# Random strings mixing Polish words, emoji, emoticons, and arbitrary text.
_fragments = st.lists(
    st.one_of(
        st.sampled_from(
            ["zażółć", "gęślą", "jaźń", "DOBRY", "źle", "Łódź", "święto"]
        ),
        st.sampled_from(list(default_emoticon_table().entries)),
        st.sampled_from(["🙂", "😡", "💙", "@kandydat", "#wybory", "http://t.co/x"]),
        st.text(max_size=8),
    ),
    max_size=12,
)
_mixed_text = _fragments.map(lambda parts: " ".join(parts))


class TestPipelineProperties:
    @given(_mixed_text)
    @settings(max_examples=300)
    def test_normalize_idempotent(self, text):
        once = normalize(text)
        assert normalize(once) == once

    @given(_mixed_text)
    @settings(max_examples=300)
    def test_emoticon_freedom(self, text):
        table = default_emoticon_table()
        out = replace_emoticons(text.lower(), table)
        assert not any(e in out for e in table.entries)

    @given(_mixed_text)
    @settings(max_examples=300)
    def test_normalized_has_no_diacritics_or_uppercase(self, text):
        out = normalize(text)
        assert not (set(out) & POLISH_DIACRITICS.sources)
        assert not any(c.isupper() for c in out)

    @given(st.text())
    @settings(max_examples=300)
    def test_tokenizer_total_and_wellformed(self, text):
        for token in tokenize(text):
            assert token
            assert not any(c.isspace() for c in token)
            assert token in (POSITIVE_SENTINEL, NEGATIVE_SENTINEL) or all(
                c.isalnum() and c != "_" for c in token
            )


class TestTableFile:
    def test_default_table_counts(self):
        table = default_emoticon_table()
        assert len(table.positive) == 18
        assert len(table.negative) == 22
        assert len(set(table.entries)) == 40

    def test_load_and_format_errors(self, tmp_path):
        good = tmp_path / "ok.txt"
        good.write_text("# comment\n:)\tpos\n:(\tneg\n\n", encoding="utf-8")
        table = load_emoticon_table(str(good))
        assert table.positive == (":)",) and table.negative == (":(",)

        bad_tag = tmp_path / "tag.txt"
        bad_tag.write_text(":)\tgood\n", encoding="utf-8")
        with pytest.raises(EmoticonTableError, match="tag"):
            load_emoticon_table(str(bad_tag))

        bad_cols = tmp_path / "cols.txt"
        bad_cols.write_text(":) pos\n", encoding="utf-8")
        with pytest.raises(EmoticonTableError, match="TAB"):
            load_emoticon_table(str(bad_cols))

        upper = tmp_path / "upper.txt"
        upper.write_text(":D\tpos\n", encoding="utf-8")
        with pytest.raises(EmoticonTableError, match="lowercase"):
            load_emoticon_table(str(upper))

    def test_normalized_tokens_end_to_end(self):
        assert normalized_tokens("Świetny Dzień :) @foo") == [
            "swietny",
            "dzien",
            "pos.emot",
            "foo",
        ]
