"""Segmentation, syllable counting, and surface-count profiles."""

import random

import pytest

from readlab.textseg import (
    Document,
    EN_SYLLABLES,
    SL_SYLLABLES,
    StatProfile,
    WordList,
    count_syllables,
    profile,
    split_sentences,
    tokenize_words,
)


class TestSplitSentences:
    def test_basic_terminators(self):
        text = "It rained. Did it? Yes!"
        assert split_sentences(text) == ["It rained.", "Did it?", "Yes!"]

    def test_abbreviation_does_not_split(self):
        text = "Dr. Smith arrived. He sat down."
        assert split_sentences(text) == ["Dr. Smith arrived.", "He sat down."]

    def test_initials_do_not_split(self):
        text = "J. R. Tolkien wrote it. We read it."
        assert split_sentences(text) == ["J. R. Tolkien wrote it.", "We read it."]

    def test_decimal_number_does_not_split(self):
        text = "Pi is 3. 14 is not. True."
        # "3." followed by a digit is protected; "not." splits normally.
        assert split_sentences(text) == ["Pi is 3. 14 is not.", "True."]

    def test_ellipsis_is_one_terminator(self):
        assert split_sentences("Wait... go.") == ["Wait...", "go."]

    def test_closing_quote_stays_attached(self):
        text = 'He said "stop." She left.'
        assert split_sentences(text) == ['He said "stop."', "She left."]

    def test_trailing_text_without_terminator_kept(self):
        assert split_sentences("One. two three") == ["One.", "two three"]

    def test_empty_and_whitespace(self):
        assert split_sentences("") == []
        assert split_sentences("   \n\t ") == []

    def test_no_characters_dropped(self):
        text = "Mr. Brown met Mrs. Green. They talked... a lot! Done?"
        joined = "".join(split_sentences(text)).replace(" ", "")
        assert joined == text.replace(" ", "")

    def test_deterministic(self):
        text = "A first one. e.g. a tricky one? Sure! The end"
        assert split_sentences(text) == split_sentences(text)


class TestTokenizeWords:
    def test_punctuation_dropped(self):
        assert tokenize_words("Hello, world!") == ["Hello", "world"]

    def test_case_preserved(self):
        assert tokenize_words("The QUICK fox") == ["The", "QUICK", "fox"]

    def test_apostrophes_and_hyphens_join(self):
        assert tokenize_words("don't re-enter") == ["don't", "re-enter"]

    def test_numbers_with_separators(self):
        assert tokenize_words("save 3,000 at 3.14 rate") == ["save", "3,000", "at", "3.14", "rate"]

    def test_underscores_are_not_word_characters(self):
        assert tokenize_words("foo_bar") == ["foo", "bar"]

    def test_empty(self):
        assert tokenize_words("") == []
        assert tokenize_words("... !!! ---") == []


class TestCountSyllables:
    @pytest.mark.parametrize(
        "word,expected",
        [
            ("cat", 1),
            ("table", 2),
            ("make", 1),
            ("people", 2),
            ("readability", 5),
            ("queue", 1),
            ("rhythm", 1),
            ("strengths", 1),
            ("idea", 2),
            ("the", 1),
        ],
    )
    def test_english_words(self, word, expected):
        assert count_syllables(word, EN_SYLLABLES) == expected

    def test_minimum_one(self):
        assert count_syllables("tsk") == 1
        assert count_syllables("3,000") == 1

    def test_silent_e_needs_prior_syllable(self):
        # "be" must not drop to zero.
        assert count_syllables("be", EN_SYLLABLES) == 1

    def test_consonant_le_keeps_final_group(self):
        assert count_syllables("little", EN_SYLLABLES) == 2
        # vowel before "le": final e is silent ("mole" row)
        assert count_syllables("mole", EN_SYLLABLES) == 1

    def test_slovenian_profile_no_silent_e(self):
        # final "e" is a full vowel in the sl profile
        assert count_syllables("sode", SL_SYLLABLES) == 2
        # "y" is not a vowel in the sl profile
        assert count_syllables("my", SL_SYLLABLES) == 1

    def test_case_insensitive(self):
        assert count_syllables("TABLE") == count_syllables("table")


class TestDocument:
    def test_lazy_segmentation_cached(self):
        doc = Document("d", "One two. Three.")
        first = doc.sentences
        assert first is doc.sentences
        assert doc.sentence_texts == ["One two.", "Three."]
        assert doc.sentences == [["One", "two"], ["Three"]]

    def test_tokens_flatten(self):
        doc = Document("d", "One two. Three.")
        assert doc.tokens() == ["One", "two", "Three"]

    def test_presegmented_respected(self):
        doc = Document("d", "irrelevant", sentence_texts=["A b."], sentences=[["A", "b"]])
        assert doc.sentences == [["A", "b"]]
        assert doc.sentence_texts == ["A b."]


class TestWordList:
    def test_lookup_is_case_insensitive(self):
        wl = WordList(["The", "cat"])
        assert "the" in wl
        assert "THE" in wl
        assert "dog" not in wl
        assert len(wl) == 2

    def test_load_skips_blanks_and_comments(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("cat\n\n# comment\ndog  # trailing\n", encoding="utf-8")
        wl = WordList.load(path)
        assert "cat" in wl and "dog" in wl
        assert len(wl) == 2

    def test_load_missing_file(self, tmp_path):
        from readlab.errors import MissingFile

        with pytest.raises(MissingFile):
            WordList.load(tmp_path / "absent.txt")


class TestProfile:
    def test_hand_counts(self):
        doc = Document("d", "The cat sat. Extraordinary people wandered.")
        p = profile(doc)
        assert p.total_sentences == 2
        assert p.total_words == 6
        # vowel groups: the(1) cat(1) sat(1) extraordinary(5: e,ao,i,a,y)
        # people(2: eo,e kept by -le) wandered(3: a,e,e; ends in d)
        assert p.total_syllables == 13
        assert p.total_characters == len("Thecatsat") + len("Extraordinarypeoplewandered")
        assert p.long_words == 2  # Extraordinary, wandered
        assert p.polysyllables == 2  # Extraordinary, wandered
        # no word list: difficult falls back to long words
        assert p.difficult_words == p.long_words

    def test_wordlist_controls_difficult(self):
        doc = Document("d", "The cat sat on the mat.")
        wl = WordList(["the", "cat", "on"])
        p = profile(doc, wordlist=wl)
        assert p.difficult_words == 2  # sat, mat

    def test_empty_wordlist_falls_back_to_long_words(self):
        doc = Document("d", "Spectacular achievements today.")
        p = profile(doc, wordlist=WordList([]))
        assert p.difficult_words == p.long_words

    def test_zero_sentences_zero_profile(self):
        p = profile(Document("d", ""))
        assert p == StatProfile(0, 0, 0, 0, 0, 0, 0)

    def test_as_dict_round_trip(self):
        doc = Document("d", "A tiny test.")
        d = profile(doc).as_dict()
        assert set(d) == {
            "total_words",
            "total_sentences",
            "total_syllables",
            "total_characters",
            "long_words",
            "polysyllables",
            "difficult_words",
        }

    def test_counts_are_consistent(self):
        # characters/syllables never undercount words; random smoke data
        rng = random.Random(7)
        letters = "abcdefghijklmnopqrstuvwxyz"
        for _ in range(50):
            words = [
                "".join(rng.choice(letters) for _ in range(rng.randint(1, 12)))
                for _ in range(rng.randint(1, 30))
            ]
            doc = Document("d", " ".join(words) + ".")
            p = profile(doc)
            assert p.total_words == len(words)
            assert p.total_syllables >= p.total_words
            assert p.total_characters >= p.total_words
            assert 0 <= p.polysyllables <= p.total_words
            assert 0 <= p.long_words <= p.total_words
