import pytest

from wusandhi.config import DATA_DIR
from wusandhi.errors import MappingGap, ToneUnderivable, UnromanisableCharacter
from wusandhi.phonemizer import (
    RomanSyllable, Source, ToneValue, assign_tone, load_ipa_table, phonemise, retokenize,
    romanise, to_ipa,
)
from wusandhi.segmenter import Origin, Token


@pytest.fixture(scope="module")
def table():
    return load_ipa_table(DATA_DIR / "ipa.tsv")


def tok(text, origin=Origin.KNOWN):
    return Token(text, origin, (0, len(text)))


@pytest.mark.parametrize("syl, cat, contour", [
    ("zaon", "T3", "23"),
    ("he", "T2", "334"),
    ("koq", "T4", "5"),
    ("veq", "T5", "12"),
    ("gheq", "T5", "12"),
    ("se1", "T1", "53"),
    ("tu1", "T1", "53"),
    ("gni", "T3", "23"),
    ("iq", "T4", "5"),
    ("ng", "T3", "23"),
    ("m", "T3", "23"),
    ("aq", "T4", "5"),
])
def test_assign_tone(syl, cat, contour):
    tone = assign_tone(syl)
    assert (tone.category, tone.contour) == (cat, contour)
    assert tone.checked == (cat in ("T4", "T5"))


@pytest.mark.parametrize("bad", ["", "q", "zzz", "Zaon", "he9", "kq"])
def test_tone_underivable(bad):
    with pytest.raises(ToneUnderivable):
        assign_tone(bad)


def test_contour_aliases():
    assert ToneValue.from_contour("51").category == "T1"
    assert ToneValue.from_contour("34").category == "T2"
    assert ToneValue.from_contour("334").category == "T2"


def test_romanise_known_word(lex):
    syls = romanise(tok("上海"), lex)
    assert [(s.text, s.tone.category, s.source) for s in syls] == [
        ("zaon", "T3", Source.LEXICON), ("he", "T2", Source.LEXICON)]


def test_romanise_clitic_citation_form(lex):
    [s] = romanise(tok("個"), lex)
    assert (s.text, s.tone.category) == ("geq", "T5")


def test_romanise_composes_from_subwords(lex):
    syls = romanise(tok("弗二弗三"), lex)
    assert [s.text for s in syls] == ["veq", "gni", "veq", "se1"]
    assert [s.piece for s in syls] == [0, 0, 1, 2]
    assert [s.source for s in syls] == [Source.SUBWORD, Source.SUBWORD, Source.CHAR, Source.CHAR]


def test_romanise_unromanisable(lex):
    with pytest.raises(UnromanisableCharacter) as exc:
        romanise(Token("上😀", Origin.INFERRED, (3, 5)), lex)
    assert exc.value.char == "😀" and exc.value.position == 4


def test_romanise_rejects_punctuation(lex):
    with pytest.raises(ValueError):
        romanise(tok("。", Origin.PUNCT), lex)


@pytest.mark.parametrize("syl, segments, contour", [
    ("zaon", ["z", "ã"], "23"),
    ("he", ["h", "e"], "334"),
    ("koq", ["k", "o", "ʔ"], "5"),
    ("veq", ["v", "ə", "ʔ"], "12"),
    ("gni", ["n", "i"], "23"),
    ("se1", ["s", "e"], "53"),
    ("geq", ["g", "ə", "ʔ"], "12"),
    ("gheq", ["ɦ", "ə", "ʔ"], "12"),
    ("da", ["d", "a"], "23"),
    ("tu1", ["t", "u"], "53"),
    ("ho", ["h", "o"], "334"),
    ("tsh", None, None),
])
def test_to_ipa(table, syl, segments, contour):
    if segments is None:
        with pytest.raises((MappingGap, ToneUnderivable)):
            to_ipa(RomanSyllable(syl, assign_tone(syl)), table)
        return
    ipa = to_ipa(RomanSyllable(syl, assign_tone(syl)), table)
    assert list(ipa.segments) == segments
    assert ipa.tone.contour == contour


def test_mapping_gap(table):
    with pytest.raises(MappingGap) as exc:
        to_ipa(RomanSyllable("zax", ToneValue.of("T3")), table)
    assert exc.value.remainder == "x"


def test_checked_flag_survives_ipa(table):
    for s in ("koq", "veq", "he"):
        r = RomanSyllable(s, assign_tone(s))
        assert to_ipa(r, table).tone.checked == r.tone.checked


def test_reference_transcriptions(lex, table):
    def ipa(word):
        return [s.text + s.tone.contour for s in phonemise(tok(word), lex, table).ipa]
    assert ipa("上海") == ["zã23", "he334"]
    assert ipa("國際化") == ["koʔ5", "tsi53", "ho334"]
    assert ipa("大都市") == ["da23", "tu53", "zɿ23"]
    assert ipa("弗二弗三") == ["vəʔ12", "ni23", "vəʔ12", "se53"]
    assert ipa("個") == ["gəʔ12"]


def test_retokenize_greedy(table):
    inv = table.inventory
    assert retokenize("tsʰɿ", inv) == ["tsʰ", "ɿ"]
    assert retokenize("vəʔ", inv) == ["v", "ə", "ʔ"]


def test_syllable_count_conservation(lex, table):
    for e in lex:
        pt = phonemise(tok(e.headword), lex, table)
        assert len(pt.roman) == len(pt.ipa) == len(e.headword)
