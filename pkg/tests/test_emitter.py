import itertools

import pytest
from hypothesis import given, settings, strategies as st

from wusandhi.emitter import (
    BLANK, DOMAIN_CLOSE, DOMAIN_OPEN, WORD_BOUNDARY, emit_symbols, pipeline, render_segmentation,
)
from wusandhi.errors import PipelineError
from wusandhi.phonemizer import phonemise
from wusandhi.segmenter import Origin, Token

from .conftest import SENTENCE_5


def ptokens(fe, text):
    return fe.phonemise(fe.tokens(text))


def test_render_sentence_5_core(fe):
    assert render_segmentation(ptokens(fe, "弗二弗三個")) == "vəʔ-ni=vəʔ=se1 gəʔ"


def test_render_known_word_modes(fe):
    pts = ptokens(fe, "上海")
    assert render_segmentation(pts) == "zã-he"
    assert render_segmentation(pts, "roman") == "zaon-he"


def test_render_empty():
    assert render_segmentation([]) == ""


def test_render_inferred_word(fe):
    pts = [phonemise(Token("上海", Origin.INFERRED, (0, 2)), fe.lexicon, fe.ipa_table)]
    assert render_segmentation(pts) == "zã=he"


def test_render_injective_over_analyses(fe):
    """Distinct token boundaries / origins over one syllable string never render alike."""
    text = "上海大都市"
    seen = {}
    n = len(text)
    for cuts in itertools.product((False, True), repeat=n - 1):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        spans = list(zip(bounds, bounds[1:]))
        multi = [k for k, (i, j) in enumerate(spans) if j - i > 1]
        for origins in itertools.product((Origin.KNOWN, Origin.INFERRED), repeat=len(multi)):
            toks = []
            for k, (i, j) in enumerate(spans):
                o = origins[multi.index(k)] if k in multi else Origin.KNOWN
                toks.append(Token(text[i:j], o, (i, j)))
            pts = [phonemise(t, fe.lexicon, fe.ipa_table) for t in toks]
            key = tuple((t.char_span, t.origin) for t in toks)
            rendered = render_segmentation(pts)
            assert rendered not in seen or seen[rendered] == key
            seen[rendered] = key


def test_symbols_shanghai(fe):
    utt = fe.annotate(ptokens(fe, "上海"))
    seq = emit_symbols(utt)
    assert list(seq.symbols) == [DOMAIN_OPEN, "z", "ã", "2", "h", "e", "4", DOMAIN_CLOSE]
    blanked = emit_symbols(utt, interleave_blank=True)
    assert len(blanked) == 17 and blanked.blank_interleaved
    assert all(blanked.symbols[i] == BLANK for i in range(0, 17, 2))
    assert list(blanked.symbols[1::2]) == list(seq.symbols)


def test_symbols_mark_clitic_junction(fe):
    seq = emit_symbols(fe.annotate(ptokens(fe, "弗二弗三個")))
    assert seq.symbols.count(WORD_BOUNDARY) == 1
    assert seq.symbols[-5:] == (WORD_BOUNDARY, "ɦ", "ə", "ʔ", "1", DOMAIN_CLOSE)[1:] or \
        seq.symbols[-6:] == (WORD_BOUNDARY, "ɦ", "ə", "ʔ", "1", DOMAIN_CLOSE)


@given(st.text(alphabet="上海是一座國際化大都市弗二三個儂好，。", max_size=25))
@settings(max_examples=150)
def test_blank_law(fe, text):
    utt = fe.annotate(ptokens(fe, text))
    n = len(emit_symbols(utt).symbols)
    seq = emit_symbols(utt, interleave_blank=True)
    assert len(seq) == 2 * n + 1
    assert all(s == BLANK for s in seq.symbols[::2])


def test_pipeline_shanghai(fe):
    rec = pipeline("上海", fe)
    assert len(rec["domains"]) == 1 and rec["surface"] == [["2", "4"]]
    assert rec["contour"] == "[zã2 he4]"


def test_pipeline_sentence_5(fe):
    rec = pipeline("侬弗要弗二弗三个。", fe)
    assert rec["traditional"] == SENTENCE_5 + "。"
    assert "[vəʔ1 ni3 vəʔ2 se2 ɦəʔ1]" in rec["contour"]
    assert rec["ipa"] == "noŋ vəʔ-iɔ vəʔ-ni=vəʔ=se1 gəʔ 。"


def test_pipeline_empty(fe):
    rec = pipeline("", fe)
    assert rec["tokens"] == [] and rec["domains"] == [] and rec["symbols"] == []
    assert rec["contour"] == "" and rec["ipa"] == ""


def test_pipeline_reports_shortening(fe):
    rec = pipeline("弗二弗三個", fe)
    assert rec["shortened"] == [0, 2, 4]


def test_pipeline_error_names_stage(fe):
    with pytest.raises(PipelineError) as exc:
        pipeline("上海龘", fe)
    assert exc.value.stage == "phonemise"


def test_pipeline_deterministic(fe):
    assert pipeline(SENTENCE_5, fe) == pipeline(SENTENCE_5, fe)
