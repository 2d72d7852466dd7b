import pytest
from hypothesis import given, strategies as st

from wusandhi.config import DATA_DIR
from wusandhi.errors import DomainTooLong, IncompleteSandhiTable, IncomparableAnalyses
from wusandhi.phonemizer import CATEGORIES, IpaSyllable, ToneValue
from wusandhi.sandhi import (
    LDDomain, SandhiPatternTable, apply_ld, diff_domains, domains_from_groups,
    load_sandhi_table, mark_ld_domains, render_contour, split_long_domains,
)
from wusandhi.segmenter import Origin, Token

from .conftest import SENTENCE_5


@pytest.fixture(scope="module")
def table():
    return load_sandhi_table(DATA_DIR / "sandhi.tsv")


def syl(text, cat):
    return IpaSyllable(tuple(text), ToneValue.of(cat))


def dom(*sylls):
    return LDDomain(tuple(sylls), 0, False, (0,) * len(sylls))


def test_shanghai_surface(table):
    out = apply_ld(dom(syl("zã", "T3"), syl("he", "T2")), table)
    assert [t.pitch for t in out] == ["2", "4"]
    assert not any(t.shortened for t in out)


def test_pentasyllable_surface(table):
    d = dom(syl("vəʔ", "T5"), syl("ni", "T3"), syl("vəʔ", "T5"), syl("se", "T1"), syl("ɦəʔ", "T5"))
    out = apply_ld(d, table)
    assert [t.pitch for t in out] == ["1", "3", "2", "2", "1"]
    assert [t.shortened for t in out] == [True, False, True, False, True]


@pytest.mark.parametrize("cat", CATEGORIES)
def test_monosyllable_neutral(table, cat):
    [t] = apply_ld(dom(syl("a", cat)), table)
    assert t.pitch == ToneValue.of(cat).contour


@given(st.sampled_from(CATEGORIES), st.lists(st.sampled_from(CATEGORIES), min_size=1, max_size=7),
       st.lists(st.sampled_from(CATEGORIES), min_size=7, max_size=7))
def test_left_dominance(first, rest, other):
    table = load_sandhi_table(DATA_DIR / "sandhi.tsv")
    a = dom(syl("a", first), *(syl("b", c) for c in rest))
    b = dom(syl("a", first), *(syl("b", c) for c in other[: len(rest)]))
    out_a, out_b = apply_ld(a, table), apply_ld(b, table)
    assert [t.pitch for t in out_a] == [t.pitch for t in out_b]
    assert len(out_a) == len(a)


def test_too_long(table):
    with pytest.raises(DomainTooLong):
        apply_ld(dom(*[syl("a", "T1")] * 9), table)


def test_incomplete_table_lists_missing_rows(tmp_path):
    p = tmp_path / "t.tsv"
    p.write_text("T1\t1\t53\nT1\t2\t5 1\n", encoding="utf-8")
    with pytest.raises(IncompleteSandhiTable) as exc:
        load_sandhi_table(p)
    assert ("T2", 1) in exc.value.missing and ("T5", 2) in exc.value.missing


def test_monosyllable_row_must_be_citation(tmp_path):
    rows = [f"{c}\t1\t{ToneValue.of(c).contour}" for c in CATEGORIES]
    rows[0] = "T1\t1\t55"
    p = tmp_path / "t.tsv"
    p.write_text("\n".join(rows), encoding="utf-8")
    with pytest.raises(ValueError):
        load_sandhi_table(p)


def annotate_text(fe, text):
    return fe.annotate(fe.phonemise(fe.tokens(text)))


def test_shanghai_domain(fe):
    utt = annotate_text(fe, "上海是")
    assert len(utt.domains[0]) == 2 and utt.domains[0].head_token == 0


def test_clitic_attaches(fe):
    utt = annotate_text(fe, "弗二弗三個")
    [d] = utt.domains
    assert len(d) == 5 and d.has_clitic
    assert d.syllables[-1].text == "ɦəʔ"
    assert render_contour(utt) == "[vəʔ1 ni3 vəʔ2 se2 ɦəʔ1]"


def test_initial_clitic_opens_domain(fe):
    utt = annotate_text(fe, "個上海")
    assert [len(d) for d in utt.domains] == [1, 2]
    assert not utt.domains[0].has_clitic
    assert utt.domains[0].syllables[0].text == "gəʔ"


def test_punctuation_closes_domain(fe):
    utt = annotate_text(fe, "上海。個")
    assert [len(d) for d in utt.domains] == [2, 1]


def test_single_token_utterance(fe):
    utt = annotate_text(fe, "大都市")
    assert len(utt.domains) == 1 and len(utt.domains[0]) == 3


def test_domains_tile_syllables(fe):
    for text in ("我老衰癡個，昨日夜重陽亮養。", "虹橋機場分爲一號航站樓和兩號航站樓。", SENTENCE_5):
        ptokens = fe.phonemise(fe.tokens(text))
        domains = mark_ld_domains(ptokens, fe.clitics)
        n = sum(len(pt.ipa) for pt in ptokens)
        assert sum(len(d) for d in domains) == n


def test_render_empty(fe):
    assert render_contour(annotate_text(fe, "")) == ""


def test_render_shanghai(fe):
    assert render_contour(annotate_text(fe, "上海")) == "[zã2 he4]"


def test_split_at_rightmost_token_boundary():
    sylls = [syl("a", "T1")] * 10
    d = LDDomain(tuple(sylls), 0, True, (0,) * 6 + (1,) * 4)
    parts = split_long_domains([d], 8)
    assert [len(p) for p in parts] == [6, 4]
    assert [p.head_token for p in parts] == [0, 1]
    d = LDDomain(tuple(sylls), 0, False, (0,) * 10)
    assert [len(p) for p in split_long_domains([d], 8)] == [8, 2]


def five(fe):
    return [s for pt in fe.phonemise(fe.tokens("弗二弗三個")) for s in pt.ipa]


def test_diff_voiceover_split():
    sylls = [syl(x, "T5") for x in ("vəʔ", "ni", "vəʔ", "se", "ɦəʔ")]
    correct = domains_from_groups(sylls, [5])
    split = domains_from_groups(sylls, [2, 3], rd_groups=[0, 1])
    d = diff_domains(correct, split)
    assert d.inserted == (2,) and d.deleted == ()


def test_diff_identical_empty():
    sylls = [syl("a", "T1")] * 3
    assert not diff_domains(domains_from_groups(sylls, [1, 2]), domains_from_groups(sylls, [1, 2]))


def test_diff_metropolis(fe):
    sylls = [s for pt in fe.phonemise(fe.tokens("國際化大都市")) for s in pt.ipa]
    one = domains_from_groups(sylls, [6])
    two = domains_from_groups(sylls, [3, 3])
    assert diff_domains(one, two).inserted == (3,)
    # same LD domains, different RD grouping
    grouped = domains_from_groups(sylls, [3, 3], rd_groups=[0, 0])
    separate = domains_from_groups(sylls, [3, 3], rd_groups=[0, 1])
    d = diff_domains(grouped, separate)
    assert d.inserted == () and d.rd_inserted == (3,)


def test_diff_incomparable():
    a = domains_from_groups([syl("a", "T1")], [1])
    b = domains_from_groups([syl("b", "T1")], [1])
    with pytest.raises(IncomparableAnalyses):
        diff_domains(a, b)
