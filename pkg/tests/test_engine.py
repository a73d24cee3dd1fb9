import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import SIG, small_random_tss
from sosbound.dyadic import transform_tss
from sosbound.engine import LTS, SaturationError, branching_profile, derive_lts
from sosbound.kinds import DyadicKind
from sosbound.syntax import parse_spec, parse_term
from sosbound.terms import App, Fam, is_closed
from sosbound.tss import TSS, DyadicFormula, Formula

D1 = DyadicKind(1)


def t(text, sig=SIG):
    return parse_term(text, sig)


def tr(s, l, u, sig=SIG):
    return Formula(t(s, sig), t(l, sig), t(u, sig))


CHAIN = parse_spec('signature { c: 0; f: 1; } labels { a; }\n'
                   'rule "C": |- c -[a]-> c;\n'
                   'rule "F": x -[a]-> y |- f(x) -[a]-> f(y);').tss


def test_restricted_support_lts(corpus):
    lts = derive_lts(corpus("restricted_support").tss, 3, 3, 50)
    assert set(lts.transitions) == {tr("g(l1)", "l1", "l1"), tr("f(l1)", "l1", "l1")}
    assert lts.saturated


def test_stratification_example_lts(corpus):
    lts = derive_lts(corpus("ex6_stratification").tss, 3, 3, 50)
    assert set(lts.transitions) == {tr("g(l1)", "l1", "l1"), tr("f(l1)", "l1", "l1")}


def test_projection_lts(corpus):
    tss = transform_tss(corpus("projection_r1").tss, DyadicKind(1, "p1"))
    lts = derive_lts(tss, 2, 1)
    c, a, fc = App("c"), App("a"), t("f(c)", tss.signature)
    assert DyadicFormula(c, a, tss.kind) in lts
    assert DyadicFormula(fc, a, tss.kind) in lts


def test_empty_tss():
    lts = derive_lts(TSS(SIG), 3, 3, 50)
    assert len(lts) == 0 and lts.saturated


def test_conclusions_outside_universe_dropped():
    lts = derive_lts(CHAIN, 1, 1, 50)
    assert set(lts.transitions) == {tr("c", "a", "c", CHAIN.signature),
                                    tr("f(c)", "a", "f(c)", CHAIN.signature)}
    assert derive_lts(CHAIN, 3, 1, 50).from_source(t("f(f(f(c)))", CHAIN.signature))


def test_round_limit():
    deep = t("f(f(f(c)))", CHAIN.signature)
    with pytest.raises(SaturationError):
        derive_lts(CHAIN, 3, 1, 1, origins=[deep])
    lts = derive_lts(CHAIN, 3, 1, 50, origins=[deep])
    assert [str(f) for f in lts] == ["f(f(f(c))) -[a]-> f(f(f(c)))"]


def test_origins_restrict_output():
    lts = derive_lts(CHAIN, 3, 1, 50, origins=[t("f(c)", CHAIN.signature)])
    assert {f.source for f in lts} == {t("f(c)", CHAIN.signature)}


def test_premise_families_never_fire(corpus):
    lts = derive_lts(corpus("infinite_premises").tss, 2, 3, 50)
    assert {f.source for f in lts} == {Fam("l", 1)}


def test_export_lines_and_document(corpus):
    lts = derive_lts(corpus("ex6_stratification").tss, 3, 3, 50)
    assert lts.to_lines() == ["f(l1)\tl1\tl1", "g(l1)\tl1\tl1"]
    doc = lts.to_dict()
    assert doc["saturated"] is True and doc["bounds"] == [3, 3]
    assert doc["transitions"] == [["f(l1)", "l1", "l1"], ["g(l1)", "l1", "l1"]]


def test_dyadic_export(corpus):
    tss = transform_tss(corpus("ex6_stratification").tss, DyadicKind(4))
    lts = derive_lts(tss, 3, 3, 50)
    assert lts.to_lines() == ["(f(l1), l1)\tl1", "(g(l1), l1)\tl1"]


def test_profile_stable_on_stratification_example(corpus):
    prof = branching_profile(corpus("ex6_stratification").tss, D1)
    assert prof.stable and not prof.sampled
    nonzero = {str(o): d for o, d in prof.degrees.items() if d != (0, 0)}
    assert nonzero == {"g(l1)": (1, 1), "f(l1)": (1, 1)}


def test_profile_label_variable_grows(corpus):
    tss = corpus("const_label_axiom").tss
    prof = branching_profile(tss, D1, small=(0, 1), large=(1, 1))
    assert prof.degrees[App("c")] == (2, 6)
    assert not prof.stable


def test_profile_empty():
    assert branching_profile(TSS(SIG), D1).stable


def test_profile_document(corpus):
    doc = branching_profile(corpus("sigma0_axiom_fx").tss, D1, (1, 2), (2, 2)).to_dict()
    assert doc["stable"] is False and doc["kind"] == "d1.id"


def test_lts_is_closed_and_deduplicated():
    rng = random.Random(2)
    for _ in range(20):
        lts = derive_lts(small_random_tss(rng), 2, 2, 50)
        assert isinstance(lts, LTS)
        for f in lts:
            assert all(is_closed(term) for term in f.terms())
        assert len(lts.sorted()) == len(lts)


@settings(max_examples=1000)
@given(st.integers(0, 2 ** 32), st.integers(0, 1), st.integers(1, 2))
def test_monotone_in_bounds(seed, h, b):
    tss = small_random_tss(random.Random(seed), max_rules=3)
    base = derive_lts(tss, h, b, 50).transitions
    assert base <= derive_lts(tss, h + 1, b, 50).transitions
    assert base <= derive_lts(tss, h, b + 1, 50).transitions
    assert base == derive_lts(tss, h, b, 60).transitions
