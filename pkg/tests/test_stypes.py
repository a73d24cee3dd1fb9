import pytest

from oracles import COMPARISON, MICROCHOCS_STYPES, MICROCHOCS_VERDICTS, STRAT_EXAMPLE_STYPES
from sosbound.dyadic import transform_tss
from sosbound.kinds import DyadicKind
from sosbound.stratification import restricted_support
from sosbound.stypes import (SType, check_bn_format, check_finitely_inhabited, check_rule_format,
                             check_uniformity, classify_tail, compute_stype, compute_stypes,
                             legacy_eta_check)
from sosbound.syntax import parse_spec
from sosbound.verdict import FAIL, PASS

D = DyadicKind.parse
HEAD = "signature { c: 0; a: 0; f: 1; g: 1; }\nlabels { l(i); }\n"


def dyadic(text, kind="d1.id"):
    return transform_tss(parse_spec(HEAD + text).tss, D(kind))


def strat_example(corpus):
    spec = corpus("ex6_stratification")
    dy = transform_tss(spec.tss, D("d1.id"))
    S = spec.measure("S0")
    return dy, S, restricted_support(dy, S)


def test_stypes_of_stratification_example(corpus):
    dy, S, eta = strat_example(corpus)
    table = compute_stypes(dy, eta, S)
    assert {k: str(v) for k, v in table.valid().items()} == STRAT_EXAMPLE_STYPES
    for row in table.rows:
        if row.template == "R" and row.index >= 2:
            assert row.stype is None and row.reason == "source-outside-support"


def test_compute_stype_single_rule(corpus):
    dy, S, eta = strat_example(corpus)
    r1 = dy.templates[0].instance(1)
    st, why = compute_stype(r1, eta)
    assert why == "" and str(st) == STRAT_EXAMPLE_STYPES["R1"]
    st, why = compute_stype(dy.templates[0].instance(3), eta)
    assert st is None and why == "source-outside-support"


def test_stype_equality_ignores_psi_order():
    dy = dyadic('rule "A": x -[l1]-> y |- f(x) -[l1]-> y;')
    s, v = dy.rules[0].source, dy.rules[0].premises[0].source
    w = dy.rules[0].premises[0].target
    assert SType.of(s, {v: [w]}) == SType.of(s, {v: {w}})
    assert SType.of(s, {v: [w]}) != SType.of(s, {v: []})


def test_stype_reconstructs_premises(corpus):
    spec = corpus("microchocs_send")
    dy = transform_tss(spec.tss, D("d1.id"))
    S = spec.measure("Ssnd")
    eta = restricted_support(dy, S)
    for r in dy.rules:
        st, _ = compute_stype(r, eta)
        assert set(st.as_dict()) <= set(eta[r.source])
        rebuilt = {(v, w) for v, ws in st.psi for w in ws}
        assert rebuilt == {(p.source, p.target) for p in r.premises}


def test_uniform_sources_clash():
    dy = dyadic('rule "A": |- f(x) -[l1]-> x;\nrule "B": |- f(y) -[l1]-> y;')
    v = check_uniformity(dy, "sources")
    assert v.outcome == FAIL
    assert v.witnesses[0].rule == "A/B"


def test_uniform_sources_equal_is_fine():
    dy = dyadic('rule "A": |- f(x) -[l1]-> x;\nrule "B": |- f(x) -[l2]-> x;')
    assert check_uniformity(dy, "sources").outcome == PASS


def test_uniform_premise_targets(corpus):
    spec = corpus("ex5_uniform_targets")
    dy = transform_tss(spec.tss, D("d1.id"))
    assert check_uniformity(dy, "premise_targets", spec.measure("U")).outcome == FAIL
    spec = corpus("ex5_uniform_targets_renamed")
    dy = transform_tss(spec.tss, D("d1.id"))
    assert check_uniformity(dy, "premise_targets", spec.measure("U")).outcome == PASS


def test_uniformity_mode_checked():
    with pytest.raises(ValueError):
        check_uniformity(dyadic(""), "labels")


def test_bn_format_label_variable():
    assert check_bn_format(dyadic('rule "A": |- c -[y]-> c;', "d4.id")).outcome == PASS
    v = check_bn_format(dyadic('rule "A": |- c -[y]-> c;', "d1.id"))
    assert v.outcome == FAIL
    assert v.witnesses[0].terms == ("y",) and v.witnesses[0].message.startswith("(ii)")


def test_bn_format_premise_source():
    v = check_bn_format(dyadic('rule "A": y -[a]-> y2 |- f(x) -[a]-> y2;'))
    assert v.outcome == FAIL
    assert v.witnesses[0].terms == ("y",) and v.witnesses[0].message.startswith("(i)")


def test_classify_tail():
    assert classify_tail([None, None, None]) == "vacuous"
    assert classify_tail(["t", "t", "t"]) == "constant"
    assert classify_tail(["t1", "t2", "t3"]) == "injective"
    assert classify_tail(["t1", None, "t3"]) == "mixed"


def test_finitely_inhabited_ccs(corpus):
    spec = corpus("ccs_choice")
    dy = transform_tss(spec.tss, D("d1.id"))
    S = spec.measure("S0")
    table = compute_stypes(dy, restricted_support(dy, S), S)
    valid = list(table.valid().values())
    assert len(valid) == len(set(valid))
    assert check_finitely_inhabited(dy, table).outcome == PASS


def test_finitely_inhabited_constant_template(corpus):
    spec = corpus("ex5_uniform_targets_renamed")
    dy = transform_tss(spec.tss, D("d1.id"))
    S = spec.measure("U")
    v = check_finitely_inhabited(dy, compute_stypes(dy, restricted_support(dy, S), S))
    assert v.outcome == FAIL


def test_finitely_inhabited_vacuous_tail(corpus):
    dy, S, eta = strat_example(corpus)
    assert check_finitely_inhabited(dy, compute_stypes(dy, eta, S)).outcome == PASS


@pytest.mark.parametrize("name", sorted(MICROCHOCS_STYPES))
def test_microchocs(corpus, name):
    kind, measure, prop = MICROCHOCS_VERDICTS[name]
    spec = corpus(name)
    v = check_rule_format(spec.tss, D(kind), spec.measure(measure))
    assert v.outcome == PASS
    assert v.summary.startswith(prop)
    got = [r["stype"] for r in v.payload["stypes"] if r["stype"]]
    # template instances past the first repeat the pattern with a new index
    got = [s for s in got if not any(f"(b{i}, z)" in s for i in range(1, 10))]
    assert sorted(got) == sorted(MICROCHOCS_STYPES[name])


def test_axiom_with_label_variable_fails(corpus):
    spec = corpus("sigma0_axiom_fx")
    v = check_rule_format(spec.tss, D("d1.id"), spec.measure("S0"))
    assert v.outcome == FAIL
    assert v.part("bn-format").outcome == FAIL


def test_open_tss_rejected(corpus):
    spec = corpus("bn_too_strict")
    v = check_rule_format(spec.tss, D("d1.id"), spec.measure("S0"))
    assert v.outcome == FAIL
    bn = v.part("bn-format")
    assert bn.outcome == FAIL and bn.witnesses[0].terms == ("x",)


def test_kind_changes_verdict(corpus):
    spec = corpus("const_label_axiom")
    assert check_rule_format(spec.tss, D("d1.id"), spec.measure("S1")).outcome == FAIL
    assert check_rule_format(spec.tss, D("d4.id"), spec.measure("S4")).outcome == PASS


@pytest.mark.parametrize("name, eta, measure, legacy, new, failing", COMPARISON)
def test_comparison(corpus, name, eta, measure, legacy, new, failing):
    spec = corpus(name)
    S = spec.measure(measure)
    if legacy is not None:
        assert legacy_eta_check(spec.tss, spec.eta(eta), S).outcome == legacy
    v = check_rule_format(spec.tss, D("d1.id"), S)
    assert v.outcome == new
    if failing:
        assert [p.check for p in v.parts if p.outcome == FAIL] == [failing]


def test_legacy_rejects_label_variables(corpus):
    spec = corpus("sigma0_axiom_fx")
    with pytest.raises(ValueError, match="non-ground label"):
        legacy_eta_check(spec.tss, {}, spec.measure("S0"))


def test_legacy_rejects_dyadic(corpus):
    spec = corpus("ccs_choice")
    with pytest.raises(ValueError):
        legacy_eta_check(transform_tss(spec.tss, D("d1.id")), spec.eta("E"), spec.measure("S0"))
