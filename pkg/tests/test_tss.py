import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_term, random_tss
from sosbound.syntax import parse_spec, parse_term
from sosbound.terms import apply_subst, signature
from sosbound.tss import (TSS, Formula, Rule, instantiate_template, unifies_with_rule,
                          validate_tss)
from sosbound.verdict import FAIL, PASS

SIGMA0 = signature({"f": 1, "g": 1}, "l")


def t(text):
    return parse_term(text, SIGMA0)


def tr(s, l, u):
    return Formula(t(s), t(l), t(u))


def template(text, head="signature { f: 1; g: 1; }\nlabels { l(i); }\n"):
    return parse_spec(head + text).tss.templates[0]


def test_arity_violation_reported():
    tss = TSS(signature({"f": 1, "g": 1}, "l"),
              (Rule("bad", (), Formula(parse_term("f(x, x)", signature({"f": 2})), t("l1"), t("x"))),))
    v = validate_tss(tss)
    assert v.outcome == FAIL
    assert any(w.rule == "bad" and "arity" in w.message for w in v.witnesses)


def test_duplicate_rule_names():
    r = Rule("A", (), tr("f(x)", "l1", "x"))
    v = validate_tss(TSS(SIGMA0, (r, r)))
    assert v.outcome == FAIL
    assert "duplicate" in v.witnesses[0].message


def test_empty_tss_valid():
    assert validate_tss(TSS()).outcome == PASS


def test_microchocs_files_valid(corpus):
    for name in ("microchocs_subst", "microchocs_send", "microchocs_receive",
                 "microchocs_tau", "microchocs_full"):
        assert validate_tss(corpus(name).tss).outcome == PASS, name


def test_validate_idempotent(corpus):
    tss = corpus("ex6_stratification").tss
    assert validate_tss(tss).to_dict() == validate_tss(tss).to_dict()


def test_instantiate_iteration():
    tpl = template('template "R"(i): g^i(x) -[l(i)]-> x |- f(x) -[l1]-> x;')
    rules = instantiate_template(tpl, 3)
    assert [r.name for r in rules] == ["R0", "R1", "R2"]
    assert [r.premises[0].source for r in rules] == [t("x"), t("g(x)"), t("g(g(x))")]
    assert [r.premises[0].label for r in rules] == [t("l0"), t("l1"), t("l2")]


def test_instantiate_bound_one():
    tpl = template('template "R"(i): g^i(x) -[l(i)]-> x |- f(x) -[l1]-> x;')
    (only,) = instantiate_template(tpl, 1)
    assert only.premises[0] == tr("x", "l0", "x")


def test_instantiate_lower_bound():
    tpl = template('template "R"(i >= 1): g^i(x) -[l(i)]-> x |- f(x) -[l1]-> x;')
    assert [r.name for r in instantiate_template(tpl, 2)] == ["R1", "R2"]


def test_instantiate_negative_index():
    tpl = template('template "R"(i): g(x) -[l(i - 1)]-> x |- f(x) -[l1]-> x;')
    with pytest.raises(ValueError):
        instantiate_template(tpl, 1)


def test_instantiate_needs_positive_bound():
    tpl = template('template "R"(i): |- f(x) -[l(i)]-> x;')
    with pytest.raises(ValueError):
        instantiate_template(tpl, 0)


def test_ccs_choice_two_labels(corpus):
    tss = corpus("ccs_choice").tss
    left = next(tp for tp in tss.templates if tp.name == "L")
    rules = instantiate_template(left, 2)
    assert len(rules) == 2
    assert [str(r.conclusion.label) for r in rules] == ["a0", "a1"]


@settings(max_examples=50)
@given(st.integers(1, 6))
def test_instantiate_prefix(n):
    tpl = template('template "R"(i): g^(i+1)(x) -[l(i + 2)]-> x |- f(x) -[l1]-> g^i(x);')
    assert instantiate_template(tpl, n) == instantiate_template(tpl, n + 1)[:n]


R1 = Rule("R1", (Formula(t("g(x)"), t("l1"), t("x")),), tr("f(x)", "l1", "x"))


def test_unifies_with_rule_examples():
    assert unifies_with_rule(tr("f(l1)", "l1", "l1"), R1) == {"x": t("l1")}
    axiom = Rule("L", (), tr("g(l1)", "l1", "l1"))
    assert unifies_with_rule(tr("g(l1)", "l1", "l1"), axiom) == {}
    assert unifies_with_rule(tr("f(l1)", "l2", "l1"), R1) is None
    # the target must agree with the source binding
    assert unifies_with_rule(tr("f(l1)", "l1", "l2"), R1) is None


def test_unifies_with_rule_exact():
    rng = random.Random(3)
    hits = 0
    for _ in range(500):
        tss = random_tss(rng, max_rules=2)
        rule = tss.rules[0]
        closed = Formula(random_term(rng, 3, ()), random_term(rng, 1, ()), random_term(rng, 3, ()))
        sigma = unifies_with_rule(closed, rule)
        if sigma is not None:
            hits += 1
            assert rule.conclusion.map(lambda u: apply_subst(sigma, u)) == closed
    assert hits > 0
