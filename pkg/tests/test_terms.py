import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import SIG2, VARS, substitutions, terms
from sosbound.syntax import parse_term
from sosbound.terms import (App, Fam, Var, alpha_variant, apply_subst, enumerate_closed_terms,
                            is_closed, match, rename, signature, unify, variables)

SIGMA0 = signature({"f": 1, "g": 1}, "l")
MANY = settings(max_examples=1000)


def t(text):
    return parse_term(text, SIGMA0)


@pytest.mark.parametrize("pattern, subject, expected", [
    ("f(x)", "f(l1)", {"x": "l1"}),
    ("g(x)", "g(l1)", {"x": "l1"}),
    ("f(x)", "g(l1)", None),
    ("f(g(x))", "f(g(f(l0)))", {"x": "f(l0)"}),
])
def test_match_examples(pattern, subject, expected):
    got = match(t(pattern), t(subject))
    if expected is None:
        assert got is None
    else:
        assert got == {k: t(v) for k, v in expected.items()}


def test_match_repeated_variable_must_agree():
    sig = signature({"h": 2, "c": 0, "d": 0})
    assert match(parse_term("h(x, x)", sig), parse_term("h(c, c)", sig)) == {"x": App("c")}
    assert match(parse_term("h(x, x)", sig), parse_term("h(c, d)", sig)) is None


def test_unify_examples():
    assert unify(t("f(x)"), t("f(g(y))")) == {"x": t("g(y)")}
    assert unify(t("x"), t("f(x)")) is None
    assert unify(t("g(x)"), t("g(l1)")) == {"x": t("l1")}
    assert unify(t("l1"), t("l2")) is None


def test_apply_subst_examples():
    assert apply_subst({"x": t("l1")}, t("f(x)")) == t("f(l1)")
    assert apply_subst({}, t("g(f(y))")) == t("g(f(y))")
    assert apply_subst({"x": t("l1")}, t("g(y)")) == t("g(y)")


def test_alpha_variant_examples():
    sig = signature({"plus": 2})
    assert alpha_variant(t("f(x)"), t("f(y)"))
    assert alpha_variant(parse_term("plus(x, y)", sig), parse_term("plus(x, y)", sig))
    assert alpha_variant(parse_term("plus(x, y)", sig), parse_term("plus(y, x)", sig))
    assert not alpha_variant(t("f(x)"), t("g(x)"))
    # the renaming must be a bijection
    assert not alpha_variant(parse_term("plus(x, y)", sig), parse_term("plus(z, z)", sig))
    assert not alpha_variant(parse_term("plus(z, z)", sig), parse_term("plus(x, y)", sig))


def test_enumerate_constants_only():
    assert enumerate_closed_terms(SIGMA0, 0, 2) == [Fam("l", 0), Fam("l", 1)]


def test_enumerate_height_one():
    got = enumerate_closed_terms(SIGMA0, 1, 2)
    assert len(got) == 6
    assert set(got) == {t(s) for s in ("l0", "l1", "f(l0)", "f(l1)", "g(l0)", "g(l1)")}


def test_enumerate_is_deterministic():
    assert enumerate_closed_terms(SIG2, 2, 2) == enumerate_closed_terms(SIG2, 2, 2)


def test_enumerate_without_constants():
    with pytest.raises(ValueError, match="no constants"):
        enumerate_closed_terms(signature({"f": 1}), 3, 0)


def test_enumerate_needs_a_label():
    with pytest.raises(ValueError):
        enumerate_closed_terms(SIGMA0, 1, 0)


def test_enumerate_monotone():
    sizes = [[len(enumerate_closed_terms(SIG2, h, b)) for b in (1, 2, 3)] for h in (0, 1, 2)]
    for h in range(3):
        for b in range(3):
            if h:
                assert sizes[h][b] >= sizes[h - 1][b]
            if b:
                assert sizes[h][b] >= sizes[h][b - 1]


# -- laws ---------------------------------------------------------------------

@MANY
@given(terms(), substitutions(closed=True))
def test_match_recovers_substitution(p, sigma):
    image = apply_subst(sigma, p)
    if not is_closed(image):
        return
    got = match(p, image)
    assert got == {v: sigma[v] for v in variables(p)}


@MANY
@given(terms(), terms(closed=True))
def test_match_result_is_exact(p, s):
    got = match(p, s)
    if got is not None:
        assert apply_subst(got, p) == s
        assert set(got) == variables(p)


def _apart(u):
    return rename(u, {v: v + "'" for v in variables(u)})


@MANY
@given(terms(), terms())
def test_unify_symmetric(a, b):
    b = _apart(b)
    assert (unify(a, b) is None) == (unify(b, a) is None)


@MANY
@given(terms(), terms())
def test_unifier_unifies(a, b):
    sigma = unify(a, b)
    if sigma is not None:
        assert apply_subst(sigma, a) == apply_subst(sigma, b)
        # idempotent: no bound variable survives in the range
        for v in sigma.values():
            assert not variables(v) & set(sigma)


@MANY
@given(terms(), substitutions())
def test_instances_unify(a, sigma):
    inst = _apart(apply_subst(sigma, a))
    mgu = unify(a, inst)
    assert mgu is not None
    assert apply_subst(mgu, a) == apply_subst(mgu, inst)


@MANY
@given(terms(), terms(closed=True))
def test_match_implies_unify(p, s):
    if match(p, s) is not None:
        assert unify(p, s) is not None


@MANY
@given(terms(), st.permutations(VARS))
def test_alpha_reflexive_and_renaming(a, perm):
    assert alpha_variant(a, a)
    ren = rename(a, dict(zip(VARS, perm)))
    assert alpha_variant(a, ren)


@MANY
@given(terms(depth=2), terms(depth=2))
def test_alpha_symmetric(a, b):
    assert alpha_variant(a, b) == alpha_variant(b, a)


@MANY
@given(terms(depth=2), st.permutations(VARS), st.permutations(VARS))
def test_alpha_transitive(a, p1, p2):
    b = rename(a, dict(zip(VARS, p1)))
    c = rename(b, dict(zip(VARS, p2)))
    assert alpha_variant(a, b) and alpha_variant(b, c) and alpha_variant(a, c)


@MANY
@given(terms(depth=2), terms(depth=2), terms(depth=2))
def test_alpha_transitive_arbitrary(a, b, c):
    if alpha_variant(a, b) and alpha_variant(b, c):
        assert alpha_variant(a, c)


def test_variables_and_closedness():
    assert variables(t("f(g(x))")) == {"x"}
    assert is_closed(t("f(l3)"))
    assert not is_closed(Var("x"))
