import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import COVER, MATRIX
from sosbound.engine import derive_lts
from sosbound.kinds import PROPERTY_IDS, PROPERTY_TO_KIND, DyadicKind
from sosbound.lattice import (COVER_EDGES, branching_sets, check_property, equivalence_class,
                              hasse_lines, implication_matrix, property_implies)
from sosbound.terms import App, Fam
from sosbound.tss import Formula


def fan(n):
    """p0 -l_i-> p_i for 1 <= i <= n."""
    return [Formula(App("p0"), Fam("l", i), App(f"p{i}")) for i in range(1, n + 1)]


def test_cover_edges():
    assert sorted(COVER_EDGES) == sorted(COVER)
    assert len(COVER_EDGES) == 12


def test_matrix_golden():
    m = implication_matrix()
    for p, row in zip(PROPERTY_IDS, m):
        assert {q for q, v in zip(PROPERTY_IDS, row) if v} == set(MATRIX[p].split()), p


def test_implies_examples():
    assert property_implies("i", "iv")
    assert property_implies("(i)", "(vi)")
    assert not property_implies("iv", "i")
    assert property_implies("vii", "vii")
    with pytest.raises(ValueError):
        property_implies("xiii", "i")


def test_partial_order():
    ids = PROPERTY_IDS
    for p, q in itertools.product(ids, ids):
        if p != q and property_implies(p, q):
            assert not property_implies(q, p)
    for p, q, r in itertools.product(ids, ids, ids):
        if property_implies(p, q) and property_implies(q, r):
            assert property_implies(p, r)


def test_equivalence_class_i():
    got = equivalence_class("i")
    assert got == {frozenset({"i"}), frozenset({"xii", "vi"}), frozenset({"vii", "iv"}),
                   frozenset({"xii", "vii"})}


def test_equivalence_class_iii():
    assert equivalence_class("(iii)") == {frozenset({"iii"}), frozenset({"x", "v"}),
                                          frozenset({"ix", "iv"}), frozenset({"x", "ix"})}


def test_equivalence_class_elementary():
    with pytest.raises(ValueError):
        equivalence_class("iv")


def test_hasse_lines():
    lines = hasse_lines()
    assert len(lines) == 12
    assert lines[0] == "(i) finitely branching  >  (vii) initials finite"


def test_fan_of_ten():
    lts = fan(10)
    assert check_property(lts, "i") == (10, App("p0"))
    assert check_property(lts, "iv")[0] == 1
    assert check_property(lts, "vi")[0] == 1
    assert check_property(lts, "vii")[0] == 10


def test_empty_lts():
    for p in PROPERTY_IDS:
        assert check_property([], p) == (0, None)


def test_stratification_example_lts(corpus):
    lts = derive_lts(corpus("ex6_stratification").tss, 3, 3, 50)
    assert check_property(lts, "i")[0] == 1


def test_branching_sets_shape():
    sets = branching_sets(fan(3), "xii")
    assert sets == {App("p0"): {App("p1"), App("p2"), App("p3")}}
    assert PROPERTY_TO_KIND["xii"] == DyadicKind(1, "p2")


NODES = [App(n) for n in ("p", "q", "r")] + [Fam("l", i) for i in range(3)]


@settings(max_examples=1000)
@given(st.lists(st.tuples(*[st.sampled_from(NODES)] * 3), max_size=12))
def test_implication_bounds_cardinality(triples):
    lts = [Formula(*t) for t in triples]
    card = {p: check_property(lts, p)[0] for p in PROPERTY_IDS}
    for p, q in itertools.product(PROPERTY_IDS, PROPERTY_IDS):
        if property_implies(p, q):
            assert card[q] <= card[p], (p, q)
