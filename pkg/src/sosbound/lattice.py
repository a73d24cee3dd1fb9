"""The twelve bounded-nondeterminism properties: branching sets and their order."""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .dyadic import inverse_formula, transform_formula
from .kinds import PROPERTY_IDS, PROPERTY_NAMES, PROPERTY_TO_KIND, parse_property
from .terms import Term, term_key
from .tss import DyadicFormula, Formula

# (upper, lower): upper implies lower
COVER_EDGES = (
    ("i", "vii"), ("vii", "vi"), ("i", "xii"), ("xii", "iv"),
    ("iii", "x"), ("x", "iv"), ("iii", "ix"), ("ix", "v"),
    ("ii", "viii"), ("viii", "vi"), ("ii", "xi"), ("xi", "v"),
)
DERIVED = ("i", "ii", "iii")
ELEMENTARY = ("iv", "v", "vi")


@lru_cache(maxsize=None)
def _below(p: str) -> FrozenSet[str]:
    out = {p}
    for a, b in COVER_EDGES:
        if a == p:
            out |= _below(b)
    return frozenset(out)


def property_implies(p: str, q: str) -> bool:
    """``p`` implies ``q`` iff ``q`` lies below ``p`` in the cover order."""
    p, q = parse_property(p), parse_property(q)
    return q in _below(p)


def implication_matrix() -> List[List[bool]]:
    return [[property_implies(p, q) for q in PROPERTY_IDS] for p in PROPERTY_IDS]


def equivalence_class(d: str) -> Set[FrozenSet[str]]:
    """Conjunctions equivalent to the derived property ``d``.

    With the two chains ``d > c1 > e1`` and ``d > c2 > e2`` below ``d`` the
    class is ``{d, e1 & c2, e2 & c1, c1 & c2}``.
    """
    d = parse_property(d)
    if d not in DERIVED:
        raise ValueError(f"({d}) is not a derived property")
    covers = [b for a, b in COVER_EDGES if a == d]
    chains = []
    for c in covers:
        e = next(b for a, b in COVER_EDGES if a == c)
        chains.append((c, e))
    (c1, e1), (c2, e2) = chains
    return {frozenset({d}), frozenset({e1, c2}), frozenset({e2, c1}), frozenset({c1, c2})}


def render_conjunction(conj: Iterable[str]) -> str:
    order = {p: n for n, p in enumerate(PROPERTY_IDS)}
    return " ∧ ".join(f"({p})" for p in sorted(conj, key=order.get))


def hasse_lines() -> List[str]:
    return [f"({a}) {PROPERTY_NAMES[a]}  >  ({b}) {PROPERTY_NAMES[b]}" for a, b in COVER_EDGES]


# ---------------------------------------------------------------------------
# branching sets of a finite LTS

def _triadic(transitions) -> List[Formula]:
    out = []
    for f in transitions:
        if isinstance(f, DyadicFormula):
            f = inverse_formula(f)
        out.append(f)
    return out


def branching_sets(transitions, prop: str) -> Dict[Term, Set[Term]]:
    """Origin -> set of destinations in the reading that defines ``prop``."""
    kind = PROPERTY_TO_KIND[parse_property(prop)]
    sets: Dict[Term, Set[Term]] = {}
    for f in _triadic(transitions):
        d = transform_formula(f, kind)
        sets.setdefault(d.source, set()).add(d.target)
    return sets


def check_property(lts, prop: str) -> Tuple[int, Optional[Term]]:
    """Largest branching-set cardinality for ``prop`` and an origin attaining it."""
    transitions = getattr(lts, "transitions", lts)
    sets = branching_sets(transitions, prop)
    best, witness = 0, None
    for o in sorted(sets, key=term_key):
        n = len(sets[o])
        if n > best:
            best, witness = n, o
    return best, witness
