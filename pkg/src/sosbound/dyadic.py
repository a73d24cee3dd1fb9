"""Dyadic transformations, projections and their inverses.

``D_k`` folds the label of ``t -[l]-> t'`` into the source or the target:

====  =====================  ====  =====================
k     result                 k     result
====  =====================  ====  =====================
1     ``t  -> (l, t')``      4     ``(t, l)  -> t'``
2     ``t' <- (l, t)``       5     ``(t', l) <- t``
3     ``l  ^  (t, t')``      6     ``(t, t')  v l``
====  =====================  ====  =====================

A projection ``D_k^pi1`` / ``D_k^pi2`` (k <= 3) keeps only the first or second
component of the pair target.
"""
from __future__ import annotations

from typing import Iterable, Set

from .kinds import DyadicKind
from .terms import Term, is_pair, pair
from .tss import (TSS, DyadicFormula, Formula, PremiseFamily, Rule, RuleTemplate)


def transform_formula(f: Formula, kind: DyadicKind) -> DyadicFormula:
    if not isinstance(f, Formula):
        raise TypeError(f"expected a triadic formula, got {f}")
    t, l, u = f.source, f.label, f.target
    k = kind.k
    if k == 1:
        src, a, b = t, l, u
    elif k == 2:
        src, a, b = u, l, t
    elif k == 3:
        src, a, b = l, t, u
    elif k == 4:
        return DyadicFormula(pair(t, l), u, kind)
    elif k == 5:
        return DyadicFormula(pair(u, l), t, kind)
    else:
        return DyadicFormula(pair(t, u), l, kind)
    if kind.prj == "p1":
        return DyadicFormula(src, a, kind)
    if kind.prj == "p2":
        return DyadicFormula(src, b, kind)
    return DyadicFormula(src, pair(a, b), kind)


def tr_inverse(o: Term, d1: Term, d2: Term, k: int) -> Formula:
    """Read an origin and a split destination back as a triadic formula."""
    if k == 1:
        return Formula(o, d1, d2)
    if k == 2:
        return Formula(d2, d1, o)
    if k == 3:
        return Formula(d1, o, d2)
    raise ValueError(f"tr_inverse is defined for k in 1..3, got {k}")


def inverse_formula(f: DyadicFormula) -> Formula:
    """Exact inverse of :func:`transform_formula` for the six non-projecting kinds."""
    kind = f.kind
    if kind.is_projection:
        raise ValueError(f"{kind} forgets a component and has no inverse")
    if kind.k <= 3:
        if not (is_pair(f.target) and len(f.target.args) == 2):
            raise ValueError(f"{kind} target must be a pair: {f}")
        return tr_inverse(f.source, f.target.args[0], f.target.args[1], kind.k)
    if not (is_pair(f.source) and len(f.source.args) == 2):
        raise ValueError(f"{kind} source must be a pair: {f}")
    a, b = f.source.args
    if kind.k == 4:
        return Formula(a, b, f.target)
    if kind.k == 5:
        return Formula(f.target, b, a)
    return Formula(a, f.target, b)


def _map_premise(p, fn):
    if isinstance(p, PremiseFamily):
        return PremiseFamily(fn(p.formula), p.var)
    return fn(p)


def transform_rule(rule: Rule, kind: DyadicKind) -> Rule:
    fn = lambda f: transform_formula(f, kind)
    return Rule(rule.name, tuple(_map_premise(p, fn) for p in rule.premises), fn(rule.conclusion))


def inverse_rule(rule: Rule) -> Rule:
    return Rule(rule.name, tuple(_map_premise(p, inverse_formula) for p in rule.premises),
                inverse_formula(rule.conclusion))


def transform_tss(tss: TSS, kind: DyadicKind) -> TSS:
    """Apply ``kind`` to every rule and template body, keeping names and order."""
    if tss.is_dyadic:
        raise ValueError(f"TSS is already dyadic ({tss.kind})")
    rules = [transform_rule(r, kind) for r in tss.rules]
    templates = [RuleTemplate(t.index_variable, transform_rule(t.body, kind), t.lower)
                 for t in tss.templates]
    return TSS(tss.signature, tuple(rules), tuple(templates), kind)


def inverse_tss(tss: TSS) -> TSS:
    if not tss.is_dyadic:
        raise ValueError("TSS is triadic already")
    if tss.kind.is_projection:
        raise ValueError(f"{tss.kind} forgets a component and has no inverse")
    rules = [inverse_rule(r) for r in tss.rules]
    templates = [RuleTemplate(t.index_variable, inverse_rule(t.body), t.lower)
                 for t in tss.templates]
    return TSS(tss.signature, tuple(rules), tuple(templates), None)


def image(transitions: Iterable[Formula], kind: DyadicKind) -> Set[DyadicFormula]:
    """The ``kind`` reading of a set of closed triadic transitions."""
    return {transform_formula(t, kind) for t in transitions}
