"""Derivation of provable transitions over a bounded closed-term universe.

The engine is demand driven.  Every *origin* (closed source) whose transitions
are wanted is entered in a table; evaluating an origin tries every rule whose
source matches it, demanding the origins of its premises in turn.  Rounds
re-evaluate the origins whose dependencies changed until nothing new appears,
which yields the least set of transitions closed under the rules.

In full mode every closed instance of a rule source inside the universe is
demanded, so the result is the whole bounded LTS.  Variables that no match
binds are enumerated over the universe, limited per occurrence so the
instantiated term stays within the height bound.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .dyadic import transform_tss
from .kinds import DyadicKind
from .terms import (App, Fam, Signature, Term, apply_subst, in_universe, iter_terms_upto,
                    match, term_key, universe_size, var_height_limits, variables)
from .tss import TSS, DyadicFormula, Formula, Rule


class SaturationError(RuntimeError):
    pass


@dataclass(frozen=True)
class LTS:
    transitions: FrozenSet
    saturated: bool = True
    kind: Optional[DyadicKind] = None
    dropped: int = 0
    rounds: int = 0
    bounds: Tuple[int, int] = (0, 0)

    def __len__(self):
        return len(self.transitions)

    def __contains__(self, f):
        return f in self.transitions

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> List:
        return sorted(self.transitions, key=lambda f: tuple(term_key(t) for t in f.terms()))

    def from_source(self, s: Term) -> List:
        return [f for f in self.sorted() if f.source == s]

    def to_lines(self) -> List[str]:
        out = []
        for f in self.sorted():
            if isinstance(f, Formula):
                out.append(f"{f.source}\t{f.label}\t{f.target}")
            else:
                out.append(f"{f.source}\t{f.target}")
        return out

    def to_dict(self):
        return {"kind": str(self.kind) if self.kind else None, "saturated": self.saturated,
                "dropped": self.dropped, "rounds": self.rounds, "bounds": list(self.bounds),
                "transitions": [[str(t) for t in f.terms()] for f in self.sorted()]}


def _origin_dest(f):
    if isinstance(f, Formula):
        return f.source, (f.label, f.target)
    return f.source, (f.target,)


def _rebuild(template, origin: Term, dest: Tuple[Term, ...]):
    if isinstance(template, Formula):
        return Formula(origin, dest[0], dest[1])
    return DyadicFormula(origin, dest[0], template.kind)


class Engine:
    """Tabled top-down evaluation of a (pre-instantiated) rule set."""

    def __init__(self, rules: Sequence[Rule], sig: Signature, height_bound: int,
                 label_bound: int, truncate: bool = True):
        self.rules = [r for r in rules if not r.families()]
        self.sig = sig
        self.h = height_bound
        self.b = label_bound
        self.truncate = truncate
        self.closed = _has_closed(sig)
        self.table: Dict[Term, Set[Tuple[Term, ...]]] = {}
        self.users: Dict[Term, Set[Term]] = {}
        self.pending: List[Term] = []
        self.dropped = 0
        self.escaped = 0

    def inside(self, t: Term) -> bool:
        return in_universe(t, self.h, self.b)

    def demand(self, o: Term, user: Optional[Term] = None) -> Set[Tuple[Term, ...]]:
        if o not in self.table:
            self.table[o] = set()
            self.pending.append(o)
        if user is not None:
            self.users.setdefault(o, set()).add(user)
        return self.table[o]

    def _values(self, limit: int):
        # enumerated lazily: most origins never need the whole universe
        if limit < 0 or not self.closed:
            return ()
        return iter_terms_upto(self.sig, min(limit, self.h), self.b)

    def _enumerate(self, sigma, names, terms):
        """Extend ``sigma`` to ``names`` so that every term in ``terms`` stays in bounds."""
        names = sorted(names)
        if not names:
            yield sigma
            return
        limits: Dict[str, int] = {}
        for t in terms:
            var_height_limits(t, self.h, limits)
        pools = [self._values(limits.get(n, self.h)) for n in names]
        for combo in itertools.product(*pools):
            s = dict(sigma)
            s.update(zip(names, combo))
            yield s

    def evaluate(self, o: Term) -> Set[Tuple[Term, ...]]:
        out: Set[Tuple[Term, ...]] = set()
        for rule in self.rules:
            sigma = match(rule.conclusion.source, o)
            if sigma is None:
                continue
            for s2 in self._premises(rule, list(rule.premises), sigma, o):
                concl = rule.conclusion
                _, dest = _origin_dest(concl)
                free = set()
                for t in dest:
                    free |= variables(t) - set(s2)
                for s3 in self._enumerate(s2, free, dest):
                    d = tuple(apply_subst(s3, t) for t in dest)
                    if self.truncate and not all(self.inside(t) for t in d):
                        self.dropped += 1
                        continue
                    out.add(d)
        return out

    def _premises(self, rule, premises, sigma, o):
        if not premises:
            yield sigma
            return
        p, rest = premises[0], premises[1:]
        src, dest = _origin_dest(p)
        free = variables(src) - set(sigma)
        for s1 in self._enumerate(sigma, free, [src]):
            origin = apply_subst(s1, src)
            if not self.inside(origin):
                self.escaped += 1
                continue
            for d in list(self.demand(origin, o)):
                s2 = dict(s1)
                ok = True
                for pat, val in zip(dest, d):
                    s2 = match(pat, val, s2)
                    if s2 is None:
                        ok = False
                        break
                if ok:
                    yield from self._premises(rule, rest, s2, o)

    def run(self, max_rounds: int) -> int:
        """Evaluate until stable; returns the number of rounds used."""
        rounds = 0
        dirty = set(self.table)
        while dirty or self.pending:
            rounds += 1
            if rounds > max_rounds:
                raise SaturationError(f"no fixpoint within {max_rounds} rounds")
            work = list(dict.fromkeys(self.pending + sorted(dirty, key=term_key)))
            self.pending = []
            changed = set()
            for o in work:
                new = self.evaluate(o)
                if not new <= self.table[o]:
                    self.table[o] |= new
                    changed.add(o)
            dirty = set()
            for o in changed:
                dirty |= self.users.get(o, set())
        return rounds

    def source_instances(self) -> Iterable[Term]:
        seen = set()
        for rule in self.rules:
            s = rule.conclusion.source
            for sigma in self._enumerate({}, variables(s), [s]):
                o = apply_subst(sigma, s)
                if o not in seen and self.inside(o):
                    seen.add(o)
                    yield o


def _has_closed(sig: Signature) -> bool:
    return bool(sig.constants()) or sig.family is not None


def instantiation_bound(tss: TSS, height_bound: int, label_bound: int) -> int:
    """Template instances beyond this many cannot contribute inside the universe."""
    return max(label_bound, height_bound + 2) + tss.max_template_offset()


def derive_lts(tss: TSS, height_bound: int = 3, label_bound: int = 3, max_rounds: int = 50,
               origins: Optional[Iterable[Term]] = None, truncate: bool = True) -> LTS:
    """Provable transitions whose terms lie in the universe ``U(height_bound, label_bound)``.

    With ``origins`` only the transitions of those origins (and whatever
    their proofs need) are computed.  ``truncate=False`` keeps conclusions
    whose destinations leave the universe; origins are always bounded.
    """
    rules = tss.instantiate(instantiation_bound(tss, height_bound, label_bound)) \
        if tss.templates else list(tss.rules)
    eng = Engine(rules, tss.signature, height_bound, label_bound, truncate)
    wanted = list(eng.source_instances()) if origins is None else list(origins)
    for o in wanted:
        eng.demand(o)
    rounds = eng.run(max_rounds)
    facts = set()
    proto = rules[0].conclusion if rules else None
    if proto is None:
        return LTS(frozenset(), True, tss.kind, 0, rounds, (height_bound, label_bound))
    keep = set(wanted) if origins is not None else None
    for o, dests in eng.table.items():
        if keep is not None and o not in keep:
            continue
        for d in dests:
            facts.add(_rebuild(proto, o, d))
    return LTS(frozenset(facts), True, tss.kind, eng.dropped, rounds, (height_bound, label_bound))


# ---------------------------------------------------------------------------
# branching profiles

FULL_PROFILE_LIMIT = 2_000
SAMPLE_SIZE = 60


@dataclass
class Profile:
    kind: DyadicKind
    small: Tuple[int, int]
    large: Tuple[int, int]
    degrees: Dict[Term, Tuple[int, int]] = field(default_factory=dict)
    sampled: bool = False

    @property
    def stable(self) -> bool:
        return all(a == b for a, b in self.degrees.values())

    def growing(self) -> Dict[Term, Tuple[int, int]]:
        return {o: d for o, d in self.degrees.items() if d[1] > d[0]}

    def to_dict(self):
        return {"kind": str(self.kind), "small": list(self.small), "large": list(self.large),
                "sampled": self.sampled, "stable": self.stable,
                "degrees": {str(o): list(d) for o, d in
                            sorted(self.degrees.items(), key=lambda e: term_key(e[0]))}}


def random_closed_term(sig: Signature, max_height: int, label_bound: int, rng: random.Random) -> Term:
    leaves: List[Term] = [App(c) for c in sig.constants()]
    if sig.family:
        leaves += [Fam(sig.family, i) for i in range(label_bound)]
    funcs = sig.functions()
    if max_height == 0 or not funcs or rng.random() < 0.25:
        return rng.choice(leaves)
    f = rng.choice(funcs)
    return App(f.name, tuple(random_closed_term(sig, max_height - 1, label_bound, rng)
                             for _ in range(f.arity)))


def _source_shapes(tss: TSS) -> List[Term]:
    out = [r.source for r in tss.rules]
    out += [t.body.source for t in tss.templates]
    return out


def _sample_origins(dyadic: TSS, rules: Sequence[Rule], h: int, b: int, n: int, seed: int) -> List[Term]:
    """Deterministic sample of rule-source instances in the universe."""
    rng = random.Random(seed)
    sig = dyadic.signature
    out: List[Term] = []
    seen = set()
    attempts = 0
    while len(out) < n and attempts < n * 50:
        attempts += 1
        rule = rules[attempts % len(rules)]
        s = rule.conclusion.source
        sigma = {}
        limits = var_height_limits(s, h)
        for v in sorted(variables(s)):
            sigma[v] = random_closed_term(sig, max(limits.get(v, h), 0), b, rng)
        o = apply_subst(sigma, s)
        if o not in seen and in_universe(o, h, b):
            seen.add(o)
            out.append(o)
    return out


def branching_profile(tss: TSS, kind: DyadicKind, small=(3, 3), large=(4, 3),
                      max_rounds: int = 50, sample: int = SAMPLE_SIZE, seed: int = 0) -> Profile:
    """Out-degree of each origin of the ``kind`` reading at two universe bounds.

    Origins are bounded by the smaller universe; destinations are not
    truncated, so a change in out-degree comes from rules that can pick
    arbitrary terms, not from terms leaving the universe.  When the smaller
    universe is too large to enumerate, a seeded sample of origins is used
    and the profile is flagged ``sampled``.
    """
    dyadic = tss if tss.is_dyadic else transform_tss(tss, kind)
    prof = Profile(kind, tuple(small), tuple(large))
    if not dyadic.rules and not dyadic.templates:
        return prof
    h, b = small
    rules = dyadic.instantiate(instantiation_bound(dyadic, h, b)) if dyadic.templates else list(dyadic.rules)
    rules = [r for r in rules if not r.families()] or rules
    big = universe_size(dyadic.signature, h, b)
    if big <= FULL_PROFILE_LIMIT:
        eng = Engine(rules, dyadic.signature, h, b, truncate=False)
        origins = list(eng.source_instances())
    else:
        origins = _sample_origins(dyadic, rules, h, b, sample, seed)
        prof.sampled = True
    lts_small = derive_lts(dyadic, h, b, max_rounds, origins=origins, truncate=False)
    lts_large = derive_lts(dyadic, large[0], large[1], max_rounds, origins=origins, truncate=False)
    deg_s: Dict[Term, int] = {o: 0 for o in origins}
    deg_l: Dict[Term, int] = {o: 0 for o in origins}
    for f in lts_small.transitions:
        deg_s[f.source] = deg_s.get(f.source, 0) + 1
    for f in lts_large.transitions:
        deg_l[f.source] = deg_l.get(f.source, 0) + 1
    for o in origins:
        prof.degrees[o] = (deg_s[o], deg_l[o])
    return prof
