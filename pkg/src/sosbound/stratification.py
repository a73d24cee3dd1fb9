"""Partial strict stratification measures.

A measure is an ordered list of clauses ``pattern => n + S(arg) + ...``.  The
first clause whose pattern matches an origin decides its order; when no clause
matches, or a recursive call is undefined, the order is undefined (``None``).

Besides concrete evaluation this module offers three symbolic tools that work
on open terms, whose variables stand for arbitrary closed terms:

* :func:`split_cases` refines an open term by instantiating variables with
  signature constructors until every refinement is decided by one clause,
* :meth:`Prover.value_range` over-approximates the defined orders of an open
  term, and
* :class:`Satisfier` searches for a closed instance with a defined order
  (resolution against the clauses, then bounded enumeration).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .terms import (App, Fam, Signature, Term, Var, apply_subst, height, is_pair,
                    iter_terms_upto, match, max_index, size, subterms,
                    term_key, unify, universe_size, var_list, variables)
from .tss import TSS, PremiseFamily, Rule, instantiate_family
from .verdict import FAIL, PASS, Verdict, Witness

INF = float("inf")
OTHER = -1  # index of the generic "any other" family member used by case splits


class MeasureError(RuntimeError):
    pass


class Incomplete(Exception):
    """A symbolic procedure gave up; callers fall back to bounded search."""


@dataclass(frozen=True)
class Clause:
    pattern: Term
    expr: Tuple[Union[int, Term], ...]

    @property
    def constant(self) -> int:
        return sum(e for e in self.expr if isinstance(e, int))

    @property
    def calls(self) -> Tuple[Term, ...]:
        return tuple(e for e in self.expr if not isinstance(e, int))

    def __str__(self):
        parts = [str(e) if isinstance(e, int) else f"S({_plain(e)})" for e in self.expr]
        return f"{self.pattern} => {' + '.join(parts) or '0'}"


def _plain(t: Term) -> str:
    s = str(t)
    return s[1:-1] if is_pair(t) else s


@dataclass(frozen=True)
class StratMeasure:
    name: str
    clauses: Tuple[Clause, ...] = ()

    def __str__(self):
        body = "".join(f"  {c};\n" for c in self.clauses)
        return f"strat {self.name} {{\n{body}}}"

    def problems(self) -> List[str]:
        """Clauses whose recursive calls do not descend structurally."""
        out = []
        for n, c in enumerate(self.clauses, 1):
            pvars = variables(c.pattern)
            for call in c.calls:
                missing = variables(call) - pvars
                if missing:
                    out.append(f"clause {n}: S({_plain(call)}) uses unbound {', '.join(sorted(missing))}")
                elif not _descends(call, c.pattern):
                    out.append(f"clause {n}: S({_plain(call)}) is not a structural descent of {c.pattern}")
        return out

    def overlaps(self) -> List[str]:
        out = []
        for j, cj in enumerate(self.clauses):
            pj = _rename(cj.pattern, "'b")
            for i in range(j):
                if unify(_rename(self.clauses[i].pattern, "'a"), pj) is not None:
                    out.append(f"clause {j + 1} overlaps earlier clause {i + 1}; the earlier one wins")
                    break
        return out


def _descends(call: Term, pattern: Term) -> bool:
    """Componentwise subterm of the pattern, strictly smaller in at least one place."""
    if is_pair(call) and is_pair(pattern) and len(call.args) == len(pattern.args):
        rel = [_sub_rel(a, b) for a, b in zip(call.args, pattern.args)]
        return all(r >= 0 for r in rel) and any(r > 0 for r in rel)
    if is_pair(pattern) and not is_pair(call):
        return False
    return _sub_rel(call, pattern) > 0


def _sub_rel(a: Term, b: Term) -> int:
    """1 if ``a`` is a proper subterm of ``b``, 0 if equal, -1 otherwise."""
    if a == b:
        return 0
    for s in subterms(b):
        if s == a:
            return 1
    return -1


def _rename(t: Term, suffix: str) -> Term:
    tp = type(t)
    if tp is Var:
        return Var(t.name + suffix)
    if tp is App:
        return App(t.head, tuple(_rename(a, suffix) for a in t.args)) if t.args else t
    if tp is Fam and isinstance(t.index, str):
        return Fam(t.family, t.index + suffix)
    return t


# ---------------------------------------------------------------------------
# concrete evaluation

def eval_measure(S: StratMeasure, o: Term) -> Optional[int]:
    """Order of the closed origin ``o`` or ``None`` when undefined.

    Raises :class:`MeasureError` if a recursive call does not shrink its
    argument, which would let the recursion run past the term size.
    """
    return _eval(S, o)


@lru_cache(maxsize=200_000)
def _eval(S: StratMeasure, o: Term) -> Optional[int]:
    for c in S.clauses:
        sigma = match(c.pattern, o)
        if sigma is None:
            continue
        total = c.constant
        for call in c.calls:
            arg = apply_subst(sigma, call)
            if size(arg) >= size(o):
                raise MeasureError(f"measure {S.name}: S({_plain(arg)}) does not shrink {o}")
            v = _eval(S, arg)
            if v is None:
                return None
            total += v
        return total
    return None


# ---------------------------------------------------------------------------
# symbolic case analysis

_fresh = itertools.count()


def _fresh_var() -> Var:
    return Var(f"_v{next(_fresh)}")


def canonical(t: Term) -> Term:
    """Alpha-normal form: variables renamed v0, v1, ... in order of occurrence."""
    names = var_list(t)
    return apply_subst({n: Var(f"?{i}") for i, n in enumerate(names)}, t)


class Prover:
    """Symbolic reasoning about one measure over one signature."""

    MAX_SPLIT_DEPTH = 12

    def __init__(self, S: StratMeasure, sig: Signature):
        self.S = S
        self.sig = sig
        self.renamed = [_rename(c.pattern, "'c") for c in S.clauses]
        idx = set()
        for c in S.clauses:
            for s in subterms(c.pattern):
                if type(s) is Fam and isinstance(s.index, int):
                    idx.add(s.index)
        self.family_indices = sorted(idx)
        self._range_memo: Dict[Term, Optional[Tuple[float, float]]] = {}

    # -- case splitting -----------------------------------------------------
    def constructors(self) -> List[Term]:
        out: List[Term] = [App(c) for c in self.sig.constants()]
        if self.sig.family:
            out += [Fam(self.sig.family, i) for i in self.family_indices]
            out.append(Fam(self.sig.family, OTHER))
        for f in self.sig.functions():
            out.append(App(f.name, tuple(_fresh_var() for _ in range(f.arity))))
        return out

    def split_cases(self, t: Term, start: int = 0, depth: int = 0):
        """List of ``(theta, clause index or None, sigma)`` covering every instance of ``t``.

        ``theta`` refines ``t``; every closed instance of ``t`` is an instance
        of exactly one ``theta(t)``, and all instances of ``theta(t)`` select
        the same first clause (``None``: no clause applies).
        """
        for j in range(start, len(self.S.clauses)):
            mgu = unify(t, self.renamed[j])
            if mgu is None:
                continue
            sigma = match(self.S.clauses[j].pattern, t)
            if sigma is not None:
                return [({}, j, sigma)]
            x = next((v for v in var_list(t)
                      if v in mgu and type(mgu[v]) is not Var), None)
            if x is None or depth >= self.MAX_SPLIT_DEPTH:
                raise Incomplete(f"cannot split {t} against {self.S.clauses[j].pattern}")
            out = []
            for c in self.constructors():
                theta = {x: c}
                for th2, k, sg in self.split_cases(apply_subst(theta, t), j, depth + 1):
                    out.append((_compose(theta, th2), k, sg))
            return out
        return [({}, None, None)]

    # -- totality -------------------------------------------------------------
    def total(self, t: Term) -> Optional[Term]:
        """``None`` when every closed instance of ``t`` has a defined order, else a refuting instance.

        Raises :class:`Incomplete` when the analysis cannot decide.
        """
        return self._total(t, set(), 0)

    def _total(self, t, active, depth):
        key = canonical(t)
        if key in active:
            return None  # well-founded: recursive calls are on strictly smaller instances
        if depth > 40:
            raise Incomplete(f"totality analysis of {t} too deep")
        active = active | {key}
        for theta, j, sigma in self.split_cases(t):
            case = apply_subst(theta, t)
            if j is None:
                return case
            for call in self.S.clauses[j].calls:
                bad = self._total(apply_subst(sigma, call), active, depth + 1)
                if bad is not None:
                    return case
        return None

    # -- value ranges -------------------------------------------------------
    def value_range(self, t: Term) -> Optional[Tuple[float, float]]:
        """Interval containing every defined order of an instance of ``t`` (``None``: never defined)."""
        return self._range(t, frozenset(), 0)

    def _range(self, t, active, depth):
        key = canonical(t)
        if key in self._range_memo:
            return self._range_memo[key]
        if key in active or depth > 30:
            return (0, INF)
        active = active | {key}
        lo, hi, any_case = INF, -INF, False
        for theta, j, sigma in self.split_cases(t):
            if j is None:
                continue
            c = self.S.clauses[j]
            clo = chi = c.constant
            ok = True
            for call in c.calls:
                r = self._range(apply_subst(sigma, call), active, depth + 1)
                if r is None:
                    ok = False
                    break
                clo += r[0]
                chi += r[1]
            if ok:
                any_case = True
                lo, hi = min(lo, clo), max(hi, chi)
        res = (lo, hi) if any_case else None
        if not active - {key}:
            self._range_memo[key] = res
        return res

    def case_values(self, t: Term):
        """Per-case ``(theta, lower bound, call arguments)``; undefined cases are skipped."""
        out = []
        for theta, j, sigma in self.split_cases(t):
            if j is None:
                continue
            c = self.S.clauses[j]
            lo = c.constant
            calls = [apply_subst(sigma, call) for call in c.calls]
            dead = False
            for a in calls:
                r = self.value_range(a)
                if r is None:
                    dead = True
                    break
                lo += r[0]
            if not dead:
                out.append((theta, lo, c.constant, calls))
        return out

    def decreases(self, s: Term, v: Term) -> bool:
        """Symbolic proof that S(sigma v) < S(sigma s) whenever the former is defined."""
        for theta, lo, const, calls in self.case_values(s):
            v2 = apply_subst(theta, v)
            if const >= 1 and v2 in calls:
                continue
            r = self.value_range(v2)
            if r is None or r[1] < lo:
                continue
            return False
        return True

    # -- satisfiability -----------------------------------------------------
    def resolve(self, goals: Sequence[Term], depth: int, budget: List[int]):
        """Yield substitutions under which the goals can all be given a defined order."""
        if not goals:
            yield {}
            return
        if depth <= 0:
            budget[1] = 1  # cut off
            return
        t, rest = goals[0], list(goals[1:])
        for j, c in enumerate(self.S.clauses):
            budget[0] -= 1
            if budget[0] < 0:
                budget[1] = 1
                return
            suffix = f"'{depth}_{j}"
            pat = _rename(c.pattern, suffix)
            mgu = unify(t, pat)
            if mgu is None:
                continue
            calls = [apply_subst(mgu, _rename(call, suffix)) for call in c.calls]
            rest2 = [apply_subst(mgu, g) for g in rest]
            for sub in self.resolve(calls + rest2, depth - 1, budget):
                yield _compose(mgu, sub)


def _compose(first, then):
    out = {k: apply_subst(then, v) for k, v in first.items()}
    for k, v in then.items():
        out.setdefault(k, v)
    return out


# ---------------------------------------------------------------------------
# thresholds and rule instances

def analysis_threshold(tss: TSS, S: Optional[StratMeasure] = None) -> int:
    """An index beyond which every template instance behaves alike.

    Larger than every concrete family index, every measure-pattern height and
    every template offset, so instances from here on only differ in parts the
    measure clauses cannot tell apart.
    """
    n = 0
    for r in tss.rules:
        for f in r.formulas():
            for t in f.terms():
                n = max(n, max_index(t) + 1, height(t) + 1)
    for tpl in tss.templates:
        n = max(n, tpl.lower)
        for f in tpl.body.formulas():
            for t in f.terms():
                n = max(n, height(t) + 1)
    if S is not None:
        for c in S.clauses:
            n = max(n, max_index(c.pattern) + 1, height(c.pattern) + 1)
            for s in subterms(c.pattern):
                if is_pair(s):
                    n = max(n, max(height(a) for a in s.args) + 1)
    return n + tss.max_template_offset() + 1


def analysis_instances(tss: TSS, S: Optional[StratMeasure] = None):
    """Plain rules plus template instances up to the tail probes N, N+1, N+2.

    Returns ``(rules, tails)`` where ``tails`` maps a template name to its
    threshold ``N``.
    """
    N = analysis_threshold(tss, S)
    rules = list(tss.rules)
    tails = {}
    for tpl in tss.templates:
        top = max(N, tpl.lower)
        rules.extend(tpl.instance(i) for i in range(tpl.lower, top + 3))
        tails[tpl.name] = top
    return rules, tails


# ---------------------------------------------------------------------------
# bounded enumeration helpers

def effective_height(sig: Signature, nvars: int, height_bound: int, label_bound: int,
                     budget: int) -> int:
    """Largest height <= ``height_bound`` whose assignment space fits in ``budget``."""
    h = height_bound
    while h > 0 and universe_size(sig, h, label_bound) ** max(nvars, 1) > budget:
        h -= 1
    return h


def assignments(names: Sequence[str], universe: Sequence[Term]):
    names = list(names)
    for combo in itertools.product(universe, repeat=len(names)):
        yield dict(zip(names, combo))


def _family_sources(p: PremiseFamily, label_bound: int) -> List[Term]:
    return [instantiate_family(p, j).source for j in range(label_bound)]


def _all_premise_sources(rule: Rule, label_bound: int) -> List[Term]:
    out = []
    for p in rule.premises:
        if isinstance(p, PremiseFamily):
            out.extend(_family_sources(p, label_bound))
        else:
            out.append(p.source)
    return out


# ---------------------------------------------------------------------------
# checking the two conditions

STRAT_BUDGET = 60_000
WITNESS_CAP = 25


def check_strat_conditions(tss: TSS, S: StratMeasure, height_bound: int = 3,
                           label_bound: int = 3) -> Verdict:
    """Conditions (i) totality on rule sources and (ii) strict decrease to premise sources.

    Outcome ``pass`` carries ``payload["mode"]`` = ``"PASS-SYMBOLIC"`` or
    ``"PASS-BOUNDED-ONLY"``; ``fail`` lists concrete counterexamples.
    """
    if not tss.is_dyadic:
        raise ValueError("stratification is checked on a dyadic TSS")
    if height_bound < 1 or label_bound < 1:
        raise ValueError("bounds must be >= 1")
    sig = tss.signature
    wf = S.problems()
    if wf:
        return Verdict("stratification", FAIL, [Witness(None, (), m) for m in wf],
                       {"mode": "FAIL", "measure": S.name}, summary="ill-formed measure")

    # bounded falsification
    K = max(label_bound, height_bound + 2)
    concrete = list(tss.rules)
    for tpl in tss.templates:
        concrete.extend(tpl.instance(i) for i in range(tpl.lower, tpl.lower + K))
    cex_i, cex_ii = [], []
    reduced = {}
    for rule in concrete:
        s = rule.source
        sv = sorted(variables(s))
        h1 = effective_height(sig, len(sv), height_bound, label_bound, STRAT_BUDGET)
        if h1 < height_bound:
            reduced[rule.name] = h1
        U = iter_terms_upto(sig, h1, label_bound)
        for sigma in assignments(sv, U):
            o = apply_subst(sigma, s)
            if eval_measure(S, o) is None:
                cex_i.append((rule.name, o))
        for v in _all_premise_sources(rule, label_bound):
            vv = sorted(variables(s) | variables(v))
            h2 = effective_height(sig, len(vv), height_bound, label_bound, STRAT_BUDGET)
            if h2 < height_bound:
                reduced[rule.name] = min(reduced.get(rule.name, h2), h2)
            U2 = iter_terms_upto(sig, h2, label_bound)
            for sigma in assignments(vv, U2):
                ov = eval_measure(S, apply_subst(sigma, v))
                if ov is None:
                    continue
                o = apply_subst(sigma, s)
                os_ = eval_measure(S, o)
                if os_ is None or ov >= os_:
                    cex_ii.append((rule.name, o, apply_subst(sigma, v), ov, os_))

    witnesses = []
    cex_i.sort(key=lambda c: (height(c[1]), term_key(c[1])))
    seen = set()
    for name, o in cex_i:
        if (name, o) in seen:
            continue
        seen.add((name, o))
        witnesses.append(Witness(name, (str(o),), "condition (i): order undefined on a source instance"))
        if len(witnesses) >= WITNESS_CAP:
            break
    cex_ii.sort(key=lambda c: (height(c[1]) + height(c[2]), term_key(c[1]), term_key(c[2])))
    n2 = 0
    for name, o, v, ov, os_ in cex_ii:
        if (name, o, v) in seen:
            continue
        seen.add((name, o, v))
        shown = "undefined" if os_ is None else str(os_)
        witnesses.append(Witness(name, (str(o), str(v)),
                                 f"condition (ii): premise order {ov} not below source order {shown}"))
        n2 += 1
        if n2 >= WITNESS_CAP:
            break

    payload = {"measure": S.name, "bounds": [height_bound, label_bound],
               "counterexamples": {"i": len(cex_i), "ii": len(cex_ii)}}
    if reduced:
        payload["reduced_height"] = dict(sorted(reduced.items()))
    warn = S.overlaps()
    if warn:
        payload["warnings"] = warn
    if witnesses:
        payload["mode"] = "FAIL"
        return Verdict("stratification", FAIL, witnesses, payload,
                       summary=f"{S.name} is not a partial strict stratification")

    symbolic, notes = symbolic_strat_check(tss, S)
    payload["mode"] = "PASS-SYMBOLIC" if symbolic else "PASS-BOUNDED-ONLY"
    if notes:
        payload["symbolic_notes"] = notes
    return Verdict("stratification", PASS, [], payload, summary=payload["mode"])


def symbolic_strat_check(tss: TSS, S: StratMeasure) -> Tuple[bool, List[str]]:
    """Sufficient symbolic check of both conditions; notes explain every gap."""
    prover = Prover(S, tss.signature)
    rules, _ = analysis_instances(tss, S)
    notes = []
    for rule in rules:
        s = rule.source
        try:
            bad = prover.total(s)
        except Incomplete as e:
            notes.append(f"{rule.name}: totality undecided ({e})")
            continue
        if bad is not None:
            notes.append(f"{rule.name}: no clause covers {bad}")
            continue
        for p in rule.premises:
            v = p.formula.source if isinstance(p, PremiseFamily) else p.source
            if _has_symbolic_index(v):
                notes.append(f"{rule.name}: premise source {v} depends on a family index")
                continue
            try:
                if not prover.decreases(s, v):
                    notes.append(f"{rule.name}: no symbolic decrease from {s} to {v}")
            except Incomplete as e:
                notes.append(f"{rule.name}: decrease undecided ({e})")
    ok = not notes
    if tss.templates:
        notes.append("templates analysed on instances up to the tail threshold")
    return ok, notes


def _has_symbolic_index(t: Term) -> bool:
    return any(type(s) is Fam and not isinstance(s.index, int) for s in subterms(t))


# ---------------------------------------------------------------------------
# satisfiability, support and junk

@dataclass
class SatResult:
    satisfiable: Optional[bool]  # None: undecided within the search bounds
    witness: Optional[Term] = None
    method: str = ""


class Satisfier:
    """Decides "there is a closing sigma with S(sigma(v)) defined", with caching."""

    def __init__(self, S: StratMeasure, sig: Signature, height_bound: int = 3,
                 label_bound: int = 3, max_depth: int = 8):
        self.S = S
        self.sig = sig
        self.prover = Prover(S, sig)
        self.h = height_bound
        self.b = label_bound
        self.max_depth = max_depth
        self._memo: Dict[Term, SatResult] = {}

    def __call__(self, v: Term) -> SatResult:
        key = canonical(v)
        if key not in self._memo:
            self._memo[key] = self._decide(v)
        return self._memo[key]

    def _ground_candidates(self) -> List[Term]:
        return list(iter_terms_upto(self.sig, 1, max(self.b, 1)))[:12]

    def _validate(self, v: Term, theta) -> Optional[Term]:
        t = apply_subst(theta, v)
        t = _ground_indices(t)
        rest = sorted(variables(t))
        cands = self._ground_candidates()
        for n, combo in enumerate(itertools.product(cands, repeat=len(rest))):
            if n > 500:
                break
            g = apply_subst(dict(zip(rest, combo)), t)
            if eval_measure(self.S, g) is not None:
                return g
        return None

    def _decide(self, v: Term) -> SatResult:
        if not variables(v) and not _has_symbolic_index(v):
            ok = eval_measure(self.S, v) is not None
            return SatResult(ok, v if ok else None, "evaluation")
        exhausted = False
        for depth in range(1, self.max_depth + 1):
            budget = [20_000, 0]
            for theta in self.prover.resolve([v], depth, budget):
                w = self._validate(v, theta)
                if w is not None:
                    return SatResult(True, w, "resolution")
            if not budget[1]:
                exhausted = True
                break
        if exhausted:
            return SatResult(False, None, "resolution (search space exhausted)")
        vs = sorted(variables(v))
        h = effective_height(self.sig, len(vs), self.h, self.b, STRAT_BUDGET)
        for sigma in assignments(vs, iter_terms_upto(self.sig, h, self.b)):
            g = apply_subst(sigma, v)
            if eval_measure(self.S, g) is not None:
                return SatResult(True, g, "bounded search")
        return SatResult(None, None, f"no witness up to height {h}")


def _ground_indices(t: Term) -> Term:
    tp = type(t)
    if tp is Fam and isinstance(t.index, str):
        return Fam(t.family, 0)
    if tp is App and t.args:
        return App(t.head, tuple(_ground_indices(a) for a in t.args))
    return t


@dataclass
class SupportMap:
    """``eta``: rule source -> premise sources with a satisfiable order.

    ``infinite`` lists sources whose support is infinite (a template keeps
    adding new satisfiable premise sources); ``undecided`` lists premise
    sources whose satisfiability could not be settled.
    """

    entries: Dict[Term, Tuple[Term, ...]] = field(default_factory=dict)
    infinite: Dict[Term, str] = field(default_factory=dict)
    undecided: List[Tuple[str, Term]] = field(default_factory=list)

    def __getitem__(self, s: Term) -> Tuple[Term, ...]:
        return self.entries.get(s, ())

    def __contains__(self, s: Term) -> bool:
        return s in self.entries

    def to_dict(self):
        out = {}
        for s, vs in self.entries.items():
            out[str(s)] = sorted(str(v) for v in vs)
        return out

    def render(self) -> List[str]:
        lines = []
        for s, vs in self.entries.items():
            body = ", ".join(str(v) for v in vs)
            tail = " (infinite)" if s in self.infinite else ""
            lines.append(f"eta({s}) = {{{body}}}{tail}")
        return lines


def restricted_support(tss: TSS, S: StratMeasure, bounds=(3, 3),
                       satisfier: Optional[Satisfier] = None) -> SupportMap:
    """The S-restricted support map over plain rules and analysed template instances."""
    h, b = bounds[0], bounds[1]
    sat = satisfier or Satisfier(S, tss.signature, h, b)
    rules, tails = analysis_instances(tss, S)
    eta = SupportMap()
    for rule in rules:
        s = rule.source
        current = list(eta.entries.get(s, ()))
        for p in rule.premises:
            if isinstance(p, PremiseFamily):
                v = p.formula.source
                if _has_symbolic_index(v):
                    # one premise source per family index; satisfiable ones make eta(s) infinite
                    probe = [instantiate_family(p, j).source for j in range(b)]
                    if any(sat(t).satisfiable for t in probe):
                        eta.infinite[s] = rule.name
                    continue
            else:
                v = p.source
            r = sat(v)
            if r.satisfiable is None:
                eta.undecided.append((rule.name, v))
            if r.satisfiable and v not in current:
                current.append(v)
        eta.entries[s] = tuple(current)
    # a template whose index-dependent premise sources stay satisfiable makes its source's support infinite
    for tpl in tss.templates:
        N = tails[tpl.name]
        probes = [tpl.instance(i) for i in (N, N + 1, N + 2)]
        for n, p in enumerate(tpl.body.premises):
            if isinstance(p, PremiseFamily):
                continue
            vs = [r.premises[n].source for r in probes]
            if len(set(vs)) == 3 and all(sat(v).satisfiable for v in vs):
                eta.infinite[probes[0].source] = tpl.name
    return eta


@dataclass
class JunkSet:
    """Junk rules: plain names, finitely many template instances, and template tails."""

    names: frozenset = frozenset()
    tails: Dict[str, int] = field(default_factory=dict)
    undecided: Tuple[str, ...] = ()

    def __contains__(self, rule_name: str) -> bool:
        if rule_name in self.names:
            return True
        for tpl, start in self.tails.items():
            rest = rule_name[len(tpl):]
            if rule_name.startswith(tpl) and rest.isdigit() and int(rest) >= start:
                return True
        return False

    def describe(self) -> List[str]:
        return sorted(self.names) + [f"{t}(i>={n})" for t, n in sorted(self.tails.items())]

    def __eq__(self, other):
        if isinstance(other, (set, frozenset)):
            return set(self.describe()) == set(other)
        if isinstance(other, JunkSet):
            return (self.names, self.tails) == (other.names, other.tails)
        return NotImplemented

    def __len__(self):
        return len(self.names) + len(self.tails)


def detect_junk_rules(tss: TSS, S: StratMeasure, bounds=(3, 3),
                      satisfier: Optional[Satisfier] = None) -> JunkSet:
    """Rules with a premise source that no closing substitution gives a defined order."""
    h, b = bounds[0], bounds[1]
    sat = satisfier or Satisfier(S, tss.signature, h, b)
    undecided = []

    def junk(rule: Rule) -> Optional[bool]:
        verdicts = []
        for p in rule.premises:
            if isinstance(p, PremiseFamily):
                vs = ([instantiate_family(p, j).source for j in range(b)]
                      if _has_symbolic_index(p.formula.source) else [p.formula.source])
                # a family is provable only if every member is; one dead member kills it
                rs = [sat(v).satisfiable for v in vs]
                verdicts.append(False if False in rs else (None if None in rs else True))
            else:
                verdicts.append(sat(p.source).satisfiable)
        if False in verdicts:
            return True
        if None in verdicts:
            return None
        return False

    names = set()
    for r in tss.rules:
        j = junk(r)
        if j:
            names.add(r.name)
        elif j is None:
            undecided.append(r.name)
    tails = {}
    rules, thresholds = analysis_instances(tss, S)
    for tpl in tss.templates:
        N = thresholds[tpl.name]
        flags = {i: junk(tpl.instance(i)) for i in range(tpl.lower, N + 3)}
        tail = [flags[N], flags[N + 1], flags[N + 2]]
        start = None
        if all(t is True for t in tail):
            start = N
            while start - 1 >= tpl.lower and flags[start - 1] is True:
                start -= 1
            tails[tpl.name] = start
        elif not all(t is False for t in tail):
            undecided.append(f"{tpl.name}(i>={N})")
        for i, f in flags.items():
            if start is not None and i >= start:
                continue
            if f:
                names.add(f"{tpl.name}{i}")
            elif f is None:
                undecided.append(f"{tpl.name}{i}")
    return JunkSet(frozenset(names), tails, tuple(undecided))
