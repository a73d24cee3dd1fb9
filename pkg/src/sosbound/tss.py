"""Formulae, rules, indexed rule templates and transition system specifications."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .kinds import DyadicKind
from .terms import (App, Fam, Idx, IVar, PAIR, Pow, Signature, Substitution, Term,
                    Var, apply_subst, is_pair, match, variables)
from .verdict import Verdict, Witness, verdict


@dataclass(frozen=True, slots=True)
class Formula:
    """Triadic formula ``source -[label]-> target``."""

    source: Term
    label: Term
    target: Term

    def terms(self) -> Tuple[Term, ...]:
        return (self.source, self.label, self.target)

    def map(self, fn) -> "Formula":
        return Formula(fn(self.source), fn(self.label), fn(self.target))

    def __str__(self):
        return f"{self.source} -[{self.label}]-> {self.target}"


@dataclass(frozen=True, slots=True)
class DyadicFormula:
    """Dyadic formula ``source ==> target`` read according to ``kind``."""

    source: Term
    target: Term
    kind: DyadicKind

    def terms(self) -> Tuple[Term, ...]:
        return (self.source, self.target)

    def map(self, fn) -> "DyadicFormula":
        return DyadicFormula(fn(self.source), fn(self.target), self.kind)

    def __str__(self):
        return f"{self.source} ==> {self.target}"


AnyFormula = Union[Formula, DyadicFormula]


@dataclass(frozen=True, slots=True)
class PremiseFamily:
    """Infinitely many premises ``formula[j := n]`` for every natural ``n``.

    ``var`` may only occur in family indices of ``formula``.
    """

    formula: AnyFormula
    var: str

    def map(self, fn) -> "PremiseFamily":
        return PremiseFamily(self.formula.map(fn), self.var)

    def __str__(self):
        return f"{{ {self.formula} | {self.var} }}"


Premise = Union[Formula, DyadicFormula, PremiseFamily]


@dataclass(frozen=True)
class Rule:
    name: str
    premises: Tuple[Premise, ...]
    conclusion: AnyFormula

    @property
    def source(self) -> Term:
        return self.conclusion.source

    @property
    def is_axiom(self) -> bool:
        return not self.premises

    def finite_premises(self) -> List[AnyFormula]:
        return [p for p in self.premises if not isinstance(p, PremiseFamily)]

    def families(self) -> List[PremiseFamily]:
        return [p for p in self.premises if isinstance(p, PremiseFamily)]

    def variables(self) -> set:
        out = set()
        for f in self.formulas():
            for t in f.terms():
                out |= variables(t)
        return out

    def formulas(self) -> List[AnyFormula]:
        return [p.formula if isinstance(p, PremiseFamily) else p
                for p in self.premises] + [self.conclusion]

    def __str__(self):
        prem = ", ".join(map(str, self.premises))
        return f"{self.name}: {prem + ' ' if prem else ''}|- {self.conclusion}"


@dataclass(frozen=True)
class RuleTemplate:
    """A countable family of rules indexed by ``index_variable >= lower``."""

    index_variable: str
    body: Rule
    lower: int = 0

    @property
    def name(self) -> str:
        return self.body.name

    def instance(self, i: int) -> Rule:
        if i < self.lower:
            raise ValueError(f"template {self.name} starts at index {self.lower}")
        env = {self.index_variable: i}
        fn = lambda t: expand(t, env)
        premises = tuple(p.map(fn) for p in self.body.premises)
        return Rule(f"{self.name}{i}", premises, self.body.conclusion.map(fn))

    def __str__(self):
        return f"{self.name}({self.index_variable} >= {self.lower}): {self.body}"


@dataclass(frozen=True)
class TSS:
    signature: Signature = field(default_factory=Signature)
    rules: Tuple[Rule, ...] = ()
    templates: Tuple[RuleTemplate, ...] = ()
    kind: Optional[DyadicKind] = None

    @property
    def is_dyadic(self) -> bool:
        return self.kind is not None

    def rule_names(self) -> List[str]:
        return [r.name for r in self.rules] + [t.name for t in self.templates]

    def instantiate(self, bound: int) -> List[Rule]:
        """Plain rules followed by the first ``bound`` instances of every template."""
        out = list(self.rules)
        for tpl in self.templates:
            out.extend(instantiate_template(tpl, bound))
        return out

    def with_rules(self, rules: Iterable[Rule], templates: Iterable[RuleTemplate] = ()) -> "TSS":
        return replace(self, rules=tuple(rules), templates=tuple(templates))

    def max_template_offset(self) -> int:
        """Largest constant added to a template index anywhere in the TSS."""
        best = 0
        for tpl in self.templates:
            for f in tpl.body.formulas():
                for t in f.terms():
                    for idx in _indices(t):
                        best = max(best, idx.offset)
        return best


# ---------------------------------------------------------------------------
# template expansion

def expand(t: Term, env: Dict[str, int]) -> Term:
    """Evaluate index expressions bound in ``env``; others are left symbolic."""
    tp = type(t)
    if tp is App:
        if not t.args:
            return t
        return App(t.head, tuple(expand(a, env) for a in t.args))
    if tp is Fam:
        if isinstance(t.index, Idx) and t.index.var in env:
            n = t.index.eval(env)
            if n < 0:
                raise ValueError(f"index expression {t} evaluates to {n}")
            return Fam(t.family, n)
        return t
    if tp is Pow:
        if t.exp.var not in env:
            raise ValueError(f"exponent of {t} must be the template index")
        n = t.exp.eval(env)
        if n < 0:
            raise ValueError(f"exponent of {t} evaluates to {n}")
        out = expand(t.arg, env)
        for _ in range(n):
            out = App(t.head, (out,))
        return out
    if tp is IVar:
        if t.idx.var not in env:
            raise ValueError(f"variable {t} must be indexed by the template index")
        n = t.idx.eval(env)
        if n < 0:
            raise ValueError(f"index of {t} evaluates to {n}")
        return Var(f"{t.name}{n}")
    return t


def _indices(t: Term):
    tp = type(t)
    if tp is App:
        for a in t.args:
            yield from _indices(a)
    elif tp is Fam and isinstance(t.index, Idx):
        yield t.index
    elif tp is Pow:
        yield t.exp
        yield from _indices(t.arg)
    elif tp is IVar:
        yield t.idx


def instantiate_template(tpl: RuleTemplate, index_upper_bound: int) -> List[Rule]:
    """The first ``index_upper_bound`` instances, starting at the template's lower index."""
    if index_upper_bound < 1:
        raise ValueError("index_upper_bound must be >= 1")
    return [tpl.instance(i) for i in range(tpl.lower, tpl.lower + index_upper_bound)]


def instantiate_family(fam: PremiseFamily, n: int) -> AnyFormula:
    return fam.formula.map(lambda t: expand(t, {fam.var: n}))


# ---------------------------------------------------------------------------
# matching a closed transition against a rule

def unifies_with_rule(tr: AnyFormula, rule: Rule) -> Optional[Substitution]:
    """Substitution carrying the rule's conclusion onto the closed transition ``tr``."""
    concl = rule.conclusion
    if type(tr) is not type(concl):
        return None
    sigma: Optional[Substitution] = {}
    for p, t in zip(concl.terms(), tr.terms()):
        sigma = match(p, t, sigma)
        if sigma is None:
            return None
    return sigma


def apply_formula(sigma: Substitution, f: AnyFormula) -> AnyFormula:
    return f.map(lambda t: apply_subst(sigma, t))


# ---------------------------------------------------------------------------
# validation

def validate_tss(tss: TSS) -> Verdict:
    """Arity, naming and formula-shape checks; every violation becomes a witness."""
    sig = tss.signature
    arities = sig.arities
    problems: List[Witness] = []

    names = tss.rule_names()
    for n in sorted({n for n in names if names.count(n) > 1}):
        problems.append(Witness(n, (), "duplicate rule name"))

    def check_term(rule, where, t, template, allow_pair):
        tp = type(t)
        if tp is Var:
            return
        if tp is IVar or tp is Pow:
            if not template:
                problems.append(Witness(rule, (str(t),), f"{where}: index expression outside a template"))
                return
            if tp is Pow:
                if arities.get(t.head) != 1:
                    problems.append(Witness(rule, (str(t),), f"{where}: iterated symbol {t.head} must be unary"))
                check_term(rule, where, t.arg, template, False)
            return
        if tp is Fam:
            if sig.family is None or t.family != sig.family:
                problems.append(Witness(rule, (str(t),), f"{where}: unknown label family {t.family}"))
            elif isinstance(t.index, Idx) and not template:
                problems.append(Witness(rule, (str(t),), f"{where}: index expression outside a template"))
            return
        if t.head == PAIR:
            if not allow_pair:
                problems.append(Witness(rule, (str(t),), f"{where}: pair not allowed here"))
            for a in t.args:
                check_term(rule, where, a, template, False)
            return
        ar = arities.get(t.head)
        if ar is None:
            problems.append(Witness(rule, (str(t),), f"{where}: unknown symbol {t.head}"))
        elif ar != len(t.args):
            problems.append(Witness(rule, (str(t),),
                                    f"{where}: {t.head} has arity {ar}, applied to {len(t.args)}"))
        for a in t.args:
            check_term(rule, where, a, template, False)

    def check_formula(rule, where, f, template):
        if isinstance(f, Formula):
            if tss.kind is not None:
                problems.append(Witness(rule, (str(f),), f"{where}: triadic formula in a dyadic TSS"))
            for part, t in zip(("source", "label", "target"), f.terms()):
                check_term(rule, f"{where} {part}", t, template, False)
            return
        if tss.kind is None:
            problems.append(Witness(rule, (str(f),), f"{where}: dyadic formula in a triadic TSS"))
            return
        if f.kind != tss.kind:
            problems.append(Witness(rule, (str(f),), f"{where}: formula of kind {f.kind}, TSS is {tss.kind}"))
        k = tss.kind
        for part, t, want_pair in (("source", f.source, k.pair_source), ("target", f.target, k.pair_target)):
            if want_pair and not (is_pair(t) and len(t.args) == 2):
                problems.append(Witness(rule, (str(t),), f"{where} {part}: {k} expects a pair"))
            elif not want_pair and is_pair(t):
                problems.append(Witness(rule, (str(t),), f"{where} {part}: {k} expects a single term"))
            check_term(rule, f"{where} {part}", t, template, want_pair)

    def check_rule(rule: Rule, template: Optional[RuleTemplate]):
        for n, p in enumerate(rule.premises, 1):
            if isinstance(p, PremiseFamily):
                check_formula(rule.name, f"premise {n}", p.formula, True)
                used = {i.var for t in p.formula.terms() for i in _indices(t)}
                if p.var not in used:
                    problems.append(Witness(rule.name, (str(p),), f"premise {n}: family variable {p.var} unused"))
                if template and p.var == template.index_variable:
                    problems.append(Witness(rule.name, (str(p),), f"premise {n}: family variable shadows the template index"))
            else:
                check_formula(rule.name, f"premise {n}", p, template is not None)
        check_formula(rule.name, "conclusion", rule.conclusion, template is not None)
        if template is not None:
            fam_vars = {p.var for p in rule.families()}
            allowed = {template.index_variable} | fam_vars
            for f in rule.formulas():
                for t in f.terms():
                    for idx in _indices(t):
                        if idx.var not in allowed:
                            problems.append(Witness(rule.name, (str(t),), f"unknown index variable {idx.var}"))
            if template.lower < 0:
                problems.append(Witness(rule.name, (), "negative template lower bound"))
        else:
            for p in rule.families():
                for t in p.formula.terms():
                    for idx in _indices(t):
                        if idx.var != p.var:
                            problems.append(Witness(rule.name, (str(t),), f"unknown index variable {idx.var}"))

    for r in tss.rules:
        check_rule(r, None)
    for tpl in tss.templates:
        check_rule(tpl.body, tpl)
    return verdict("validate", problems,
                   payload={"rules": len(tss.rules), "templates": len(tss.templates)})
