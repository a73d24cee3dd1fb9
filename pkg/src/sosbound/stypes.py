"""S-types, uniformity, the bounded-nondeterminism format and the rule-format verdict."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .dyadic import transform_tss
from .kinds import DyadicKind
from .stratification import (Satisfier, StratMeasure, SupportMap, analysis_instances,
                             check_strat_conditions, detect_junk_rules, restricted_support)
from .terms import Term, alpha_variant, term_key, variables
from .tss import TSS, PremiseFamily, Rule, validate_tss
from .verdict import FAIL, PASS, Verdict, Witness, combine, verdict


@dataclass(frozen=True)
class SType:
    """``<source, psi>`` with ``psi`` listed in support order."""

    source: Term
    psi: Tuple[Tuple[Term, frozenset], ...] = ()

    @classmethod
    def of(cls, source: Term, psi: Mapping[Term, Sequence[Term]]) -> "SType":
        return cls(source, tuple(sorted(((v, frozenset(ws)) for v, ws in psi.items()),
                                        key=lambda e: term_key(e[0]))))

    def as_dict(self) -> Dict[Term, frozenset]:
        return dict(self.psi)

    def __eq__(self, other):
        if not isinstance(other, SType):
            return NotImplemented
        return self.source == other.source and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash((self.source, frozenset(self.psi)))

    def __str__(self):
        if not self.psi:
            return f"⟨{self.source}, ∅⟩"
        parts = []
        for v, ws in self.psi:
            body = ", ".join(str(w) for w in sorted(ws, key=term_key))
            parts.append(f"{v} ↦ {{{body}}}" if ws else f"{v} ↦ ∅")
        return f"⟨{self.source}, {{{', '.join(parts)}}}⟩"


SOURCE_OUTSIDE_SUPPORT = "source-outside-support"
INFINITE_PSI = "infinite-psi"
INFINITE_SUPPORT = "infinite-support"


def compute_stype(rule: Rule, eta: SupportMap) -> Tuple[Optional[SType], str]:
    """The rule's S-type, or ``None`` with the reason it has none."""
    s = rule.source
    if s in eta.infinite:
        return None, INFINITE_SUPPORT
    support = eta[s]
    psi: Dict[Term, set] = {v: set() for v in support}
    for p in rule.premises:
        if isinstance(p, PremiseFamily):
            if p.formula.source not in psi:
                return None, SOURCE_OUTSIDE_SUPPORT
            return None, INFINITE_PSI
        if p.source not in psi:
            return None, SOURCE_OUTSIDE_SUPPORT
        psi[p.source].add(p.target)
    return SType.of(s, psi), ""


@dataclass
class STypeRow:
    rule: str
    template: Optional[str]
    index: Optional[int]
    stype: Optional[SType]
    reason: str = ""


@dataclass
class STypeTable:
    rows: List[STypeRow] = field(default_factory=list)
    thresholds: Dict[str, int] = field(default_factory=dict)

    def get(self, rule_name: str) -> Optional[SType]:
        for r in self.rows:
            if r.rule == rule_name:
                return r.stype
        raise KeyError(rule_name)

    def valid(self) -> Dict[str, SType]:
        return {r.rule: r.stype for r in self.rows if r.stype is not None}

    def to_list(self):
        return [{"rule": r.rule, "stype": str(r.stype) if r.stype else None,
                 **({"reason": r.reason} if r.reason else {})} for r in self.rows]


def compute_stypes(tss: TSS, eta: SupportMap, S: Optional[StratMeasure] = None) -> STypeTable:
    """S-types of plain rules and of every analysed template instance."""
    rules, tails = analysis_instances(tss, S)
    origin = {}
    for tpl in tss.templates:
        for i in range(tpl.lower, tails[tpl.name] + 3):
            origin[f"{tpl.name}{i}"] = (tpl.name, i)
    table = STypeTable(thresholds=tails)
    for r in rules:
        st, why = compute_stype(r, eta)
        tpl, i = origin.get(r.name, (None, None))
        table.rows.append(STypeRow(r.name, tpl, i, st, why))
    return table


# ---------------------------------------------------------------------------
# uniformity

def check_uniformity(tss: TSS, mode: str = "sources", S: Optional[StratMeasure] = None) -> Verdict:
    """Alpha-variant but different sources (or premise targets with a shared source) fail."""
    if mode not in ("sources", "premise_targets"):
        raise ValueError("mode must be 'sources' or 'premise_targets'")
    rules, _ = analysis_instances(tss, S)
    witnesses = []
    if mode == "sources":
        seen: List[Tuple[Term, str]] = []
        for r in rules:
            s = r.source
            for t, owner in seen:
                if t != s and alpha_variant(t, s):
                    witnesses.append(Witness(f"{owner}/{r.name}", (str(t), str(s)),
                                             "sources differ only in variable names"))
                    break
            if all(t != s for t, _ in seen):
                seen.append((s, r.name))
    else:
        groups: Dict[Term, List[Tuple[Term, str]]] = {}
        for r in rules:
            for p in r.premises:
                f = p.formula if isinstance(p, PremiseFamily) else p
                groups.setdefault(f.source, [])
                known = groups[f.source]
                clash = next(((w, o) for w, o in known if w != f.target and alpha_variant(w, f.target)), None)
                if clash:
                    witnesses.append(Witness(f"{clash[1]}/{r.name}", (str(f.source), str(clash[0]), str(f.target)),
                                             "premise targets for one source differ only in variable names"))
                if all(w != f.target for w, _ in known):
                    known.append((f.target, r.name))
    name = "uniform-sources" if mode == "sources" else "uniform-premise-targets"
    return verdict(name, witnesses[:25])


# ---------------------------------------------------------------------------
# bounded-nondeterminism format

def _rule_bodies(tss: TSS) -> List[Rule]:
    return list(tss.rules) + [t.body for t in tss.templates]


def check_bn_format(tss: TSS) -> Verdict:
    """(i) premise-source variables occur in the source; (ii) target variables are covered."""
    witnesses = []
    for r in _rule_bodies(tss):
        src = variables(r.source)
        covered = set(src)
        for n, p in enumerate(r.premises, 1):
            f = p.formula if isinstance(p, PremiseFamily) else p
            extra = variables(f.source) - src
            if extra:
                witnesses.append(Witness(r.name, tuple(sorted(extra)),
                                         f"(i) premise {n} source uses variables absent from the source"))
            covered |= variables(f.target)
        extra = variables(r.conclusion.target) - covered
        if extra:
            witnesses.append(Witness(r.name, tuple(sorted(extra)),
                                     "(ii) target uses variables absent from the source and premise targets"))
    return verdict("bn-format", witnesses)


# ---------------------------------------------------------------------------
# finite inhabitation

def classify_tail(probes: Sequence[Optional[object]]) -> str:
    """``vacuous``, ``constant``, ``injective`` or ``mixed`` for the types at N, N+1, N+2."""
    if all(p is None for p in probes):
        return "vacuous"
    if any(p is None for p in probes):
        return "mixed"
    if probes[0] == probes[1] == probes[2]:
        return "constant"
    if len(set(probes)) == len(probes):
        return "injective"
    return "mixed"


def _inhabitation(check: str, table: STypeTable, tss: TSS) -> Verdict:
    witnesses, unsure = [], []
    tails = {}
    for tpl in tss.templates:
        N = table.thresholds[tpl.name]
        probes = [table.get(f"{tpl.name}{i}") for i in (N, N + 1, N + 2)]
        kind = classify_tail(probes)
        tails[tpl.name] = kind
        if kind == "constant":
            witnesses.append(Witness(tpl.name, (str(probes[0]),),
                                     f"every instance from index {N} on has this type: infinitely inhabited"))
        elif kind == "mixed":
            unsure.append(Witness(tpl.name, tuple(str(p) for p in probes),
                                  "index dependence defeats the injective/constant classification"))
    groups: Dict[object, List[str]] = {}
    for row in table.rows:
        if row.stype is not None:
            groups.setdefault(row.stype, []).append(row.rule)
    payload = {"tails": tails, "largest_group": max((len(g) for g in groups.values()), default=0)}
    return verdict(check, witnesses, payload, unsure)


def check_finitely_inhabited(tss: TSS, stypes: STypeTable) -> Verdict:
    """Finitely many rules only ever share an S-type; templates decide by their tail."""
    return _inhabitation("finitely-inhabited", stypes, tss)


# ---------------------------------------------------------------------------
# the whole pipeline

def check_rule_format(tss: TSS, kind: DyadicKind, S: StratMeasure, bounds=(3, 3)) -> Verdict:
    """Transform, then run every condition of the rule format for ``kind``."""
    h, b = bounds[0], bounds[1]
    parts: List[Verdict] = []
    valid = validate_tss(tss)
    if not valid.passed:
        return Verdict("rule-format", FAIL, valid.witnesses, {"kind": str(kind)}, [valid],
                       summary="the TSS is malformed")
    dyadic = tss if tss.is_dyadic else transform_tss(tss, kind)
    if dyadic.kind != kind:
        raise ValueError(f"TSS is {dyadic.kind}-dyadic, not {kind}")

    strat = check_strat_conditions(dyadic, S, h, b)
    parts.append(strat)
    payload: Dict[str, object] = {"kind": str(kind), "property": kind.property_name, "measure": S.name}
    if strat.passed:
        sat = Satisfier(S, dyadic.signature, h, b)
        junk = detect_junk_rules(dyadic, S, (h, b), sat)
        payload["junk"] = junk.describe()
        eta = restricted_support(dyadic, S, (h, b), sat)
        payload["support"] = eta.to_dict()
        support_w = [Witness(r, (str(s),), "support is infinite") for s, r in eta.infinite.items()]
        support_u = [Witness(r, (str(v),), "satisfiability of the premise source undecided")
                     for r, v in eta.undecided]
        parts.append(verdict("support", support_w, {"support": eta.to_dict()}, support_u))
        table = compute_stypes(dyadic, eta, S)
        payload["stypes"] = table.to_list()
        parts.append(check_finitely_inhabited(dyadic, table))
    parts.append(check_uniformity(dyadic, "sources", S))
    parts.append(check_uniformity(dyadic, "premise_targets", S))
    parts.append(check_bn_format(dyadic))

    outcome = combine(p.outcome for p in parts)
    failing = [p for p in parts if p.outcome != PASS]
    witnesses = [Witness(None, (), f"{p.check}: {p.outcome}") for p in failing]
    if outcome == PASS:
        summary = f"{kind.property_name} (the TSS is {kind}-finite)"
    elif outcome == FAIL:
        summary = f"not in the rule format for {kind.property_name}"
    else:
        summary = f"undecided for {kind.property_name}"
    return Verdict("rule-format", outcome, witnesses, payload, parts, summary)


# ---------------------------------------------------------------------------
# legacy eta-types (ground labels, user-supplied support)

@dataclass(frozen=True)
class EtaType:
    source: Term
    psi: Tuple[Tuple[Term, frozenset], ...]

    def __str__(self):
        if not self.psi:
            return f"⟨{self.source}, ∅⟩"
        parts = []
        for v, ls in self.psi:
            body = ", ".join(str(l) for l in sorted(ls, key=term_key))
            parts.append(f"{v} ↦ {{{body}}}" if ls else f"{v} ↦ ∅")
        return f"⟨{self.source}, {{{', '.join(parts)}}}⟩"


def eta_type(rule: Rule, eta: Mapping[Term, Sequence[Term]]) -> Optional[EtaType]:
    """Label-set valued type; premises whose source is outside the support are ignored."""
    s = rule.source
    support = list(eta.get(s, ()))
    psi: Dict[Term, set] = {u: set() for u in support}
    for p in rule.premises:
        f = p.formula if isinstance(p, PremiseFamily) else p
        if f.source not in psi:
            continue
        if isinstance(p, PremiseFamily):
            return None
        psi[f.source].add(f.label)
    return EtaType(s, tuple(sorted(((u, frozenset(ls)) for u, ls in psi.items()),
                                   key=lambda e: term_key(e[0]))))


def legacy_eta_check(tss: TSS, eta: Mapping[Term, Sequence[Term]], S: StratMeasure,
                     bounds=(3, 3)) -> Verdict:
    """Baseline format with ground labels and a user-given support map."""
    if tss.is_dyadic:
        raise ValueError("the legacy check takes a triadic TSS")
    for s, image in eta.items():
        if not isinstance(image, (list, tuple, set, frozenset)):
            raise ValueError(f"support of {s} must be a finite collection")
    rules, tails = analysis_instances(tss, S)
    for r in rules:
        for f in r.formulas():
            if variables(f.label):
                raise ValueError(f"rule {r.name} has a non-ground label {f.label}")
    parts = []
    parts.append(check_strat_conditions(transform_tss(tss, DyadicKind(1)), S, *bounds))
    parts.append(check_uniformity(tss, "sources", S))
    table = STypeTable(thresholds=tails)
    origin = {f"{t.name}{i}": (t.name, i) for t in tss.templates
              for i in range(t.lower, tails[t.name] + 3)}
    for r in rules:
        et = eta_type(r, eta)
        tpl, i = origin.get(r.name, (None, None))
        table.rows.append(STypeRow(r.name, tpl, i, et, "" if et else INFINITE_PSI))
    inh = _inhabitation("eta-types-finitely-inhabited", table, tss)
    inh.payload["eta_types"] = table.to_list()
    parts.append(inh)
    outcome = combine(p.outcome for p in parts)
    witnesses = [Witness(None, (), f"{p.check}: {p.outcome}") for p in parts if p.outcome != PASS]
    summary = "meets the legacy format" if outcome == PASS else "outside the legacy format"
    return Verdict("legacy-format", outcome, witnesses, {"measure": S.name}, parts, summary)
