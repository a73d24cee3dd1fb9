"""Bounded-nondeterminism rule formats for transition system specifications.

Checks whether a TSS, read through one of the dyadic transformations,
satisfies a rule format that guarantees a finiteness property of the
induced transition system, and derives bounded fragments of that system
for testing.
"""
from .terms import (App, Fam, Idx, IVar, Pow, Signature, Symbol, Var, alpha_variant,
                    enumerate_closed_terms, match, pair, signature, unify)
from .kinds import ALL_KINDS, DyadicKind
from .tss import TSS, DyadicFormula, Formula, PremiseFamily, Rule, RuleTemplate
from .verdict import Verdict, Witness
from .dyadic import inverse_tss, transform_tss
from .stratification import StratMeasure, check_strat_conditions, detect_junk_rules, eval_measure
from .stypes import SType, check_rule_format, compute_stypes, legacy_eta_check
from .engine import LTS, branching_profile, derive_lts
from .lattice import equivalence_class, property_implies
from .syntax import ParseError, SpecFile, parse_spec, parse_spec_file, render_spec

__version__ = "0.1.0"

__all__ = [
    "App", "Fam", "Idx", "IVar", "Pow", "Signature", "Symbol", "Var", "alpha_variant",
    "enumerate_closed_terms", "match", "pair", "signature", "unify",
    "ALL_KINDS", "DyadicKind",
    "TSS", "DyadicFormula", "Formula", "PremiseFamily", "Rule", "RuleTemplate",
    "Verdict", "Witness",
    "inverse_tss", "transform_tss",
    "StratMeasure", "check_strat_conditions", "detect_junk_rules", "eval_measure",
    "SType", "check_rule_format", "compute_stypes", "legacy_eta_check",
    "LTS", "branching_profile", "derive_lts",
    "equivalence_class", "property_implies",
    "ParseError", "SpecFile", "parse_spec", "parse_spec_file", "render_spec",
]
