"""Registry of worked examples with golden outputs.

Each example is ``corpus/<name>.tss`` plus ``corpus/<name>.expected``.  The
registry below lists the commands run on every file and the outcome each
must have; the ``.expected`` file freezes the structured output of those
commands so that any behavioural change shows up as a diff.
"""
from __future__ import annotations

import contextlib
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .syntax import SpecFile, parse_spec_file
from .verdict import EXIT_CODES

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"

PASS, FAIL = "pass", "fail"


def _check(kind, strat, outcome, *extra):
    return (("check", "{file}", "--kind", kind, "--strat", strat) + extra, outcome)


def _legacy(eta, strat, outcome):
    return (("legacy", "{file}", "--eta", eta, "--strat", strat), outcome)


def _derive(*extra):
    return (("derive", "{file}") + extra, PASS)


# name -> (origin, runs); the first run is the headline verdict
REGISTRY: Dict[str, Tuple[str, List[Tuple[Tuple[str, ...], str]]]] = {
    "ex6_stratification": (
        "partial strict stratification example; R(i) for i >= 2 are junk",
        [_check("d1.id", "S0", PASS), _derive()]),
    "sigma0_axiom_fx": (
        "axiom f(x) -y-> f(x) over f, g and labels l(i): infinitely branching",
        [_check("d1.id", "S0", FAIL)]),
    "projection_r1": (
        "projecting away targets proves f(c) -> a although f(c) has no transition",
        [_derive()]),
    "projection_r2": (
        "projecting away labels proves f(c) -> f(c) although f(c) has no transition",
        [_derive()]),
    "infinite_premises": (
        "rules with infinitely many premises, all junk",
        [_check("d1.id", "S0", PASS), _legacy("E", "S0", PASS)]),
    "restricted_support": (
        "junk instances g^i(x) premises; only a restricted support separates them",
        [_check("d1.id", "S0", PASS), _legacy("E", "S0", FAIL)]),
    "premise_targets": (
        "instances differing only in premise targets",
        [_check("d1.id", "S0", PASS), _legacy("E", "S0", FAIL)]),
    "ex5_uniform_targets": (
        "premise targets y(i) renamed per instance: not finitely branching",
        [_check("d1.id", "U", FAIL), _legacy("E", "U", FAIL)]),
    "ex5_uniform_targets_renamed": (
        "the same system with a single premise-target variable",
        [_check("d1.id", "U", FAIL)]),
    "infinite_support": (
        "each instance inspects its own premise source: infinite support",
        [_check("d1.id", "S0", FAIL)]),
    "ccs_choice": (
        "CCS prefix and choice over infinitely many actions",
        [_check("d1.id", "S0", PASS), _legacy("E", "S0", PASS)]),
    "const_label_axiom": (
        "axiom c -y-> c: infinitely branching yet image finite",
        [_check("d1.id", "S1", FAIL), _check("d4.id", "S4", PASS)]),
    "const_target_axiom": (
        "axiom c -c-> y: infinitely branching yet initials finite",
        [_check("d1.id", "S1", FAIL), _check("d1.p1", "S1", PASS)]),
    "bn_too_strict": (
        "finitely branching system rejected because a premise looks ahead",
        [_check("d1.id", "S0", FAIL)]),
    "no_stratification": (
        "all rules junk but no partial strict stratification exists",
        [_check("d1.id", "S0", FAIL)]),
    "microchocs_subst": (
        "MicroCHOCS substitution sub-system: image finite",
        [_check("d4.id", "Ssub", PASS)]),
    "microchocs_send": (
        "MicroCHOCS send sub-system: finitely branching",
        [_check("d1.id", "Ssnd", PASS)]),
    "microchocs_receive": (
        "MicroCHOCS receive sub-system with the substitution premise dropped: image finite",
        [_check("d4.id", "Srcv", PASS)]),
    "microchocs_tau": (
        "MicroCHOCS silent sub-system with communication replaced by an axiom: finitely branching",
        [_check("d1.id", "Stau", PASS)]),
    "microchocs_full": (
        "all MicroCHOCS classes together; the process c!a.0 | c?a.a communicates",
        [_derive("--height", "2", "--labels", "1", "--origin", "par(snd(a, nil), rcv(a, a))")]),
}


@dataclass(frozen=True)
class Run:
    argv: Tuple[str, ...]
    outcome: str

    def resolved(self, path: Path) -> List[str]:
        return [str(path) if a == "{file}" else a for a in self.argv]


@dataclass(frozen=True)
class ExampleCase:
    name: str
    spec_file: Path
    spec: SpecFile
    kind: Optional[str]
    measure: Optional[str]
    expected: str
    origin: str
    runs: Tuple[Run, ...]

    @property
    def expected_file(self) -> Path:
        return self.spec_file.with_suffix(".expected")

    def golden(self) -> List[dict]:
        with open(self.expected_file, encoding="utf-8") as fh:
            return json.load(fh)["runs"]


def names() -> List[str]:
    return list(REGISTRY)


def load_example(name: str) -> ExampleCase:
    if name not in REGISTRY:
        raise KeyError(f"unknown example {name!r}")
    origin, raw = REGISTRY[name]
    path = CORPUS_DIR / f"{name}.tss"
    runs = tuple(Run(argv, outcome) for argv, outcome in raw)
    head = runs[0].argv
    opt = lambda flag: head[head.index(flag) + 1] if flag in head else None
    return ExampleCase(name, path, parse_spec_file(path), opt("--kind"), opt("--strat"),
                       runs[0].outcome, origin, runs)


def execute(case: ExampleCase, run: Run) -> Tuple[int, object]:
    """Run one registered command with JSON output; returns (exit code, document)."""
    from .cli import run_command

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run_command(["--format", "json"] + run.resolved(case.spec_file))
    if code == 3:
        raise RuntimeError(f"{case.name}: {err.getvalue().strip()}")
    return code, json.loads(out.getvalue())


def regenerate(name: str) -> None:
    """Rewrite the golden file after checking every run has its registered outcome."""
    case = load_example(name)
    docs = []
    for run in case.runs:
        code, doc = execute(case, run)
        if code != EXIT_CODES[run.outcome]:
            raise AssertionError(f"{name}: {' '.join(run.argv)} exited {code}, "
                                 f"registered outcome is {run.outcome}")
        docs.append({"argv": list(run.argv), "exit": code, "output": doc})
    with open(case.expected_file, "w", encoding="utf-8") as fh:
        json.dump({"origin": case.origin, "runs": docs}, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


if __name__ == "__main__":
    import sys

    for n in sys.argv[1:] or names():
        regenerate(n)
        print(f"wrote {n}.expected")
