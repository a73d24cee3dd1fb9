"""Structured outcomes shared by every check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


@dataclass(frozen=True)
class Witness:
    rule: Optional[str]
    terms: Tuple[str, ...]
    message: str

    def to_dict(self):
        return {"rule": self.rule, "terms": list(self.terms), "message": self.message}

    def __str__(self):
        where = f"[{self.rule}] " if self.rule else ""
        terms = f" ({', '.join(self.terms)})" if self.terms else ""
        return f"{where}{self.message}{terms}"


@dataclass
class Verdict:
    check: str
    outcome: str
    witnesses: List[Witness] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)
    parts: List["Verdict"] = field(default_factory=list)
    summary: str = ""

    def __post_init__(self):
        if self.outcome not in EXIT_CODES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome != PASS and not self.witnesses:
            raise ValueError(f"{self.check}: a {self.outcome} verdict needs a witness or reason")

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def part(self, check: str) -> Optional["Verdict"]:
        for p in self.parts:
            if p.check == check:
                return p
        return None

    def to_dict(self) -> Dict[str, Any]:
        out = {"check": self.check, "outcome": self.outcome}
        if self.summary:
            out["summary"] = self.summary
        out["witnesses"] = [w.to_dict() for w in self.witnesses]
        if self.payload:
            out["payload"] = self.payload
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.check}: {self.outcome.upper()}"
        if self.summary:
            head += f" - {self.summary}"
        lines = [head]
        for w in self.witnesses:
            lines.append(f"{pad}  * {w}")
        for p in self.parts:
            lines.append(p.render(indent + 1))
        return "\n".join(lines)


def combine(outcomes) -> str:
    """Fail dominates inconclusive, which dominates pass."""
    outcomes = list(outcomes)
    if FAIL in outcomes:
        return FAIL
    if INCONCLUSIVE in outcomes:
        return INCONCLUSIVE
    return PASS


def verdict(check: str, witnesses: List[Witness], payload=None, inconclusive=None,
            summary: str = "") -> Verdict:
    """Pass when there are no witnesses; ``inconclusive`` reasons only matter otherwise."""
    if witnesses:
        return Verdict(check, FAIL, witnesses, payload or {}, summary=summary)
    if inconclusive:
        return Verdict(check, INCONCLUSIVE, inconclusive, payload or {}, summary=summary)
    return Verdict(check, PASS, [], payload or {}, summary=summary)
