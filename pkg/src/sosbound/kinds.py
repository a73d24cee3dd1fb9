"""Dyadic kinds and the twelve bounded-nondeterminism properties they name."""
from __future__ import annotations

from dataclasses import dataclass

PROJECTIONS = ("id", "p1", "p2")


@dataclass(frozen=True, slots=True)
class DyadicKind:
    """Selector ``D_k`` (``prj == "id"``) or a projection ``D_k^pi1/pi2`` (k <= 3)."""

    k: int
    prj: str = "id"

    def __post_init__(self):
        if self.k not in range(1, 7):
            raise ValueError(f"dyadic kind index must be 1..6, got {self.k}")
        if self.prj not in PROJECTIONS:
            raise ValueError(f"unknown projection {self.prj!r}")
        if self.prj != "id" and self.k > 3:
            raise ValueError(f"projections exist only for k in 1..3, got d{self.k}.{self.prj}")

    @classmethod
    def parse(cls, text: str) -> "DyadicKind":
        t = text.strip().lower()
        try:
            head, prj = t.split(".")
            if not head.startswith("d"):
                raise ValueError
            return cls(int(head[1:]), prj)
        except ValueError:
            raise ValueError(f"bad dyadic kind {text!r}; expected e.g. d1.id or d3.p2") from None

    def __str__(self):
        return f"d{self.k}.{self.prj}"

    @property
    def is_projection(self) -> bool:
        return self.prj != "id"

    @property
    def pair_target(self) -> bool:
        return self.prj == "id" and self.k <= 3

    @property
    def pair_source(self) -> bool:
        return self.k >= 4

    @property
    def arrow(self) -> str:
        return {1: "->", 2: "<-", 3: "^", 4: "->", 5: "<-", 6: "v"}[self.k]

    @property
    def property_id(self) -> str:
        return KIND_TO_PROPERTY[str(self)]

    @property
    def property_name(self) -> str:
        return PROPERTY_NAMES[self.property_id]


ALL_KINDS = tuple(DyadicKind(k) for k in range(1, 7)) + tuple(
    DyadicKind(k, p) for k in (1, 2, 3) for p in ("p1", "p2"))

PROPERTY_IDS = ("i", "ii", "iii", "iv", "v", "vi",
                "vii", "viii", "ix", "x", "xi", "xii")

KIND_TO_PROPERTY = {
    "d1.id": "i", "d2.id": "ii", "d3.id": "iii",
    "d4.id": "iv", "d5.id": "v", "d6.id": "vi",
    "d1.p1": "vii", "d2.p1": "viii", "d3.p1": "ix",
    "d3.p2": "x", "d2.p2": "xi", "d1.p2": "xii",
}
PROPERTY_TO_KIND = {v: DyadicKind.parse(k) for k, v in KIND_TO_PROPERTY.items()}

PROPERTY_NAMES = {
    "i": "finitely branching",
    "ii": "finite folding",
    "iii": "finite bundling",
    "iv": "image finite",
    "v": "source finite",
    "vi": "label finite",
    "vii": "initials finite",
    "viii": "finals finite",
    "ix": "heads finite",
    "x": "tails finite",
    "xi": "antecedents finite",
    "xii": "consequents finite",
}


def parse_property(text: str) -> str:
    t = text.strip().strip("()").lower()
    if t not in PROPERTY_IDS:
        raise ValueError(f"unknown property {text!r}; expected one of i..xii")
    return t
