"""Frozen expected values, written out by hand in the corpus encoding.

MicroCHOCS notation maps onto the corpus signature as c!x.p = snd(x, p),
c?b.p = rcv(b, p), p + q = plus(p, q), p | q = par(p, q), tau.p = tau(p)
and the silent label is nil.
"""

STRAT_EXAMPLE_STYPES = {
    "L": "⟨g(l1), ∅⟩",
    "R1": "⟨f(x), {g(x) ↦ {(l1, x)}}⟩",
}

MICROCHOCS_STYPES = {
    "microchocs_subst": [
        "⟨(a, z), ∅⟩",
        "⟨(b0, z), ∅⟩",
        "⟨(snd(x0, x1), z), {(x0, z) ↦ {y0}, (x1, z) ↦ {y1}}⟩",
        "⟨(rcv(w, x), z), {(x, z) ↦ {y}}⟩",
        "⟨(plus(x0, x1), z), {(x0, z) ↦ {y0}, (x1, z) ↦ {y1}}⟩",
        "⟨(par(x0, x1), z), {(x0, z) ↦ {y0}, (x1, z) ↦ {y1}}⟩",
    ],
    "microchocs_send": [
        "⟨snd(x0, x1), ∅⟩",
        "⟨plus(x0, x1), {x0 ↦ {(z, y0)}, x1 ↦ ∅}⟩",
        "⟨plus(x0, x1), {x0 ↦ ∅, x1 ↦ {(z, y1)}}⟩",
        "⟨par(x0, x1), {x0 ↦ {(z, y0)}, x1 ↦ ∅}⟩",
        "⟨par(x0, x1), {x0 ↦ ∅, x1 ↦ {(z, y1)}}⟩",
    ],
    "microchocs_receive": [
        "⟨(rcv(w, x1), z), ∅⟩",
        "⟨(plus(x0, x1), z), {(x0, z) ↦ {y0}, (x1, z) ↦ ∅}⟩",
        "⟨(plus(x0, x1), z), {(x0, z) ↦ ∅, (x1, z) ↦ {y1}}⟩",
        "⟨(par(x0, x1), z), {(x0, z) ↦ {y0}, (x1, z) ↦ ∅}⟩",
        "⟨(par(x0, x1), z), {(x0, z) ↦ ∅, (x1, z) ↦ {y1}}⟩",
    ],
    "microchocs_tau": [
        "⟨par(x0, x1), {x0 ↦ ∅, x1 ↦ ∅}⟩",
        "⟨tau(x), ∅⟩",
        "⟨plus(x0, x1), {x0 ↦ {(nil, y0)}, x1 ↦ ∅}⟩",
        "⟨plus(x0, x1), {x0 ↦ ∅, x1 ↦ {(nil, y1)}}⟩",
        "⟨par(x0, x1), {x0 ↦ {(nil, y0)}, x1 ↦ ∅}⟩",
        "⟨par(x0, x1), {x0 ↦ ∅, x1 ↦ {(nil, y1)}}⟩",
    ],
}

MICROCHOCS_VERDICTS = {
    "microchocs_subst": ("d4.id", "Ssub", "image finite"),
    "microchocs_send": ("d1.id", "Ssnd", "finitely branching"),
    "microchocs_receive": ("d4.id", "Srcv", "image finite"),
    "microchocs_tau": ("d1.id", "Stau", "finitely branching"),
}

# (example, eta block, measure, legacy outcome, new outcome, failing part of the new check)
COMPARISON = [
    ("infinite_premises", "E", "S0", "pass", "pass", None),
    ("restricted_support", "E", "S0", "fail", "pass", None),
    ("premise_targets", "E", "S0", "fail", "pass", None),
    ("ex5_uniform_targets", "E", "U", None, "fail", "uniform-premise-targets"),
    ("ex5_uniform_targets_renamed", "E", "U", None, "fail", "finitely-inhabited"),
]

# the twelve cover edges, upper implies lower
COVER = [
    ("i", "vii"), ("vii", "vi"), ("i", "xii"), ("xii", "iv"),
    ("iii", "x"), ("x", "iv"), ("iii", "ix"), ("ix", "v"),
    ("ii", "viii"), ("viii", "vi"), ("ii", "xi"), ("xi", "v"),
]

# implication matrix rows in property order i..xii, worked out by hand from COVER
MATRIX = {
    "i":    "i vii vi xii iv",
    "ii":   "ii viii vi xi v",
    "iii":  "iii x iv ix v",
    "iv":   "iv",
    "v":    "v",
    "vi":   "vi",
    "vii":  "vii vi",
    "viii": "viii vi",
    "ix":   "ix v",
    "x":    "x iv",
    "xi":   "xi v",
    "xii":  "xii iv",
}
