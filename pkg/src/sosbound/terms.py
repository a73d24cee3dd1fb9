"""First-order terms, substitutions, matching and unification.

Terms are immutable values built from three node types:

* ``Var(name)`` -- a variable,
* ``App(head, args)`` -- a function symbol applied to arguments (constants
  have no arguments),
* ``Fam(family, index)`` -- a member of an indexed constant family such as
  ``l0, l1, ...``.

Template bodies additionally use ``Idx`` (an affine index expression
``i + c``), ``Pow`` (an iterated unary symbol ``g^i(t)``) and ``IVar`` (an
index-dependent variable name ``y(i)``).  Those only survive until a template
is instantiated; every analysis works on plain terms.

Pairs ``(t, u)`` produced by the dyadic transformations are ordinary
applications of the reserved symbol :data:`PAIR`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

PAIR = ","


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    head: str
    args: tuple = ()
    # structural hash, computed once; terms are hashed constantly by the engine
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.head, self.args))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        if self.head == PAIR:
            return "(" + ", ".join(map(str, self.args)) + ")"
        if not self.args:
            return self.head
        return f"{self.head}({', '.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class Idx:
    """Affine index expression ``var + offset``."""

    var: str
    offset: int = 0

    def eval(self, env: Dict[str, int]) -> int:
        return env[self.var] + self.offset

    def __str__(self):
        if self.offset == 0:
            return self.var
        sign = "+" if self.offset > 0 else "-"
        return f"{self.var}{sign}{abs(self.offset)}"


@dataclass(frozen=True, slots=True)
class Fam:
    """Indexed family member.

    ``index`` is an ``int`` for a concrete member, an :class:`Idx` inside
    template bodies, or a ``str`` naming an index pattern variable (used by
    measure clauses to match any member of the family).
    """

    family: str
    index: Union[int, Idx, str]

    def __str__(self):
        if isinstance(self.index, int):
            if self.index < 0:
                return f"{self.family}(other)"
            return f"{self.family}{self.index}"
        if isinstance(self.index, str):
            return f"{self.family}(_)"
        return f"{self.family}({self.index})"


@dataclass(frozen=True, slots=True)
class Pow:
    """``head`` applied ``exp`` times to ``arg`` (template bodies only)."""

    head: str
    exp: Idx
    arg: "Term"

    def __str__(self):
        e = str(self.exp)
        if self.exp.offset:
            e = f"({e})"
        return f"{self.head}^{e}({self.arg})"


@dataclass(frozen=True, slots=True)
class IVar:
    """Variable whose name depends on a template index, e.g. ``y(i)``."""

    name: str
    idx: Idx

    def __str__(self):
        return f"{self.name}({self.idx})"


Term = Union[Var, App, Fam, Pow, IVar]
Substitution = Dict[str, Term]


def pair(a: Term, b: Term) -> App:
    return App(PAIR, (a, b))


def is_pair(t: Term) -> bool:
    return type(t) is App and t.head == PAIR


# ---------------------------------------------------------------------------
# signatures

@dataclass(frozen=True, slots=True)
class Symbol:
    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name}")


@dataclass(frozen=True)
class Signature:
    symbols: Tuple[Symbol, ...] = ()
    family: Optional[str] = None

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate symbols in signature: {dup}")
        if self.family is not None and self.family in names:
            raise ValueError(f"family name {self.family!r} collides with a symbol")
        if PAIR in names:
            raise ValueError("the pair symbol is reserved")

    @property
    def arities(self) -> Dict[str, int]:
        return {s.name: s.arity for s in self.symbols}

    def arity(self, name: str) -> Optional[int]:
        for s in self.symbols:
            if s.name == name:
                return s.arity
        return None

    def constants(self) -> List[str]:
        return sorted(s.name for s in self.symbols if s.arity == 0)

    def functions(self) -> List[Symbol]:
        return sorted((s for s in self.symbols if s.arity > 0),
                      key=lambda s: (s.name, s.arity))

    def extend(self, *symbols: Symbol, family: Optional[str] = None) -> "Signature":
        return Signature(self.symbols + tuple(symbols), family or self.family)


def signature(arities: Dict[str, int], family: Optional[str] = None) -> Signature:
    return Signature(tuple(Symbol(n, a) for n, a in arities.items()), family)


# ---------------------------------------------------------------------------
# inspection

def variables(t: Term) -> set:
    out = set()
    _collect_vars(t, out)
    return out


def _collect_vars(t, out):
    tp = type(t)
    if tp is Var:
        out.add(t.name)
    elif tp is App:
        for a in t.args:
            _collect_vars(a, out)
    elif tp is Pow:
        _collect_vars(t.arg, out)
    elif tp is IVar:
        out.add(str(t))


def var_list(t: Term) -> List[str]:
    """Variables in order of first (left-most) occurrence."""
    seen: Dict[str, None] = {}

    def go(u):
        tp = type(u)
        if tp is Var:
            seen.setdefault(u.name)
        elif tp is App:
            for a in u.args:
                go(a)
        elif tp is Pow:
            go(u.arg)

    go(t)
    return list(seen)


def is_closed(t: Term) -> bool:
    tp = type(t)
    if tp is Var or tp is IVar:
        return False
    if tp is App:
        return all(is_closed(a) for a in t.args)
    if tp is Fam:
        return isinstance(t.index, int)
    return False


def height(t: Term) -> int:
    """Nesting depth; constants, family members and variables have height 0."""
    if type(t) is App and t.args:
        return 1 + max(height(a) for a in t.args)
    return 0


def size(t: Term) -> int:
    if type(t) is App:
        return 1 + sum(size(a) for a in t.args)
    return 1


def max_index(t: Term) -> int:
    """Largest concrete family index in ``t`` (-1 when there is none)."""
    tp = type(t)
    if tp is Fam:
        return t.index if isinstance(t.index, int) else -1
    if tp is App:
        return max((max_index(a) for a in t.args), default=-1)
    return -1


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if type(t) is App:
        for a in t.args:
            yield from subterms(a)


def components(t: Term) -> List[Term]:
    """Split (nested) pairs into their non-pair components."""
    if is_pair(t):
        out = []
        for a in t.args:
            out.extend(components(a))
        return out
    return [t]


@lru_cache(maxsize=1 << 16)
def in_universe(t: Term, max_height: int, label_bound: int) -> bool:
    """Whether every pair component of ``t`` is a closed term of the bounded universe."""
    for c in components(t):
        if not is_closed(c) or height(c) > max_height or max_index(c) >= label_bound:
            return False
    return True


def var_height_limits(t: Term, max_height: int, acc: Optional[Dict[str, int]] = None) -> Dict[str, int]:
    """Largest height a variable may take so that ``t`` stays within ``max_height``."""
    acc = {} if acc is None else acc

    def go(u, depth):
        tp = type(u)
        if tp is Var:
            lim = max_height - depth
            acc[u.name] = min(acc.get(u.name, lim), lim)
        elif tp is App:
            if u.head == PAIR:
                for a in u.args:
                    go(a, 0)
            else:
                for a in u.args:
                    go(a, depth + 1)

    go(t, 0)
    return acc


# ---------------------------------------------------------------------------
# ordering

def term_key(t: Term) -> tuple:
    """Deterministic total order: variables first, then symbol name, arity, arguments."""
    tp = type(t)
    if tp is Var:
        return (0, t.name, 0, (), -1)
    if tp is App:
        return (1, t.head, len(t.args), tuple(term_key(a) for a in t.args), -1)
    if tp is Fam:
        i = t.index if isinstance(t.index, int) else -1
        return (1, t.family, 0, (), i)
    return (2, str(t), 0, (), -1)


def sort_terms(ts: Iterable[Term]) -> List[Term]:
    return sorted(ts, key=term_key)


# ---------------------------------------------------------------------------
# substitution

def apply_subst(sigma: Substitution, t: Term) -> Term:
    if not sigma:
        return t
    return _apply(sigma, t)


def _apply(s, t):
    tp = type(t)
    if tp is Var:
        return s.get(t.name, t)
    if tp is App:
        if not t.args:
            return t
        return App(t.head, tuple(_apply(s, a) for a in t.args))
    if tp is Fam and isinstance(t.index, str):
        b = s.get("#" + t.index)
        return Fam(t.family, b.index) if b is not None else t
    return t


def restrict(sigma: Substitution, names: Iterable[str]) -> Substitution:
    names = set(names)
    return {k: v for k, v in sigma.items() if k in names}


def compose(first: Substitution, then: Substitution) -> Substitution:
    """The substitution ``then . first`` (apply ``first``, then ``then``)."""
    out = {k: apply_subst(then, v) for k, v in first.items()}
    for k, v in then.items():
        out.setdefault(k, v)
    return out


def rename(t: Term, mapping: Dict[str, str]) -> Term:
    return apply_subst({k: Var(v) for k, v in mapping.items()}, t)


def rename_apart(t: Term, suffix: str) -> Term:
    """Rename every variable ``x`` of ``t`` to ``x<suffix>``."""
    return rename(t, {v: v + suffix for v in variables(t)})


# ---------------------------------------------------------------------------
# matching

def match(pattern: Term, subject: Term, sigma: Optional[Substitution] = None) -> Optional[Substitution]:
    """Smallest extension of ``sigma`` mapping ``pattern`` onto ``subject``.

    Variables of ``subject`` are treated as rigid constants.  Returns ``None``
    when ``subject`` is not an instance of ``pattern``.
    """
    s = {} if sigma is None else dict(sigma)
    return s if _match(pattern, subject, s) else None


def _match(p, t, s) -> bool:
    tp = type(p)
    if tp is Var:
        b = s.get(p.name)
        if b is None:
            s[p.name] = t
            return True
        return b == t
    if tp is App:
        if type(t) is not App or t.head != p.head or len(t.args) != len(p.args):
            return False
        for a, b in zip(p.args, t.args):
            if not _match(a, b, s):
                return False
        return True
    if tp is Fam:
        if type(t) is not Fam or t.family != p.family:
            return False
        if isinstance(p.index, str):
            key = "#" + p.index
            b = s.get(key)
            if b is None:
                s[key] = t
                return True
            return b.index == t.index
        return p.index == t.index
    raise TypeError(f"cannot match template node {p}")


# ---------------------------------------------------------------------------
# unification

def unify(t: Term, u: Term, sigma: Optional[Substitution] = None) -> Optional[Substitution]:
    """Most general unifier of ``t`` and ``u`` (with occurs check), or ``None``.

    Variables with the same name in ``t`` and ``u`` are the same variable;
    rename apart first when that is not intended.
    """
    s: Substitution = {} if sigma is None else dict(sigma)
    stack = [(t, u)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, s)
        b = _walk(b, s)
        if a == b:
            continue
        ta, tb = type(a), type(b)
        if ta is Var:
            if _occurs(a.name, b, s):
                return None
            s[a.name] = b
        elif tb is Var:
            if _occurs(b.name, a, s):
                return None
            s[b.name] = a
        elif ta is App and tb is App:
            if a.head != b.head or len(a.args) != len(b.args):
                return None
            stack.extend(zip(a.args, b.args))
        elif ta is Fam and tb is Fam:
            if a.family != b.family:
                return None
            ia, ib = a.index, b.index
            if isinstance(ia, str):
                s["#" + ia] = b
            elif isinstance(ib, str):
                s["#" + ib] = a
            elif ia != ib:
                return None
        else:
            return None
    return {k: _resolve(v, s) for k, v in s.items()}


def _walk(t, s):
    while True:
        tp = type(t)
        if tp is Var and t.name in s:
            t = s[t.name]
        elif tp is Fam and isinstance(t.index, str) and "#" + t.index in s:
            t = s["#" + t.index]
        else:
            return t


def _occurs(name, t, s) -> bool:
    t = _walk(t, s)
    if type(t) is Var:
        return t.name == name
    if type(t) is App:
        return any(_occurs(name, a, s) for a in t.args)
    return False


def _resolve(t, s):
    t = _walk(t, s)
    if type(t) is App and t.args:
        return App(t.head, tuple(_resolve(a, s) for a in t.args))
    return t


# ---------------------------------------------------------------------------
# alpha-variance

def alpha_variant(t: Term, u: Term) -> bool:
    """True iff a bijective variable renaming carries ``t`` to ``u``."""
    fwd: Dict[str, str] = {}
    bwd: Dict[str, str] = {}

    def go(a, b) -> bool:
        ta = type(a)
        if ta is not type(b):
            return False
        if ta is Var:
            x, y = a.name, b.name
            if fwd.setdefault(x, y) != y or bwd.setdefault(y, x) != x:
                return False
            return True
        if ta is App:
            return (a.head == b.head and len(a.args) == len(b.args)
                    and all(go(p, q) for p, q in zip(a.args, b.args)))
        return a == b

    return go(t, u)


# ---------------------------------------------------------------------------
# closed-term universes

def enumerate_closed_terms(sig: Signature, max_height: int, label_bound: int,
                           limit: Optional[int] = None) -> List[Term]:
    """All closed terms of height <= ``max_height`` with family indices < ``label_bound``.

    The result is sorted by :func:`term_key`.  ``limit`` guards against
    accidental blow-up: a ``ValueError`` is raised if the universe would be
    larger.
    """
    if sig.family is not None and label_bound < 1:
        raise ValueError("label_bound must be >= 1 for a signature with an indexed family")
    if max_height < 0:
        raise ValueError("max_height must be >= 0")
    levels = _levels(sig, max(label_bound, 0), max_height, limit)
    return list(levels[max_height])


def universe_size(sig: Signature, max_height: int, label_bound: int) -> int:
    """Cardinality of the bounded universe, computed without enumerating it."""
    n0 = len(sig.constants()) + (label_bound if sig.family else 0)
    n = n0
    for _ in range(max_height):
        n = n0 + sum(n ** s.arity for s in sig.functions())
    return n


@lru_cache(maxsize=64)
def _levels(sig: Signature, label_bound: int, max_height: int, limit: Optional[int]):
    base = [App(c) for c in sig.constants()]
    if sig.family:
        base += [Fam(sig.family, i) for i in range(label_bound)]
    if not base:
        raise ValueError("signature has no constants: there are no closed terms")
    base = tuple(sort_terms(base))
    levels = [base]
    for h in range(1, max_height + 1):
        prev = levels[-1]
        if limit is not None and universe_size(sig, h, label_bound) > limit:
            raise ValueError(f"closed-term universe at height {h} exceeds {limit} terms")
        new = list(base)
        for f in sig.functions():
            for args in itertools.product(prev, repeat=f.arity):
                new.append(App(f.name, args))
        levels.append(tuple(sort_terms(new)))
    return levels


def iter_terms_upto(sig: Signature, max_height: int, label_bound: int) -> Tuple[Term, ...]:
    if max_height < 0:
        return ()
    return _levels(sig, label_bound, max_height, None)[max_height]
