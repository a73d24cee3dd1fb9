"""Reader and writer for ``.tss`` specification files.

Example::

    signature { f: 1; g: 1; }
    labels { l(i); }
    rule "L": |- g(l1) -[l1]-> l1;
    template "R"(i >= 1): g^i(x) -[l(i)]-> x |- f(x) -[l1]-> x;
    strat S0 { g(l1) => 0; f(p) => 1; }
    eta E { f(x) => { g(x) }; }

Names that are not declared symbols, label constants or family members
(``l0``, ``l1``, ... for a family ``l``) are variables.  Inside a template,
``l(i+1)`` is a family member with a computed index, ``g^i(t)`` iterates a
unary symbol and ``y(i)`` is a variable whose name carries the index.
``{ formula | j }`` is an infinite premise family over ``j``.  Dyadic files
start with ``dyadic d1.id;`` and write formulae as ``source ==> target``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .kinds import DyadicKind
from .stratification import Clause, StratMeasure
from .terms import (App, Fam, Idx, IVar, PAIR, Pow, Signature, Symbol, Term, Var, is_pair)
from .tss import TSS, DyadicFormula, Formula, PremiseFamily, Rule, RuleTemplate

NEGATIVE_PREMISE_POLICY = ("negative premises are not supported: only positive premises "
                           "are analysed, so a rule with a negative premise is rejected "
                           "rather than silently weakened")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"{line}:{col}: {message}" if line else message)


@dataclass
class SpecFile:
    tss: TSS = field(default_factory=TSS)
    measures: Dict[str, StratMeasure] = field(default_factory=dict)
    etas: Dict[str, Dict[Term, Tuple[Term, ...]]] = field(default_factory=dict)

    def measure(self, name: str) -> StratMeasure:
        if name not in self.measures:
            known = ", ".join(sorted(self.measures)) or "none"
            raise KeyError(f"no measure named {name!r} (defined: {known})")
        return self.measures[name]

    def eta(self, name: str) -> Dict[Term, Tuple[Term, ...]]:
        if name not in self.etas:
            known = ", ".join(sorted(self.etas)) or "none"
            raise KeyError(f"no eta map named {name!r} (defined: {known})")
        return self.etas[name]


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<neg>\]-/->|-/->)
  | (?P<op>-\[|\]->|==>|\|-|=>|>=)
  | (?P<string>"[^"\n]*")
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{}(),;:^+\-|.])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Tok]:
    out, pos, line, lstart = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            out.append(Tok(kind, s, line, pos - lstart + 1))
        nl = s.count("\n")
        if nl:
            line += nl
            lstart = pos + s.rfind("\n") + 1
        pos = m.end()
    out.append(Tok("eof", "", line, pos - lstart + 1))
    return out


# ---------------------------------------------------------------------------
# parser

class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.symbols: List[Symbol] = []
        self.family: Optional[str] = None
        self.kind: Optional[DyadicKind] = None
        self.rules: List[Rule] = []
        self.templates: List[RuleTemplate] = []
        self.measures: Dict[str, StratMeasure] = {}
        self.etas: Dict[str, Dict[Term, Tuple[Term, ...]]] = {}
        self.index_vars: Tuple[str, ...] = ()
        self.wild = None  # counter for "_" family indices inside measure patterns

    # -- token helpers ------------------------------------------------------
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[Tok] = None):
        t = tok or self.tok
        raise ParseError(msg, t.line, t.col)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "punct", "ident")

    def eat(self, text: str) -> Tok:
        if not self.at(text):
            if self.tok.kind == "neg":
                self.error(NEGATIVE_PREMISE_POLICY)
            self.error(f"expected {text!r}, found {self.tok.text or 'end of file'!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error(f"expected a name, found {self.tok.text or 'end of file'!r}")
        t = self.tok
        self.i += 1
        return t.text

    def number(self) -> int:
        if self.tok.kind != "num":
            self.error(f"expected a number, found {self.tok.text or 'end of file'!r}")
        t = self.tok
        self.i += 1
        return int(t.text)

    def string(self) -> str:
        if self.tok.kind != "string":
            self.error(f"expected a quoted name, found {self.tok.text or 'end of file'!r}")
        t = self.tok
        self.i += 1
        return t.text[1:-1]

    # -- signature lookups --------------------------------------------------
    def arity(self, name: str) -> Optional[int]:
        for s in self.symbols:
            if s.name == name:
                return s.arity
        return None

    def declare(self, name: str, arity: int, tok: Tok):
        if self.arity(name) is not None:
            self.error(f"symbol {name} declared twice", tok)
        if name == self.family:
            self.error(f"symbol {name} collides with the label family", tok)
        self.symbols.append(Symbol(name, arity))

    def family_member(self, name: str) -> Optional[int]:
        f = self.family
        if f and name.startswith(f) and name[len(f):].isdigit() and self.arity(name) is None:
            digits = name[len(f):]
            if digits == "0" or not digits.startswith("0"):
                return int(digits)
        return None

    # -- top level ------------------------------------------------------------
    def parse(self) -> SpecFile:
        while self.tok.kind != "eof":
            t = self.tok
            word = t.text if t.kind == "ident" else ""
            if word == "signature":
                self.signature_block()
            elif word == "labels":
                self.labels_block()
            elif word == "dyadic":
                self.dyadic_decl()
            elif word == "rule":
                self.rule_decl()
            elif word == "template":
                self.template_decl()
            elif word == "strat":
                self.strat_block()
            elif word == "eta":
                self.eta_block()
            else:
                self.error(f"expected a block keyword, found {t.text!r}")
        sig = Signature(tuple(self.symbols), self.family)
        tss = TSS(sig, tuple(self.rules), tuple(self.templates), self.kind)
        names = tss.rule_names()
        for n in names:
            if names.count(n) > 1:
                raise ParseError(f"rule name {n!r} used twice")
        return SpecFile(tss, self.measures, self.etas)

    def signature_block(self):
        self.eat("signature")
        self.eat("{")
        while not self.accept("}"):
            tok = self.tok
            name = self.ident()
            self.eat(":")
            self.declare(name, self.number(), tok)
            self.eat(";")

    def labels_block(self):
        self.eat("labels")
        self.eat("{")
        while not self.accept("}"):
            tok = self.tok
            name = self.ident()
            if self.accept("("):
                self.ident()
                self.eat(")")
                if self.family is not None:
                    self.error("only one indexed label family is supported", tok)
                if self.arity(name) is not None:
                    self.error(f"family {name} collides with a symbol", tok)
                self.family = name
            else:
                self.declare(name, 0, tok)
            self.eat(";")

    def dyadic_decl(self):
        tok = self.eat("dyadic")
        head = self.ident()
        self.eat(".")
        prj = self.ident()
        if self.rules or self.templates:
            self.error("the dyadic declaration must precede all rules", tok)
        try:
            self.kind = DyadicKind.parse(f"{head}.{prj}")
        except ValueError as e:
            self.error(str(e), tok)
        self.eat(";")

    def rule_decl(self):
        self.eat("rule")
        name = self.string()
        self.eat(":")
        self.index_vars = ()
        premises, concl = self.rule_body()
        self.rules.append(Rule(name, premises, concl))

    def template_decl(self):
        self.eat("template")
        name = self.string()
        self.eat("(")
        var = self.ident()
        lower = 0
        if self.accept(">="):
            lower = self.number()
        self.eat(")")
        self.eat(":")
        self.index_vars = (var,)
        premises, concl = self.rule_body()
        self.index_vars = ()
        self.templates.append(RuleTemplate(var, Rule(name, premises, concl), lower))

    def rule_body(self):
        premises = []
        if not self.at("|-"):
            premises.append(self.premise())
            while self.accept(","):
                premises.append(self.premise())
        self.eat("|-")
        concl = self.formula()
        self.eat(";")
        return tuple(premises), concl

    def premise(self):
        if self.accept("{"):
            outer = self.index_vars
            # peek the family variable: it follows the last "|" before the closing brace
            j = self.i
            depth = 0
            while True:
                t = self.toks[j]
                if t.kind == "eof":
                    self.error("unterminated premise family")
                if t.text in ("(", "{"):
                    depth += 1
                elif t.text in (")", "}"):
                    if depth == 0:
                        break
                    depth -= 1
                elif t.text == "|" and depth == 0:
                    var_tok = self.toks[j + 1]
                j += 1
            try:
                var = var_tok.text
            except NameError:
                self.error("premise family needs '| var'")
            self.index_vars = outer + (var,)
            f = self.formula()
            self.index_vars = outer
            self.eat("|")
            self.ident()
            self.eat("}")
            return PremiseFamily(f, var)
        return self.formula()

    def formula(self):
        tok = self.tok
        src = self.term()
        if self.tok.kind == "neg":
            self.error(NEGATIVE_PREMISE_POLICY)
        if self.accept("==>"):
            if self.kind is None:
                self.error("dyadic formula in a file without a 'dyadic' declaration", tok)
            return DyadicFormula(src, self.term(), self.kind)
        if self.accept("-["):
            if self.kind is not None:
                self.error("triadic formula in a dyadic file", tok)
            label = self.term()
            if self.tok.kind == "neg":
                self.error(NEGATIVE_PREMISE_POLICY)
            self.eat("]->")
            return Formula(src, label, self.term())
        self.error(f"expected '-[' or '==>', found {self.tok.text!r}")

    # -- terms ----------------------------------------------------------------
    def index_expr(self) -> Idx:
        tok = self.tok
        var = self.ident()
        if var not in self.index_vars:
            self.error(f"{var} is not an index variable here", tok)
        off = 0
        if self.accept("+"):
            off = self.number()
        elif self.accept("-"):
            off = -self.number()
        return Idx(var, off)

    def looks_like_index(self) -> bool:
        t, n = self.tok, self.toks[self.i + 1]
        return (t.kind == "ident" and t.text in self.index_vars
                and n.text in (")", "+", "-"))

    def term(self) -> Term:
        tok = self.tok
        if self.accept("("):
            first = self.term()
            if self.accept(")"):
                return first
            items = [first]
            while self.accept(","):
                items.append(self.term())
            self.eat(")")
            if len(items) != 2:
                self.error("pairs have exactly two components", tok)
            return App(PAIR, tuple(items))
        name = self.ident()
        if self.at("^"):
            return self.power(name, tok)
        if self.at("("):
            if name == self.family:
                self.eat("(")
                if self.wild is not None and self.accept("_"):
                    idx = f"_{self.wild}"
                    self.wild += 1
                    self.eat(")")
                    return Fam(name, idx)
                if self.tok.kind == "num":
                    n = self.number()
                    self.eat(")")
                    return Fam(name, n)
                idx = self.index_expr()
                self.eat(")")
                return Fam(name, idx)
            ar = self.arity(name)
            if ar is None:
                self.eat("(")
                if self.looks_like_index():
                    idx = self.index_expr()
                    self.eat(")")
                    return IVar(name, idx)
                self.error(f"undefined symbol {name}", tok)
            self.eat("(")
            args = [self.term()]
            while self.accept(","):
                args.append(self.term())
            self.eat(")")
            if len(args) != ar:
                self.error(f"{name} has arity {ar}, applied to {len(args)} arguments", tok)
            return App(name, tuple(args))
        ar = self.arity(name)
        if ar is not None:
            if ar != 0:
                self.error(f"{name} has arity {ar}, used without arguments", tok)
            return App(name)
        n = self.family_member(name)
        if n is not None:
            return Fam(self.family, n)
        if name == self.family:
            self.error(f"label family {name} needs an index", tok)
        return Var(name)

    def power(self, name: str, tok: Tok) -> Term:
        self.eat("^")
        if self.arity(name) != 1:
            self.error(f"only unary symbols can be iterated, {name} is not one", tok)
        if self.accept("("):
            exp = self.index_expr()
            self.eat(")")
        else:
            t = self.tok
            v = self.ident()
            if v not in self.index_vars:
                self.error(f"{v} is not an index variable here", t)
            exp = Idx(v)
        self.eat("(")
        arg = self.term()
        self.eat(")")
        return Pow(name, exp, arg)

    # -- measures and support maps -----------------------------------------
    def strat_block(self):
        self.eat("strat")
        tok = self.tok
        name = self.ident()
        if name in self.measures:
            self.error(f"measure {name} defined twice", tok)
        self.eat("{")
        clauses = []
        while not self.accept("}"):
            self.wild = 0
            pat = self.term()
            self.wild = None
            self.eat("=>")
            expr = [self.mitem()]
            while self.accept("+"):
                expr.append(self.mitem())
            self.eat(";")
            clauses.append(Clause(pat, tuple(expr)))
        self.measures[name] = StratMeasure(name, tuple(clauses))

    def mitem(self):
        if self.tok.kind == "num":
            return self.number()
        tok = self.tok
        if self.ident() != "S":
            self.error("expected a number or S(...)", tok)
        self.eat("(")
        items = [self.term()]
        while self.accept(","):
            items.append(self.term())
        self.eat(")")
        if len(items) > 2:
            self.error("S takes a term or a pair", tok)
        return items[0] if len(items) == 1 else App(PAIR, tuple(items))

    def eta_block(self):
        self.eat("eta")
        tok = self.tok
        name = self.ident()
        if name in self.etas:
            self.error(f"eta map {name} defined twice", tok)
        self.eat("{")
        m: Dict[Term, Tuple[Term, ...]] = {}
        while not self.accept("}"):
            src = self.term()
            self.eat("=>")
            self.eat("{")
            image = []
            while not self.accept("}"):
                image.append(self.term())
                self.accept(",")
            self.eat(";")
            m[src] = tuple(image)
        self.etas[name] = m


def parse_spec(text: str) -> SpecFile:
    return Parser(text).parse()


def parse_spec_file(path) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def parse_term(text: str, sig: Signature = Signature(), index_vars=()) -> Term:
    p = Parser(text)
    p.symbols = list(sig.symbols)
    p.family = sig.family
    p.index_vars = tuple(index_vars)
    t = p.term()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return t


# ---------------------------------------------------------------------------
# writer

def render_term(t: Term) -> str:
    tp = type(t)
    if tp is Fam and isinstance(t.index, str):
        return f"{t.family}(_)"
    if tp is App and t.head == PAIR:
        return "(" + ", ".join(render_term(a) for a in t.args) + ")"
    if tp is App and t.args:
        return f"{t.head}({', '.join(render_term(a) for a in t.args)})"
    if tp is Pow:
        e = str(t.exp)
        if t.exp.offset:
            e = f"({e})"
        return f"{t.head}^{e}({render_term(t.arg)})"
    return str(t)


def render_formula(f) -> str:
    if isinstance(f, PremiseFamily):
        return f"{{ {render_formula(f.formula)} | {f.var} }}"
    if isinstance(f, Formula):
        return f"{render_term(f.source)} -[{render_term(f.label)}]-> {render_term(f.target)}"
    return f"{render_term(f.source)} ==> {render_term(f.target)}"


def _render_rule_body(r: Rule) -> str:
    prem = ", ".join(render_formula(p) for p in r.premises)
    return f"{prem + ' ' if prem else ''}|- {render_formula(r.conclusion)};"


def render_spec(spec: SpecFile) -> str:
    tss = spec.tss
    lines = []
    sig = tss.signature
    if sig.symbols:
        body = " ".join(f"{s.name}: {s.arity};" for s in sig.symbols)
        lines.append(f"signature {{ {body} }}")
    if sig.family:
        lines.append(f"labels {{ {sig.family}(i); }}")
    if tss.kind is not None:
        lines.append(f"dyadic {tss.kind};")
    for r in tss.rules:
        lines.append(f'rule "{r.name}": {_render_rule_body(r)}')
    for t in tss.templates:
        head = t.index_variable if t.lower == 0 else f"{t.index_variable} >= {t.lower}"
        lines.append(f'template "{t.name}"({head}): {_render_rule_body(t.body)}')
    for m in spec.measures.values():
        lines.append(f"strat {m.name} {{")
        for c in m.clauses:
            parts = []
            for e in c.expr:
                if isinstance(e, int):
                    parts.append(str(e))
                elif is_pair(e):
                    parts.append(f"S({', '.join(render_term(a) for a in e.args)})")
                else:
                    parts.append(f"S({render_term(e)})")
            lines.append(f"  {render_term(c.pattern)} => {' + '.join(parts)};")
        lines.append("}")
    for name, m in spec.etas.items():
        lines.append(f"eta {name} {{")
        for s, image in m.items():
            lines.append(f"  {render_term(s)} => {{ {', '.join(render_term(v) for v in image)} }};")
        lines.append("}")
    return "\n".join(lines) + "\n"


def render_tss(tss: TSS) -> str:
    return render_spec(SpecFile(tss))


def parse_closed_term(text: str) -> Term:
    """Read a closed term without a signature: every name is a symbol.

    Used for LTS files, where no variables occur and arities are implicit.
    """
    toks = tokenize(text)
    pos = 0

    def term():
        nonlocal pos
        t = toks[pos]
        if t.text == "(":
            pos += 1
            items = [term()]
            while toks[pos].text == ",":
                pos += 1
                items.append(term())
            close()
            if len(items) == 1:
                return items[0]
            if len(items) != 2:
                raise ParseError("pairs have exactly two components", t.line, t.col)
            return App(PAIR, tuple(items))
        if t.kind != "ident":
            raise ParseError(f"expected a term, found {t.text or 'end of input'!r}", t.line, t.col)
        pos += 1
        if toks[pos].text != "(":
            return App(t.text)
        pos += 1
        args = [term()]
        while toks[pos].text == ",":
            pos += 1
            args.append(term())
        close()
        return App(t.text, tuple(args))

    def close():
        nonlocal pos
        t = toks[pos]
        if t.text != ")":
            raise ParseError(f"expected ')', found {t.text or 'end of input'!r}", t.line, t.col)
        pos += 1

    out = term()
    if toks[pos].kind != "eof":
        t = toks[pos]
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return out
