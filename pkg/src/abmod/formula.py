"""Input language: tokenizer, parser, AST, printer, DNF and evaluation.

Grammar (whitespace-insensitive)::

    sentence := ["exists" varlist ":"] formula
    formula  := conj ("|" conj)*
    conj     := neg ("&" neg)*
    neg      := "!" neg | atom
    atom     := poly rel poly | "(" formula ")"
    rel      := "=" | "!="
    poly     := integer arithmetic in + - * ^ and parentheses

A bare formula is read as its existential closure over the variables it
mentions (in order of first appearance).  Negation never reaches the AST:
it is pushed to the literals and flips = / != there.  Products may be
written by juxtaposition ("2x", "x y").
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .algebra.poly import Poly
from .errors import ParseError, ResourceError

EQ, NEQ = "=", "!="
DEFAULT_DNF_CAP = 4096

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Literal:
    poly: Poly
    rel: str

    def negate(self) -> "Literal":
        return Literal(self.poly, NEQ if self.rel == EQ else EQ)


@dataclass(frozen=True)
class And:
    children: tuple


@dataclass(frozen=True)
class Or:
    children: tuple


Formula = "Literal | And | Or"


@dataclass(frozen=True)
class Sentence:
    vars: tuple
    matrix: object

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Conjunct:
    eqs: tuple
    neqs: tuple
    vars: tuple = field(default=())

    def literals(self):
        return [Literal(f, EQ) for f in self.eqs] + [Literal(g, NEQ) for g in self.neqs]

    def variables(self) -> tuple:
        used = {v for p in self.eqs + self.neqs for v in p.variables()}
        return tuple(v for v in self.vars if v in used) + tuple(sorted(used - set(self.vars)))

    def as_formula(self):
        lits = self.literals()
        return lits[0] if len(lits) == 1 else And(tuple(lits))

    def __str__(self):
        return " & ".join(_lit_text(l, self.vars) for l in self.literals()) or "0 = 0"


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>!=|==|<>|≠|∧|∨|¬|∃|&&|\|\||[-+*^()=,:&|!−·])
    """,
    re.VERBOSE,
)

_CANON = {"==": "=", "<>": "!=", "≠": "!=", "∧": "&", "&&": "&", "∨": "|", "||": "|",
          "¬": "!", "∃": "exists", "−": "-", "·": "*"}


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | op | kw | end
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            s = _CANON.get(s, s)
            if s == "exists":
                kind = "kw"
            out.append(Token(kind, s, line, col))
        for ch in m.group():
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(Token("end", "", line, col))
    return out


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.declared: tuple | None = None
        self.seen: list[str] = []
        self.furthest: ParseError | None = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        where = "end of input" if tok.kind == "end" else repr(tok.text)
        err = ParseError(f"{msg} at {where}", tok.line, tok.col)
        if self.furthest is None or (tok.line, tok.col) > (self.furthest.line, self.furthest.col):
            self.furthest = err
        return err

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "kw") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    # sentence ------------------------------------------------------------
    def sentence(self) -> Sentence:
        if self.accept("exists"):
            names = []
            while True:
                t = self.tok
                if t.kind != "ident":
                    raise self.error("expected a variable name")
                if t.text in names:
                    raise self.error(f"variable {t.text!r} declared twice")
                names.append(t.text)
                self.i += 1
                if self.accept(","):
                    continue
                if self.tok.kind == "ident":
                    continue
                break
            self.expect(":")
            self.declared = tuple(names)
        matrix = self.formula()
        if self.tok.kind != "end":
            raise self.error("unexpected input")
        vars_ = self.declared if self.declared is not None else tuple(self.seen)
        return Sentence(vars_, matrix)

    def formula(self):
        parts = [self.conj()]
        while self.accept("|"):
            parts.append(self.conj())
        return make_or(parts)

    def conj(self):
        parts = [self.neg()]
        while self.accept("&"):
            parts.append(self.neg())
        return make_and(parts)

    def neg(self):
        if self.accept("!"):
            return negate(self.neg())
        return self.atom()

    def atom(self):
        start = self.i
        if self.tok.text == "(" and self.tok.kind == "op":
            try:
                return self.relation()
            except ParseError:
                self.i = start
            self.expect("(")
            inner = self.formula()
            self.expect(")")
            return inner
        return self.relation()

    def relation(self):
        lhs = self.poly()
        if self.accept("="):
            rel = EQ
        elif self.accept("!="):
            rel = NEQ
        else:
            raise self.error("expected '=' or '!='")
        rhs = self.poly()
        return Literal(lhs - rhs, rel)

    # polynomials ----------------------------------------------------------
    def poly(self) -> Poly:
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "ident") or (t.kind == "op" and t.text == "(")

    def term(self) -> Poly:
        acc = self.unary()
        while True:
            if self.accept("*"):
                acc = acc * self.unary()
            elif self._starts_factor():
                acc = acc * self.power()
            else:
                return acc

    def unary(self) -> Poly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.primary()
        if self.accept("^"):
            t = self.tok
            if t.kind != "num":
                raise self.error("expected a nonnegative integer exponent")
            self.i += 1
            return base ** int(t.text)
        return base

    def primary(self) -> Poly:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Poly.const(int(t.text))
        if t.kind == "ident":
            if self.declared is not None and t.text not in self.declared:
                raise self.error(f"undeclared variable {t.text!r}")
            if t.text not in self.seen:
                self.seen.append(t.text)
            self.i += 1
            return Poly.var(t.text)
        if self.accept("("):
            inner = self.poly()
            self.expect(")")
            return inner
        raise self.error("expected a polynomial")


def parse(text: str) -> Sentence:
    """Parse a sentence; errors carry line and column of the offending token."""
    p = _Parser(text)
    try:
        return p.sentence()
    except ParseError as exc:
        best = p.furthest
        if best is not None and (best.line, best.col) > (exc.line, exc.col):
            raise best from None
        raise


def parse_formula(text: str, variables: Sequence[str] | None = None):
    """Parse a bare matrix; ``variables`` (if given) is the declared registry."""
    p = _Parser(text)
    if variables is not None:
        p.declared = tuple(variables)
    f = p.formula()
    if p.tok.kind != "end":
        raise p.error("unexpected input")
    return f


# ---------------------------------------------------------------------------
# negation, printing


def make_and(parts):
    flat = []
    for p in parts:
        flat.extend(p.children if isinstance(p, And) else (p,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def make_or(parts):
    flat = []
    for p in parts:
        flat.extend(p.children if isinstance(p, Or) else (p,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def negate(f):
    if isinstance(f, Literal):
        return f.negate()
    if isinstance(f, And):
        return make_or([negate(c) for c in f.children])
    return make_and([negate(c) for c in f.children])


def _lit_text(l: Literal, order) -> str:
    return f"{l.poly.to_str(order)} {l.rel} 0"


def formula_text(f, order: Sequence[str] | None = None) -> str:
    if isinstance(f, Literal):
        return _lit_text(f, order)
    if isinstance(f, And):
        return " & ".join(
            f"({formula_text(c, order)})" if isinstance(c, Or) else formula_text(c, order) for c in f.children
        )
    return " | ".join(formula_text(c, order) for c in f.children)


def to_text(s: Sentence) -> str:
    head = f"exists {', '.join(s.vars)}: " if s.vars else ""
    return head + formula_text(s.matrix, s.vars)


# ---------------------------------------------------------------------------
# DNF and evaluation


def _dedupe(items: Iterable) -> tuple:
    seen, out = set(), []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


def _dnf_lits(f, cap: int) -> list[tuple]:
    if isinstance(f, Literal):
        return [(f,)]
    if isinstance(f, Or):
        out = []
        for c in f.children:
            out.extend(_dnf_lits(c, cap))
            if len(out) > cap:
                raise ResourceError(f"DNF exceeds {cap} conjuncts")
        return out
    acc = [()]
    for c in f.children:
        sub = _dnf_lits(c, cap)
        if len(acc) * len(sub) > cap:
            raise ResourceError(f"DNF exceeds {cap} conjuncts")
        acc = [a + b for a in acc for b in sub]
    return acc


def to_dnf(f, variables: Sequence[str] = (), cap: int = DEFAULT_DNF_CAP) -> list[Conjunct]:
    """Disjunctive normal form; duplicate literals and duplicate conjuncts are dropped."""
    if isinstance(f, Sentence):
        variables, f = f.vars, f.matrix
    out = []
    for lits in _dnf_lits(f, cap):
        lits = _dedupe(lits)
        eqs = tuple(l.poly for l in lits if l.rel == EQ)
        neqs = tuple(l.poly for l in lits if l.rel == NEQ)
        out.append(Conjunct(eqs, neqs, tuple(variables)))
    return list(_dedupe(out))


def eval_formula(f, ring, assignment: Mapping[str, object]) -> bool:
    """Truth value of a quantifier-free formula in ``ring`` at ``assignment``."""
    if isinstance(f, Literal):
        zero = ring.is_zero(f.poly.evaluate(ring, assignment))
        return zero if f.rel == EQ else not zero
    if isinstance(f, And):
        return all(eval_formula(c, ring, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(eval_formula(c, ring, assignment) for c in f.children)
    if isinstance(f, Conjunct):
        return eval_formula(f.as_formula(), ring, assignment) if f.eqs or f.neqs else True
    raise TypeError(f"not a formula: {f!r}")


eval = eval_formula  # noqa: A001  (the operation's public name)
