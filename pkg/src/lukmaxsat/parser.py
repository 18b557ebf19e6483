"""Text syntax for formulas and instance files.

Grammar (whitespace-insensitive)::

    formula := implies
    implies := weak ("->" implies)?
    weak    := strong (("|" | "&") strong)*     # no mixing without parens
    strong  := unary (("+" | "*") unary)*       # no mixing without parens
    unary   := "~" unary | atom
    atom    := IDENT | NUMBER | "(" formula ")"

``+`` is ⊕, ``*`` is ⊙, ``|`` is ∨, ``&`` is ∧, ``~`` is ¬. NUMBER is a
decimal (``0.25``) or a fraction (``1/4``) in [0, 1]. Instance files hold one
``hard: <formula>`` or ``soft: <formula>`` directive per line; ``#`` starts a
comment.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ConstantOutOfRange, FormulaSyntaxError
from .logic import (
    Const,
    Formula,
    Implies,
    Instance,
    Neg,
    StrongConj,
    StrongDisj,
    Var,
    WeakConj,
    WeakDisj,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+/\d+|\d+\.\d*|\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[~+*|&()])
    """,
    re.VERBOSE,
)

_NARY = {"+": StrongDisj, "*": StrongConj, "|": WeakDisj, "&": WeakConj}
_SYMBOL = {cls: sym for sym, cls in _NARY.items()}


def _tokenize(text, line):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    out.append(("eof", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, line=1, col_offset=0):
        self.line = line
        self.col_offset = col_offset
        self.tokens = _tokenize(text, line)
        self.i = 0

    def error(self, message, tok=None):
        tok = tok or self.tokens[self.i]
        return FormulaSyntaxError(message, self.line, tok[2] + self.col_offset)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def parse(self):
        f = self.implies()
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def implies(self):
        left = self.level(self.strong, ("|", "&"))
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def strong(self):
        return self.level(self.unary, ("+", "*"))

    def level(self, operand, ops):
        first = operand()
        tok = self.peek()
        if tok[1] not in ops:
            return first
        op = tok[1]
        items = [first]
        while self.peek()[1] in ops:
            tok = self.take()
            if tok[1] != op:
                raise self.error(f"mixing {op!r} and {tok[1]!r} needs parentheses", tok)
            items.append(operand())
        return _NARY[op](tuple(items))

    def unary(self):
        if self.peek()[1] == "~":
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        tok = self.take()
        kind, text, _ = tok
        if kind == "ident":
            return Var(text)
        if kind == "number":
            return Const(self.number(text, tok))
        if text == "(":
            f = self.implies()
            self.expect(")")
            return f
        raise self.error(f"expected a formula, found {text or 'end of input'!r}", tok)

    def number(self, text, tok):
        if "/" in text:
            p, q = text.split("/")
            if int(q) == 0:
                raise self.error("zero denominator", tok)
            value = Fraction(int(p), int(q))
        else:
            value = Fraction(text)
        if value > 1:
            raise ConstantOutOfRange(
                f"line {self.line}, column {tok[2] + self.col_offset}: {text} is outside [0, 1]"
            )
        return value


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


def parse_instance(text: str) -> Instance:
    hard, soft = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        kind, sep, rest = body.partition(":")
        kind = kind.strip()
        if not sep or kind not in ("hard", "soft"):
            col = len(body) - len(body.lstrip()) + 1
            raise FormulaSyntaxError("expected 'hard:' or 'soft:' directive", lineno, col)
        f = _Parser(rest, lineno, col_offset=len(body) - len(rest)).parse()
        (hard if kind == "hard" else soft).append(f)
    return Instance(tuple(hard), tuple(soft))


# --- printing ----------------------------------------------------------------


def format_degree(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_formula(f: Formula) -> str:
    match f:
        case Const(value=c):
            return format_degree(c)
        case Var(name=n):
            return n
        case Neg(sub=g):
            inner = format_formula(g)
            return "~" + (inner if isinstance(g, (Const, Var, Neg)) else f"({inner})")
        case Implies(antecedent=p, consequent=q):
            left = format_formula(p)
            if isinstance(p, Implies):
                left = f"({left})"
            return f"{left} -> {format_formula(q)}"
    sym = _SYMBOL[type(f)]
    strong = isinstance(f, (StrongDisj, StrongConj))
    parts = []
    for g in f.subs:
        s = format_formula(g)
        if isinstance(g, (Const, Var, Neg)):
            parts.append(s)
        elif not strong and isinstance(g, (StrongDisj, StrongConj)):
            parts.append(s)
        else:
            parts.append(f"({s})")
    return f" {sym} ".join(parts)


def format_instance(inst: Instance) -> str:
    lines = [f"hard: {format_formula(f)}" for f in inst.hard]
    lines += [f"soft: {format_formula(f)}" for f in inst.soft]
    return "".join(line + "\n" for line in lines)
