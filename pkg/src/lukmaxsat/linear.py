"""Linear expressions, relations and disjunctive linear relations (DLRs).

Everything is exact: coefficients and constants are Fractions. The decision
procedures live in :mod:`lukmaxsat.feasibility`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

OPS = ("<", "<=", ">", ">=", "=", "!=")


class LinExpr:
    """Degree-one polynomial ``sum(c_v * v) + const``; immutable by convention."""

    __slots__ = ("terms", "const")

    def __init__(self, terms: Mapping[str, object] | None = None, const=0):
        clean = {}
        for v, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[v] = c
        self.terms = clean
        self.const = Fraction(const)

    @classmethod
    def var(cls, name: str, coef=1) -> "LinExpr":
        return cls({name: coef})

    @classmethod
    def constant(cls, c) -> "LinExpr":
        return cls(None, c)

    def variables(self) -> frozenset[str]:
        return frozenset(self.terms)

    def value(self, point: Mapping[str, Fraction]) -> Fraction:
        return self.const + sum((c * point[v] for v, c in self.terms.items()), Fraction(0))

    def is_constant(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = as_expr(other)
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, 0) + c
        return LinExpr(terms, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return LinExpr({v: -c for v, c in self.terms.items()}, -self.const)

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return as_expr(other) - self

    def __mul__(self, k):
        if isinstance(k, LinExpr):
            raise TypeError("product of two linear expressions is not linear")
        k = Fraction(k)
        return LinExpr({v: c * k for v, c in self.terms.items()}, self.const * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinExpr):
            return NotImplemented
        return self.terms == other.terms and self.const == other.const

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.const))

    def __repr__(self):
        return f"LinExpr({format_expr(self)!r})"

    def __str__(self):
        return format_expr(self)


def as_expr(x) -> LinExpr:
    if isinstance(x, LinExpr):
        return x
    if isinstance(x, str):
        return LinExpr.var(x)
    if isinstance(x, float):
        raise TypeError("floats are not allowed in linear expressions")
    return LinExpr.constant(x)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_expr(e: LinExpr) -> str:
    """Canonical text: terms sorted by variable name, constant last."""
    parts = []
    for v in sorted(e.terms):
        c = e.terms[v]
        mag = abs(c)
        body = v if mag == 1 else f"{_fmt_q(mag)}*{v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    if e.const or not parts:
        if not parts:
            parts.append(_fmt_q(e.const))
        else:
            parts.append(f"+ {_fmt_q(e.const)}" if e.const > 0 else f"- {_fmt_q(-e.const)}")
    return " ".join(parts)


@dataclass(frozen=True)
class Relation:
    lhs: LinExpr
    op: str
    rhs: LinExpr = field(default_factory=LinExpr)

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown relation {self.op!r}; expected one of {OPS}")
        object.__setattr__(self, "lhs", as_expr(self.lhs))
        object.__setattr__(self, "rhs", as_expr(self.rhs))

    def variables(self) -> frozenset[str]:
        return self.lhs.variables() | self.rhs.variables()

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        a, b = self.lhs.value(point), self.rhs.value(point)
        return {
            "<": a < b,
            "<=": a <= b,
            ">": a > b,
            ">=": a >= b,
            "=": a == b,
            "!=": a != b,
        }[self.op]

    def __str__(self):
        return f"{format_expr(self.lhs)} {self.op} {format_expr(self.rhs)}"


def le(a, b) -> Relation:
    return Relation(as_expr(a), "<=", as_expr(b))


def ge(a, b) -> Relation:
    return Relation(as_expr(a), ">=", as_expr(b))


def lt(a, b) -> Relation:
    return Relation(as_expr(a), "<", as_expr(b))


def gt(a, b) -> Relation:
    return Relation(as_expr(a), ">", as_expr(b))


def eq(a, b) -> Relation:
    return Relation(as_expr(a), "=", as_expr(b))


def ne(a, b) -> Relation:
    return Relation(as_expr(a), "!=", as_expr(b))


@dataclass(frozen=True)
class DLR:
    disjuncts: tuple

    def __post_init__(self):
        object.__setattr__(self, "disjuncts", tuple(self.disjuncts))
        if not self.disjuncts:
            raise ValueError("a DLR needs at least one disjunct")

    def variables(self) -> frozenset[str]:
        return frozenset().union(*(r.variables() for r in self.disjuncts))

    def holds(self, point) -> bool:
        return any(r.holds(point) for r in self.disjuncts)

    def __str__(self):
        return " v ".join(str(r) for r in self.disjuncts)


Box = Mapping[str, tuple]
UNIT = (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class DLRSystem:
    """A conjunction of DLRs over box-bounded rational variables.

    Variables default to the box [0, 1]; pass ``box`` entries to override
    (``None`` for an unbounded side).
    """

    dlrs: tuple
    box: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dlrs", tuple(self.dlrs))
        box = dict(self.box)
        for d in self.dlrs:
            for v in sorted(d.variables()):
                box.setdefault(v, UNIT)
        object.__setattr__(self, "box", box)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(self.box))

    def holds(self, point) -> bool:
        return in_box(point, self.box) and all(d.holds(point) for d in self.dlrs)


def in_box(point, box: Box) -> bool:
    for v, (lo, hi) in box.items():
        x = point[v]
        if (lo is not None and x < lo) or (hi is not None and x > hi):
            return False
    return True


def relations_variables(rels: Iterable[Relation]) -> frozenset[str]:
    return frozenset().union(*(r.variables() for r in rels))


def write_dlr(sys: DLRSystem) -> str:
    """Debug dump: a variable/box header, then one DLR per line."""
    lines = []
    for v in sys.variables:
        lo, hi = sys.box[v]
        lo_s = "-inf" if lo is None else _fmt_q(Fraction(lo))
        hi_s = "+inf" if hi is None else _fmt_q(Fraction(hi))
        lines.append(f"# {lo_s} <= {v} <= {hi_s}")
    lines.extend(str(d) for d in sys.dlrs)
    return "".join(line + "\n" for line in lines)
