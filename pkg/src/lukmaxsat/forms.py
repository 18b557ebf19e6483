"""Clausal forms, DIMACS CNF input and the Boolean MaxSAT reduction."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedDimacs
from .logic import (
    Const,
    Formula,
    Instance,
    Neg,
    StrongDisj,
    Var,
    WeakDisj,
    strong_disj,
)


class FormClass(enum.Enum):
    SIMPLE_L_CLAUSAL = "SimpleLClausal"
    L_CLAUSAL = "LClausal"
    GENERAL = "General"


@dataclass(frozen=True)
class Literal:
    variable: str
    negated: bool = False

    def formula(self) -> Formula:
        return Neg(Var(self.variable)) if self.negated else Var(self.variable)


@dataclass(frozen=True)
class SimpleLClause:
    """l1 ⊕ ... ⊕ lr"""

    literals: tuple

    def __post_init__(self):
        if not self.literals:
            raise ValueError("a clause needs at least one literal")

    def formula(self) -> Formula:
        return strong_disj(*(lit.formula() for lit in self.literals))


@dataclass(frozen=True)
class NegBlock:
    """¬(l1 ⊕ ... ⊕ lk)"""

    literals: tuple

    def __post_init__(self):
        if not self.literals:
            raise ValueError("a negated block needs at least one literal")

    def formula(self) -> Formula:
        return Neg(strong_disj(*(lit.formula() for lit in self.literals)))


@dataclass(frozen=True)
class LClause:
    """Terms joined by ∨ (``strong=False``) or by ⊕ (``strong=True``)."""

    terms: tuple
    strong: bool = False

    def __post_init__(self):
        if not self.terms:
            raise ValueError("an L-clause needs at least one term")

    def formula(self) -> Formula:
        parts = [t.formula() for t in self.terms]
        if len(parts) == 1:
            return parts[0]
        return StrongDisj(tuple(parts)) if self.strong else WeakDisj(tuple(parts))


def as_literal(f: Formula) -> Literal | None:
    if isinstance(f, Var):
        return Literal(f.name)
    if isinstance(f, Neg) and isinstance(f.sub, Var):
        return Literal(f.sub.name, True)
    return None


def as_simple_clause(f: Formula) -> SimpleLClause | None:
    lit = as_literal(f)
    if lit is not None:
        return SimpleLClause((lit,))
    if isinstance(f, StrongDisj):
        lits = [as_literal(g) for g in f.subs]
        if all(lits):
            return SimpleLClause(tuple(lits))
    return None


def _as_term(f: Formula):
    lit = as_literal(f)
    if lit is not None:
        return lit
    if isinstance(f, Neg):
        inner = as_simple_clause(f.sub)
        if inner is not None:
            return NegBlock(inner.literals)
    return None


def as_l_clause(f: Formula) -> LClause | None:
    term = _as_term(f)
    if term is not None:
        return LClause((term,))
    if isinstance(f, (WeakDisj, StrongDisj)):
        terms = [_as_term(g) for g in f.subs]
        if all(t is not None for t in terms):
            return LClause(tuple(terms), strong=isinstance(f, StrongDisj))
    return None


def classify_formula(f: Formula) -> FormClass:
    if as_simple_clause(f) is not None:
        return FormClass.SIMPLE_L_CLAUSAL
    if as_l_clause(f) is not None:
        return FormClass.L_CLAUSAL
    return FormClass.GENERAL


_RANK = {FormClass.SIMPLE_L_CLAUSAL: 0, FormClass.L_CLAUSAL: 1, FormClass.GENERAL: 2}


def classify(inst: Instance | Sequence[Formula]) -> FormClass:
    """Most specific syntactic class that every formula fits (purely syntactic)."""
    formulas = inst.formulas if isinstance(inst, Instance) else tuple(inst)
    worst = FormClass.SIMPLE_L_CLAUSAL
    for f in formulas:
        c = classify_formula(f)
        if _RANK[c] > _RANK[worst]:
            worst = c
    return worst


# --- DIMACS ------------------------------------------------------------------


@dataclass(frozen=True)
class BooleanCnf:
    num_vars: int
    clauses: tuple
    allow_empty: bool = False

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if not c and not self.allow_empty:
                raise ValueError("empty clause (pass allow_empty=True to keep it)")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")

    def occurring(self) -> list[int]:
        return sorted({abs(lit) for c in self.clauses for lit in c})


def read_dimacs(text: str, allow_empty: bool = False) -> BooleanCnf:
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise MalformedDimacs("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedDimacs("expected 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise MalformedDimacs("non-integer counts in problem line", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise MalformedDimacs("negative counts in problem line", lineno)
            continue
        if header is None:
            raise MalformedDimacs("clause before the problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise MalformedDimacs(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current and not allow_empty:
                    raise MalformedDimacs("empty clause", lineno)
                clauses.append(current)
                current = []
            else:
                if abs(lit) > header[0]:
                    raise MalformedDimacs(f"literal {lit} exceeds declared {header[0]} variables", lineno)
                current.append(lit)
        last_line = lineno
    if header is None:
        raise MalformedDimacs("missing 'p cnf' problem line", 1)
    if current:
        raise MalformedDimacs("last clause is not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise MalformedDimacs(f"header declares {header[1]} clauses, found {len(clauses)}", last_line or 1)
    return BooleanCnf(header[0], clauses, allow_empty)


def write_dimacs(cnf: BooleanCnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(str(lit) for lit in c + (0,)) for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def boolean_maxsat(cnf: BooleanCnf) -> int:
    """Brute-force Boolean MaxSAT optimum. Test scaffolding, exponential."""
    best = 0
    for bits in itertools.product((False, True), repeat=cnf.num_vars):
        n = sum(1 for c in cnf.clauses if any(bits[abs(l) - 1] == (l > 0) for l in c))
        best = max(best, n)
    return best


# --- Boolean MaxSAT -> fuzzy PMaxSAT -----------------------------------------


def var_name(i: int) -> str:
    return f"x{i}"


def booleanness_gadget(name: str) -> Formula:
    """¬(x ⊕ x) ⊕ x, which evaluates to 1 exactly when x is 0 or 1."""
    x = Var(name)
    return StrongDisj((Neg(StrongDisj((x, x))), x))


def reduce_boolean(cnf: BooleanCnf) -> Instance:
    """Hard gadgets force every occurring variable to {0, 1}; each clause
    becomes the strong disjunction of its literals. Duplicate literals are
    kept, since x ⊕ x differs from x."""
    hard = tuple(booleanness_gadget(var_name(i)) for i in cnf.occurring())
    soft = []
    for c in cnf.clauses:
        lits = [Neg(Var(var_name(-l))) if l < 0 else Var(var_name(l)) for l in c]
        soft.append(strong_disj(*lits) if lits else Const(0))
    return Instance(hard, tuple(soft))
