"""Seeded random formulas, instances and CNFs for cross-validation suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import BooleanCnf
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

NARY = (StrongDisj, StrongConj, WeakDisj, WeakConj)
CONSTANTS = tuple(Fraction(i, 4) for i in range(5))


def random_formula(
    rng: random.Random,
    names=("x", "y", "z"),
    max_depth: int = 3,
    const_prob: float = 0.1,
    leaf_prob: float = 0.3,
    max_arity: int = 3,
) -> Formula:
    def build(d):
        if d == 0 or (d < max_depth and rng.random() < leaf_prob):
            if rng.random() < const_prob:
                return Const(rng.choice(CONSTANTS))
            return Var(rng.choice(names))
        r = rng.random()
        if r < 0.15:
            return Neg(build(d - 1))
        if r < 0.3:
            return Implies(build(d - 1), build(d - 1))
        cls = rng.choice(NARY)
        arity = rng.randint(2, max_arity)
        return cls(tuple(build(d - 1) for _ in range(arity)))

    return build(max_depth)


def random_instance(
    rng: random.Random,
    num_vars: int = 3,
    max_soft: int = 5,
    max_hard: int = 2,
    max_depth: int = 3,
    **formula_kw,
) -> Instance:
    names = tuple("xyzw"[:num_vars]) if num_vars <= 4 else tuple(f"x{i}" for i in range(1, num_vars + 1))
    soft = [random_formula(rng, names, rng.randint(0, max_depth), **formula_kw) for _ in range(rng.randint(1, max_soft))]
    hard = [random_formula(rng, names, rng.randint(0, max_depth), **formula_kw) for _ in range(rng.randint(0, max_hard))]
    return Instance(tuple(hard), tuple(soft))


def random_simple_instance(rng: random.Random, num_vars: int = 4, max_clauses: int = 6, max_len: int = 3) -> Instance:
    names = [f"x{i}" for i in range(1, num_vars + 1)]
    soft = []
    for _ in range(rng.randint(1, max_clauses)):
        lits = [Var(v) if rng.random() < 0.5 else Neg(Var(v)) for v in (rng.choice(names) for _ in range(rng.randint(1, max_len)))]
        soft.append(lits[0] if len(lits) == 1 else StrongDisj(tuple(lits)))
    return Instance((), tuple(soft))


def random_cnf(rng: random.Random, max_vars: int = 4, max_clauses: int = 6, max_len: int = 3) -> BooleanCnf:
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        size = rng.randint(1, max_len)
        clauses.append([rng.choice((-1, 1)) * rng.randint(1, n) for _ in range(size)])
    return BooleanCnf(n, clauses)
