"""Łukasiewicz formulas, exact evaluation and PMaxSAT instances.

Truth degrees are :class:`fractions.Fraction` values in ``[0, 1]``.
Satisfaction means evaluating to exactly 1, so nothing here ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import BoundOrder, ConstantOutOfRange, UnboundVariable

ZERO = Fraction(0)
ONE = Fraction(1)

Assignment = Mapping[str, Fraction]


def truth_degree(value) -> Fraction:
    """Coerce ``value`` to a Fraction and check that it lies in [0, 1].

    Floats are refused: ``0.1`` has no exact binary representation and would
    silently break satisfaction checks. Strings go through ``Fraction`` so
    both ``"0.25"`` and ``"1/4"`` work.
    """
    if isinstance(value, float):
        raise TypeError("truth degrees must be exact; pass a Fraction, int or string")
    q = Fraction(value)
    if not ZERO <= q <= ONE:
        raise ConstantOutOfRange(f"{q} is not a truth degree in [0, 1]")
    return q


def make_assignment(bindings: Mapping[str, object] | None = None, **kw) -> dict[str, Fraction]:
    merged = dict(bindings or {}, **kw)
    return {name: truth_degree(v) for name, v in merged.items()}


# --- formula AST -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Const:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", truth_degree(self.value))


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Neg:
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class _NAry:
    subs: tuple

    def __post_init__(self):
        flat = []
        for s in self.subs:
            # associativity lets nested nodes of the same connective merge
            if type(s) is type(self):
                flat.extend(s.subs)
            else:
                flat.append(s)
        if len(flat) < 2:
            raise ValueError(f"{type(self).__name__} needs at least two operands")
        object.__setattr__(self, "subs", tuple(flat))


class StrongDisj(_NAry):
    """x ⊕ y = min(1, x + y)"""

    __slots__ = ()


class StrongConj(_NAry):
    """x ⊙ y = max(0, x + y - 1)"""

    __slots__ = ()


class WeakDisj(_NAry):
    """x ∨ y = max(x, y)"""

    __slots__ = ()


class WeakConj(_NAry):
    """x ∧ y = min(x, y)"""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


Formula = Union[Const, Var, Neg, StrongDisj, StrongConj, WeakDisj, WeakConj, Implies]


def strong_disj(*subs: Formula) -> Formula:
    return subs[0] if len(subs) == 1 else StrongDisj(tuple(subs))


def strong_conj(*subs: Formula) -> Formula:
    return subs[0] if len(subs) == 1 else StrongConj(tuple(subs))


def weak_disj(*subs: Formula) -> Formula:
    return subs[0] if len(subs) == 1 else WeakDisj(tuple(subs))


def weak_conj(*subs: Formula) -> Formula:
    return subs[0] if len(subs) == 1 else WeakConj(tuple(subs))


def children(f: Formula) -> tuple:
    if isinstance(f, (Const, Var)):
        return ()
    if isinstance(f, Neg):
        return (f.sub,)
    if isinstance(f, Implies):
        return (f.antecedent, f.consequent)
    return f.subs


def variables(f: Formula) -> frozenset[str]:
    if isinstance(f, Var):
        return frozenset((f.name,))
    out: set[str] = set()
    stack = list(children(f))
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        else:
            stack.extend(children(g))
    return frozenset(out)


def depth(f: Formula) -> int:
    kids = children(f)
    return 0 if not kids else 1 + max(depth(k) for k in kids)


def preorder(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


# --- semantics ---------------------------------------------------------------


def evaluate(f: Formula, a: Assignment) -> Fraction:
    """Return [f]_a, computed bottom-up with exact rationals."""
    match f:
        case Const(value=c):
            return c
        case Var(name=n):
            try:
                return a[n]
            except KeyError:
                raise UnboundVariable(n) from None
        case Neg(sub=g):
            return ONE - evaluate(g, a)
        case StrongDisj():
            return min(ONE, sum((evaluate(g, a) for g in f.subs), ZERO))
        case StrongConj():
            total = sum((evaluate(g, a) for g in f.subs), ZERO)
            return max(ZERO, total - (len(f.subs) - 1))
        case WeakDisj():
            return max(evaluate(g, a) for g in f.subs)
        case WeakConj():
            return min(evaluate(g, a) for g in f.subs)
        case Implies(antecedent=p, consequent=q):
            return min(ONE, ONE - evaluate(p, a) + evaluate(q, a))
    raise TypeError(f"not a formula: {f!r}")


def is_satisfied(f: Formula, a: Assignment) -> bool:
    return evaluate(f, a) == ONE


def check_model(
    formulas: Sequence[Formula],
    bounds: Sequence[tuple],
    a: Assignment,
) -> bool:
    """True iff ``l <= [f]_a <= u`` for every formula and its ``(l, u)`` pair."""
    if len(formulas) != len(bounds):
        raise ValueError("one (lower, upper) pair is needed per formula")
    pairs = [(truth_degree(lo), truth_degree(hi)) for lo, hi in bounds]
    for lo, hi in pairs:
        if lo > hi:
            raise BoundOrder(f"lower bound {lo} exceeds upper bound {hi}")
    return all(lo <= evaluate(f, a) <= hi for f, (lo, hi) in zip(formulas, pairs))


# --- instances ---------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """A fuzzy PMaxSAT problem: every hard formula must evaluate to 1 and the
    number of soft formulas evaluating to 1 is maximised."""

    hard: tuple = ()
    soft: tuple = ()
    variables: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "hard", tuple(self.hard))
        object.__setattr__(self, "soft", tuple(self.soft))
        names: set[str] = set()
        for f in self.hard + self.soft:
            names |= variables(f)
        object.__setattr__(self, "variables", tuple(sorted(names)))

    @property
    def formulas(self) -> tuple:
        return self.hard + self.soft

    def with_soft(self, *extra: Formula) -> "Instance":
        return Instance(self.hard, self.soft + tuple(extra))

    def with_hard(self, *extra: Formula) -> "Instance":
        return Instance(self.hard + tuple(extra), self.soft)


def count_satisfied(inst: Instance, a: Assignment) -> tuple[bool, int]:
    hard_ok = all(is_satisfied(f, a) for f in inst.hard)
    return hard_ok, sum(1 for f in inst.soft if is_satisfied(f, a))


def lit(name: str, negated: bool = False) -> Formula:
    return Neg(Var(name)) if negated else Var(name)


def boolean_value(f: Formula, a: Mapping[str, bool]) -> bool:
    """Classical two-valued reading: ⊕/∨ as or, ⊙/∧ as and, → as material
    implication. Used to check that the fuzzy semantics restrict correctly."""
    match f:
        case Const(value=c):
            if c not in (ZERO, ONE):
                raise ValueError("classical semantics only covers the constants 0 and 1")
            return c == ONE
        case Var(name=n):
            return bool(a[n])
        case Neg(sub=g):
            return not boolean_value(g, a)
        case StrongDisj() | WeakDisj():
            return any(boolean_value(g, a) for g in f.subs)
        case StrongConj() | WeakConj():
            return all(boolean_value(g, a) for g in f.subs)
        case Implies(antecedent=p, consequent=q):
            return (not boolean_value(p, a)) or boolean_value(q, a)
    raise TypeError(f"not a formula: {f!r}")


def formulas_variables(formulas: Iterable[Formula]) -> tuple[str, ...]:
    names: set[str] = set()
    for f in formulas:
        names |= variables(f)
    return tuple(sorted(names))
