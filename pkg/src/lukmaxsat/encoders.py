"""Linearisation of Łukasiewicz formulas and the three target encodings.

Every connective is a min or max of linear expressions in its children:

    ¬a      = 1 - a                      (linear, no auxiliary variable)
    a ⊕ b   = min(1, a + b)
    a ⊙ b   = max(a + b - 1, 0)
    a ∨ b   = max(a, b)
    a ∧ b   = min(a, b)
    a → b   = min(1, 1 - a + b)

n-ary ⊕/⊙ use the sum of all children (``- (n - 1)`` for ⊙). A node ``s``
standing for ``max(a_1..a_k)`` becomes ``s >= a_i`` for all i plus either the
disjunction ``s = a_1 v ... v s = a_k`` (DLR mode) or big-M upper bounds
switched by binary selectors (MILP mode). ``min`` is the mirror image.

Auxiliary names embed the formula tag and the node's preorder index, so
output files are stable: ``s.<tag>.<idx>`` for values, ``z.<tag>.<idx>``
(and ``z.<tag>.<idx>.<j>`` for k > 2 operands) for selectors.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BoundRange, DomainBlowup, InconsistentDecode
from .linear import DLR, DLRSystem, LinExpr, Relation, UNIT, eq, ge, le
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
    evaluate,
    variables,
)

DLR_MODE = "dlr"
MILP_MODE = "milp"

ONE = LinExpr.constant(1)
ZERO = LinExpr.constant(0)


@dataclass
class Linearization:
    root: LinExpr
    relations: list = field(default_factory=list)
    disjunctions: list = field(default_factory=list)  # DLR mode only
    selectors: list = field(default_factory=list)  # MILP mode only
    aux_vars: list = field(default_factory=list)
    mode: str = DLR_MODE

    @property
    def variables(self) -> list[str]:
        return self.aux_vars + self.selectors

    def dlrs(self) -> list[DLR]:
        return [DLR((r,)) for r in self.relations] + list(self.disjunctions)


def expr_range(e: LinExpr) -> tuple[Fraction, Fraction]:
    """Range of ``e`` when every variable lies in [0, 1]."""
    lo = hi = e.const
    for c in e.terms.values():
        if c > 0:
            hi += c
        else:
            lo += c
    return lo, hi


def _operands(f: Formula, kids: list[LinExpr]):
    """(kind, operands) for a non-linear connective."""
    if isinstance(f, StrongDisj):
        return "min", [ONE, sum(kids, ZERO)]
    if isinstance(f, StrongConj):
        return "max", [sum(kids, ZERO) - (len(kids) - 1), ZERO]
    if isinstance(f, WeakDisj):
        return "max", kids
    if isinstance(f, WeakConj):
        return "min", kids
    if isinstance(f, Implies):
        return "min", [ONE, ONE - kids[0] + kids[1]]
    raise TypeError(f"not a formula: {f!r}")


def _dlr_gadget(out: Linearization, s: LinExpr, kind: str, ops: Sequence[LinExpr]):
    for a in ops:
        out.relations.append(ge(s, a) if kind == "max" else le(s, a))
    out.disjunctions.append(DLR(tuple(eq(s, a) for a in ops)))


def _milp_gadget(out: Linearization, s: LinExpr, kind: str, ops: Sequence[LinExpr], sel: str):
    ranges = [expr_range(a) for a in ops]
    if len(ops) == 2:
        out.selectors.append(sel)
        z = LinExpr.var(sel)
        switches = [1 - z, z]  # z = 1 picks the first operand
    else:
        names = [f"{sel}.{j}" for j in range(1, len(ops) + 1)]
        out.selectors.extend(names)
        zs = [LinExpr.var(n) for n in names]
        out.relations.append(eq(sum(zs, ZERO), 1))
        switches = [1 - z for z in zs]
    if kind == "max":
        top = min(Fraction(1), max(hi for _, hi in ranges))
        for a in ops:
            out.relations.append(ge(s, a))
        for a, (lo, _), off in zip(ops, ranges, switches):
            big_m = max(Fraction(0), top - lo)
            out.relations.append(le(s, a + big_m * off))
    else:
        bottom = max(Fraction(0), min(lo for lo, _ in ranges))
        for a in ops:
            out.relations.append(le(s, a))
        for a, (_, hi), off in zip(ops, ranges, switches):
            big_m = max(Fraction(0), hi - bottom)
            out.relations.append(ge(s, a - big_m * off))


def linearize(f: Formula, mode: str = DLR_MODE, tag: str = "0") -> Linearization:
    """Linear description of ``[f]``: for any values of the logic variables,
    the constraints admit exactly one value of ``root`` (and of every
    auxiliary), namely ``evaluate(f, ...)``."""
    if mode not in (DLR_MODE, MILP_MODE):
        raise ValueError(f"unknown mode {mode!r}")
    out = Linearization(ZERO, mode=mode)
    counter = itertools.count()

    def walk(g: Formula) -> LinExpr:
        idx = next(counter)
        if isinstance(g, Const):
            return LinExpr.constant(g.value)
        if isinstance(g, Var):
            return LinExpr.var(g.name)
        if isinstance(g, Neg):
            return 1 - walk(g.sub)
        name = f"s.{tag}.{idx}"
        out.aux_vars.append(name)
        # reserve this node's slot so gadgets come out in preorder (root first)
        slot = len(pending)
        pending.append(None)
        kids = [walk(h) for h in ((g.antecedent, g.consequent) if isinstance(g, Implies) else g.subs)]
        kind, ops = _operands(g, kids)
        pending[slot] = (LinExpr.var(name), kind, ops, f"z.{tag}.{idx}")
        return LinExpr.var(name)

    pending: list = []
    out.root = walk(f)
    for s, kind, ops, sel in pending:
        if mode == DLR_MODE:
            _dlr_gadget(out, s, kind, ops)
        else:
            _milp_gadget(out, s, kind, ops, sel)
    return out


def aux_values(f: Formula, point, tag: str = "0") -> dict:
    """Values every auxiliary takes when the logic variables are ``point``.
    Mirrors :func:`linearize`'s naming; used to seed and check encodings."""
    values = {}
    counter = itertools.count()

    def walk(g):
        idx = next(counter)
        if isinstance(g, (Const, Var)):
            return
        if isinstance(g, Neg):
            walk(g.sub)
            return
        for h in (g.antecedent, g.consequent) if isinstance(g, Implies) else g.subs:
            walk(h)
        values[f"s.{tag}.{idx}"] = evaluate(g, point)

    walk(f)
    return values


# --- instance-level encodings --------------------------------------------------


def relaxation_names(inst: Instance) -> list[str]:
    """``y1..ym`` unless a logic variable already uses that shape."""
    clash = any(re.fullmatch(r"y\d+", v) for v in inst.variables)
    fmt = "y.{}" if clash else "y{}"
    return [fmt.format(i) for i in range(1, len(inst.soft) + 1)]


def formula_tags(inst: Instance) -> tuple[list[str], list[str]]:
    return [f"h{i}" for i in range(1, len(inst.hard) + 1)], [f"f{i}" for i in range(1, len(inst.soft) + 1)]


def encode_dlr(inst: Instance, bound: int) -> DLRSystem:
    """Satisfiable iff H holds and at most ``bound`` soft formulas fail.

    Each soft formula gets a 0/1 indicator ``y_i`` (forced by the DLR
    ``y_i = 0 v y_i = 1``) linked by ``[phi_i] + y_i >= 1``. The gadget
    disjunctions of a soft formula lead with ``y_i = 1``: a relaxed formula's
    value is irrelevant, so its min/max cases need not be enumerated.
    """
    if not 0 <= bound <= len(inst.soft):
        raise BoundRange(f"bound {bound} outside 0..{len(inst.soft)}")
    singles: list[Relation] = []
    gadgets: list[DLR] = []
    indicators: list[DLR] = []
    hard_tags, soft_tags = formula_tags(inst)
    for f, tag in zip(inst.hard, hard_tags):
        lin = linearize(f, DLR_MODE, tag)
        singles.extend(lin.relations)
        singles.append(ge(lin.root, 1))
        gadgets.extend(lin.disjunctions)
    ys = relaxation_names(inst)
    for f, tag, y in zip(inst.soft, soft_tags, ys):
        lin = linearize(f, DLR_MODE, tag)
        singles.extend(lin.relations)
        singles.append(ge(lin.root + LinExpr.var(y), 1))
        indicators.append(DLR((eq(y, 0), eq(y, 1))))
        # once y_i = 1 the formula is relaxed and its gadgets need no case split
        escape = eq(y, 1)
        gadgets.extend(DLR((escape,) + d.disjuncts) for d in lin.disjunctions)
    if ys:
        singles.append(le(sum((LinExpr.var(y) for y in ys), ZERO), bound))
    box = {v: UNIT for v in inst.variables}
    return DLRSystem(tuple(DLR((r,)) for r in singles) + tuple(indicators) + tuple(gadgets), box)


@dataclass
class MilpModel:
    """Minimise ``objective`` subject to ``constraints``; every variable lies
    in [0, 1] and ``binaries`` must be integral."""

    objective: LinExpr
    constraints: list
    binaries: list
    continuous: list
    relaxation: list = field(default_factory=list)  # the y_i, in soft order

    @property
    def box(self) -> dict:
        return {v: UNIT for v in self.continuous + self.binaries}


def encode_milp(inst: Instance) -> MilpModel:
    """Minimise the number of relaxed soft formulas.

    A soft formula's relaxed form ``¬phi_i → y_i`` linearises to
    ``y_i >= 1 - [phi_i]``; hard formulas need ``[phi] >= 1``.
    """
    constraints: list[Relation] = []
    selectors: list[str] = []
    aux: list[str] = []
    hard_tags, soft_tags = formula_tags(inst)
    for f, tag in zip(inst.hard, hard_tags):
        lin = linearize(f, MILP_MODE, tag)
        constraints.extend(lin.relations)
        constraints.append(ge(lin.root, 1))
        selectors += lin.selectors
        aux += lin.aux_vars
    ys = relaxation_names(inst)
    for f, tag, y in zip(inst.soft, soft_tags, ys):
        lin = linearize(f, MILP_MODE, tag)
        constraints.extend(lin.relations)
        constraints.append(ge(LinExpr.var(y), 1 - lin.root))
        selectors += lin.selectors
        aux += lin.aux_vars
    objective = sum((LinExpr.var(y) for y in ys), ZERO)
    return MilpModel(objective, constraints, ys + selectors, list(inst.variables) + aux, ys)


# --- WCSP ----------------------------------------------------------------------


def grid(k: int) -> list[Fraction]:
    """T_k = {0, 1/k, ..., 1}."""
    if k < 1:
        raise ValueError("grid resolution k must be at least 1")
    return [Fraction(i, k) for i in range(k + 1)]


@dataclass
class WcspInstance:
    """One WCSP variable per formula, whose values are tuples of truth degrees
    for that formula's logic variables (``scopes``)."""

    names: list
    scopes: list
    domains: list
    unary: list  # unary[i][a] cost of value a of variable i
    binary: dict  # (i, j) with i < j -> table[a][b]
    top: int
    k: int

    def cost(self, values: Sequence[int]) -> int:
        total = sum(self.unary[i][a] for i, a in enumerate(values))
        for (i, j), table in self.binary.items():
            total += table[values[i]][values[j]]
        return total


def encode_wcsp(inst: Instance, k: int, top: int | None = None, limit: int = 10**6) -> WcspInstance:
    """Soft falsification costs 1, hard falsification costs ``top``, and
    any two formulas sharing logic variables must agree on them (else top).
    ``top`` defaults to ``|S| + 1``, the smallest value no soft total reaches."""
    if top is None:
        top = len(inst.soft) + 1
    if top <= len(inst.soft):
        raise ValueError("top must exceed the number of soft formulas")
    values = grid(k)
    hard_tags, soft_tags = formula_tags(inst)
    names, scopes, domains, unary = [], [], [], []
    for f, tag, is_hard in [(f, t, True) for f, t in zip(inst.hard, hard_tags)] + [
        (f, t, False) for f, t in zip(inst.soft, soft_tags)
    ]:
        scope = tuple(sorted(variables(f)))
        if len(values) ** len(scope) > limit:
            raise DomainBlowup(f"formula {tag} has {len(values)}^{len(scope)} grid tuples (limit {limit})")
        dom = list(itertools.product(values, repeat=len(scope)))
        fail = top if is_hard else 1
        unary.append([0 if evaluate(f, dict(zip(scope, t))) == 1 else fail for t in dom])
        names.append(tag)
        scopes.append(scope)
        domains.append(dom)
    binary = {}
    for i, j in itertools.combinations(range(len(scopes)), 2):
        shared = sorted(set(scopes[i]) & set(scopes[j]))
        if not shared:
            continue
        pi = [scopes[i].index(v) for v in shared]
        pj = [scopes[j].index(v) for v in shared]
        keys_j = [tuple(t[p] for p in pj) for t in domains[j]]
        table = []
        for t in domains[i]:
            key = tuple(t[p] for p in pi)
            table.append([0 if kj == key else top for kj in keys_j])
        binary[(i, j)] = table
    return WcspInstance(names, scopes, domains, unary, binary, top, k)


def decode_wcsp(w: WcspInstance, values: Sequence[int]) -> dict:
    """Merge the chosen tuples into one logic assignment."""
    point = {}
    for scope, dom, a in zip(w.scopes, w.domains, values):
        for v, q in zip(scope, dom[a]):
            if point.setdefault(v, q) != q:
                raise InconsistentDecode(f"variable {v} decoded as both {point[v]} and {q}")
    return point


# --- exactness check -----------------------------------------------------------


def root_admits(f: Formula, point, value, mode: str = DLR_MODE) -> bool:
    """Can the linearisation of ``f`` reach ``root = value`` with the logic
    variables fixed to ``point``? Exactness means this holds for
    ``value == evaluate(f, point)`` and for no other value."""
    from .feasibility import dlr_satisfiable
    from .milp import branch_and_bound

    lin = linearize(f, mode)
    pins = [eq(LinExpr.var(v), point[v]) for v in sorted(variables(f))]
    pins.append(eq(lin.root, value))
    if mode == DLR_MODE:
        return bool(dlr_satisfiable(DLRSystem([DLR((r,)) for r in pins] + lin.dlrs())))
    box = {v: UNIT for v in list(variables(f)) + lin.variables}
    _, found = branch_and_bound(ZERO, lin.relations + pins, lin.selectors, box)
    return found is not None


def pin_test(f: Formula, point, mode: str = DLR_MODE, offset=Fraction(1, 7)) -> bool:
    """Root pinned to the true degree is feasible; pinned ``offset`` away is not."""
    value = evaluate(f, point)
    return root_admits(f, point, value, mode) and not root_admits(f, point, value + offset, mode)
