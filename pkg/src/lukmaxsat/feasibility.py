"""Exact feasibility and optimisation for conjunctions of linear relations,
and satisfiability of DLR systems by depth-first disjunct branching.

The conjunctive core presolves (fixed variables, equality substitution,
single-variable bounds, paired opposite inequalities) and hands the rest to
the exact simplex in :mod:`lukmaxsat.simplex`. Strict inequalities are decided
by maximising a shared slack ``t`` over them: the system is feasible iff the
optimum is positive. :func:`fourier_motzkin` is a second, independent
decision procedure used to cross-check the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import UnsupportedRelation
from .linear import DLRSystem, LinExpr, Relation, UNIT, in_box, lt, gt
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, simplex

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: dict | None = None

    def __bool__(self):
        return self.feasible


INFEASIBLE_RESULT = FeasibilityResult(False)


def certified(witness, relations: Iterable[Relation], box) -> FeasibilityResult:
    """Build a Feasible result, re-checking the witness against every input."""
    for r in relations:
        if not r.holds(witness):
            raise AssertionError(f"witness violates {r}")
    if not in_box(witness, box):
        raise AssertionError("witness leaves the variable box")
    return FeasibilityResult(True, dict(witness))


# --- canonical rows ----------------------------------------------------------
# A row is (coeffs, kind, rhs) meaning  sum(coeffs[v] * v)  kind  rhs  with
# kind in {"<=", "<", "=="}.


def _rows(relations: Iterable[Relation]):
    out = []
    for r in relations:
        d = r.lhs - r.rhs
        coeffs, rhs = dict(d.terms), -d.const
        op = r.op
        if op in (">=", ">"):
            coeffs = {v: -c for v, c in coeffs.items()}
            rhs = -rhs
            op = "<=" if op == ">=" else "<"
        elif op == "=":
            op = "=="
        elif op == "!=":
            raise UnsupportedRelation("'!=' must be split into '<' / '>' before reaching the conjunctive core")
        out.append((coeffs, op, rhs))
    return out


def _full_box(relations, box, extra=()):
    full = {}
    names = set(extra)
    for r in relations:
        names |= r.variables()
    if box:
        names |= set(box)
    for v in sorted(names):
        lo, hi = (box or {}).get(v, UNIT)
        full[v] = (None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
    return full


def _const_ok(kind, rhs):
    return {"<=": 0 <= rhs, "<": 0 < rhs, "==": rhs == 0}[kind]


def _substitute(coeffs, rhs, var, expr, const):
    """Replace ``var`` by ``expr + const`` in a row; returns new (coeffs, rhs)."""
    a = coeffs.get(var)
    if a is None:
        return coeffs, rhs
    out = dict(coeffs)
    del out[var]
    for v, c in expr.items():
        nv = out.get(v, _ZERO) + a * c
        if nv:
            out[v] = nv
        else:
            out.pop(v, None)
    return out, rhs - a * const


class _Infeasible(Exception):
    pass


def _presolve(rows, box, objective=None):
    """Shrink the system. Returns (rows, box, eliminations, objective) where
    eliminations is a list of (var, expr, const) to back-substitute in
    reverse order and objective is (coeffs, const) after substitution."""
    box = {v: list(b) for v, b in box.items()}
    elim = []
    obj = (dict(objective[0]), objective[1]) if objective else None
    rows = list(rows)

    def eliminate(var, expr, const):
        nonlocal rows, obj
        lo, hi = box.pop(var)
        new = []
        for coeffs, kind, rhs in rows:
            coeffs, rhs = _substitute(coeffs, rhs, var, expr, const)
            new.append((coeffs, kind, rhs))
        if lo is not None:
            new.append(({v: -c for v, c in expr.items()}, "<=", const - lo))
        if hi is not None:
            new.append((dict(expr), "<=", hi - const))
        rows = new
        if obj is not None and var in obj[0]:
            c, k = _substitute(obj[0], _ZERO, var, expr, const)
            obj = (c, obj[1] - k)
        elim.append((var, expr, const))

    while True:
        changed = False
        for v in sorted(box):
            lo, hi = box[v]
            if lo is not None and hi is not None and lo == hi:
                eliminate(v, {}, lo)
                changed = True

        kept = []
        pairs: dict = {}
        strict = []
        for coeffs, kind, rhs in rows:
            if not coeffs:
                if not _const_ok(kind, rhs):
                    raise _Infeasible
                continue
            if kind == "<":
                strict.append((coeffs, kind, rhs))
                continue
            if kind == "==":
                kept.append((coeffs, kind, rhs))
                continue
            if len(coeffs) == 1:
                (v, a), = coeffs.items()
                bound = rhs / a
                lo, hi = box[v]
                if a > 0 and (hi is None or bound < hi):
                    box[v][1] = bound
                    changed = True
                elif a < 0 and (lo is None or bound > lo):
                    box[v][0] = bound
                    changed = True
                lo, hi = box[v]
                if lo is not None and hi is not None and lo > hi:
                    raise _Infeasible
                continue
            first = min(coeffs)
            scale = abs(coeffs[first])
            sign = 1 if coeffs[first] > 0 else -1
            key = tuple(sorted((v, c * sign / scale) for v, c in coeffs.items()))
            bound = rhs / scale
            up, low = pairs.get(key, (None, None))
            if sign > 0:
                up = bound if up is None else min(up, bound)
            else:
                low = -bound if low is None else max(low, -bound)
            pairs[key] = (up, low)

        for key, (up, low) in pairs.items():
            coeffs = dict(key)
            if up is not None and low is not None:
                if low > up:
                    raise _Infeasible
                if low == up:
                    kept.append((coeffs, "==", up))
                    continue
            if up is not None:
                kept.append((coeffs, "<=", up))
            if low is not None:
                kept.append(({v: -c for v, c in coeffs.items()}, "<=", -low))
        rows = kept + strict

        equality = next((r for r in rows if r[1] == "=="), None)
        if equality is not None:
            coeffs, _, rhs = equality
            rows = [r for r in rows if r is not equality]
            var = min(coeffs)
            a = coeffs[var]
            expr = {v: -c / a for v, c in coeffs.items() if v != var}
            eliminate(var, expr, rhs / a)
            changed = True

        if not changed:
            return rows, {v: tuple(b) for v, b in box.items()}, elim, obj


def _back_substitute(point, elim):
    for var, expr, const in reversed(elim):
        point[var] = const + sum((c * point[v] for v, c in expr.items()), _ZERO)
    return point


def _default_value(lo, hi):
    if lo is not None:
        return lo
    if hi is not None:
        return hi
    return _ZERO


def _run_simplex(rows, box, objective=None):
    """LP over presolved rows. Returns (status, point, value) in the caller's
    variables; strict rows are handled with a shared slack."""
    names = {v for coeffs, _, _ in rows for v in coeffs}
    if objective:
        names |= set(objective)
    names = sorted(names)
    col = {}
    ncols = 0
    # x = shift + sign * column (or x = col_plus - col_minus when free)
    mapping = {}
    lp_rows = []
    for v in names:
        lo, hi = box[v]
        if lo is not None:
            mapping[v] = (lo, ((ncols, 1),))
            if hi is not None:
                lp_rows.append(({ncols: _ONE}, "<=", hi - lo))
            ncols += 1
        elif hi is not None:
            mapping[v] = (hi, ((ncols, -1),))
            ncols += 1
        else:
            mapping[v] = (_ZERO, ((ncols, 1), (ncols + 1, -1)))
            ncols += 2

    def translate(coeffs, rhs):
        out = {}
        for v, c in coeffs.items():
            shift, cols = mapping[v]
            rhs -= c * shift
            for j, s in cols:
                out[j] = out.get(j, _ZERO) + c * s
        return out, rhs

    t_col = None
    for coeffs, kind, rhs in rows:
        out, b = translate(coeffs, rhs)
        if kind == "<":
            if t_col is None:
                t_col = ncols
                ncols += 1
            out[t_col] = _ONE
            kind = "<="
        lp_rows.append((out, kind, b))

    obj_cols = None
    if t_col is not None:
        if objective is not None:
            raise UnsupportedRelation("strict inequalities are not supported when optimising")
        lp_rows.append(({t_col: _ONE}, "<=", _ONE))
        obj_cols = {t_col: _ONE}
    elif objective is not None:
        obj_cols, _ = translate(objective, _ZERO)

    status, x, value = simplex(ncols, lp_rows, obj_cols)
    if status == INFEASIBLE:
        return INFEASIBLE, None, None
    if status == UNBOUNDED and t_col is None and objective is not None:
        return UNBOUNDED, None, None
    if t_col is not None and not (status == OPTIMAL and value > 0):
        return INFEASIBLE, None, None
    point = {}
    for v in names:
        shift, cols = mapping[v]
        point[v] = shift + sum((s * x[j] for j, s in cols), _ZERO)
    for v, (lo, hi) in box.items():
        if v not in point:
            point[v] = _default_value(lo, hi)
    return OPTIMAL, point, None


def feasible(conjunction: Sequence[Relation], box: Mapping | None = None, method: str = "simplex") -> FeasibilityResult:
    """Decide a conjunction of linear relations over box-bounded rationals.

    Variables missing from ``box`` range over [0, 1]. ``!=`` is rejected;
    split it at the DLR level. ``method="fm"`` uses Fourier-Motzkin instead.
    """
    conjunction = list(conjunction)
    rows = _rows(conjunction)
    full = _full_box(conjunction, box)
    if method == "fm":
        point = fourier_motzkin(rows, full)
    elif method == "simplex":
        point = _solve_rows(rows, full)
    else:
        raise ValueError(f"unknown method {method!r}")
    if point is None:
        return INFEASIBLE_RESULT
    return certified(point, conjunction, full)


def _solve_rows(rows, full):
    try:
        rest, rbox, elim, _ = _presolve(rows, full)
    except _Infeasible:
        return None
    status, point, _ = _run_simplex(rest, rbox)
    if status != OPTIMAL:
        return None
    return _back_substitute(point, elim)


def optimize(objective: LinExpr, constraints: Sequence[Relation], box: Mapping | None = None, maximize: bool = True):
    """Exact LP optimum of ``objective`` over non-strict relations.

    Returns ``(status, value, witness)`` with status one of "optimal",
    "infeasible", "unbounded".
    """
    constraints = list(constraints)
    rows = _rows(constraints)
    full = _full_box(constraints, box, objective.variables())
    sign = 1 if maximize else -1
    obj = ({v: sign * c for v, c in objective.terms.items()}, _ZERO)
    try:
        rest, rbox, elim, obj = _presolve(rows, full, obj)
    except _Infeasible:
        return INFEASIBLE, None, None
    status, point, _ = _run_simplex(rest, rbox, obj[0] or None)
    if status != OPTIMAL:
        return status, None, None
    point = _back_substitute(point, elim)
    certified(point, constraints, full)
    return OPTIMAL, objective.value(point), point


# --- Fourier-Motzkin ---------------------------------------------------------


def _fm_key(coeffs, kind, rhs):
    return (tuple(sorted(coeffs.items())), kind, rhs)


def fourier_motzkin(rows, box):
    """Eliminate variables one by one; returns a witness dict or None.

    Rows are canonical ``(coeffs, kind, rhs)`` with ``kind`` in
    ``{"<=", "<", "=="}``. Strictness propagates: a combination is strict if
    either parent is.
    """
    work = []
    for coeffs, kind, rhs in rows:
        if not coeffs:
            if not _const_ok(kind, rhs):
                return None
            continue
        if kind == "==":
            work.append((dict(coeffs), "<=", rhs))
            work.append(({v: -c for v, c in coeffs.items()}, "<=", -rhs))
        else:
            work.append((dict(coeffs), kind, rhs))
    for v, (lo, hi) in box.items():
        if lo is not None:
            work.append(({v: -_ONE}, "<=", -lo))
        if hi is not None:
            work.append(({v: _ONE}, "<=", hi))

    order = sorted(box)
    stages = []
    for v in order:
        pos, neg, rest = [], [], []
        for row in work:
            a = row[0].get(v)
            if a is None:
                rest.append(row)
            elif a > 0:
                pos.append(row)
            else:
                neg.append(row)
        stages.append((v, pos, neg))
        combined = {}
        for row in rest:
            combined.setdefault(_fm_key(*row), row)
        for pc, pk, pr in pos:
            for nc, nk, nr in neg:
                a, b = pc[v], -nc[v]
                coeffs = {}
                for u in set(pc) | set(nc):
                    if u == v:
                        continue
                    c = b * pc.get(u, _ZERO) + a * nc.get(u, _ZERO)
                    if c:
                        coeffs[u] = c
                kind = "<" if "<" in (pk, nk) else "<="
                row = (coeffs, kind, b * pr + a * nr)
                combined.setdefault(_fm_key(*row), row)
        work = []
        for row in combined.values():
            if not row[0]:
                if not _const_ok(row[1], row[2]):
                    return None
            else:
                work.append(row)

    point = {}
    for v, pos, neg in reversed(stages):
        hi, hi_strict, lo, lo_strict = None, False, None, False
        for coeffs, kind, rhs in pos:
            a = coeffs[v]
            val = (rhs - sum(c * point[u] for u, c in coeffs.items() if u != v)) / a
            if hi is None or val < hi or (val == hi and kind == "<"):
                hi, hi_strict = val, kind == "<"
        for coeffs, kind, rhs in neg:
            a = coeffs[v]
            val = (rhs - sum(c * point[u] for u, c in coeffs.items() if u != v)) / a
            if lo is None or val > lo or (val == lo and kind == "<"):
                lo, lo_strict = val, kind == "<"
        if lo is not None and hi is not None:
            if lo == hi and not (lo_strict or hi_strict):
                point[v] = lo
            else:
                point[v] = (lo + hi) / 2
        elif lo is not None:
            point[v] = lo + 1 if lo_strict else lo
        elif hi is not None:
            point[v] = hi - 1 if hi_strict else hi
        else:
            point[v] = _ZERO
    return point


# --- DLR satisfiability ------------------------------------------------------


def _split_ne(rel: Relation):
    if rel.op == "!=":
        return [lt(rel.lhs, rel.rhs), gt(rel.lhs, rel.rhs)]
    return [rel]


def _pin(rel: Relation):
    """(var, value) if ``rel`` reads ``var = constant``, else None."""
    if rel.op != "=":
        return None
    d = rel.lhs - rel.rhs
    if len(d.terms) != 1:
        return None
    (v, c), = d.terms.items()
    return v, -d.const / c


def dlr_satisfiable(sys: DLRSystem, method: str = "simplex") -> FeasibilityResult:
    """Lazy depth-first split over the disjunctions.

    Only a DLR that the current LP witness violates is branched on; its
    disjuncts are tried left to right, each added to the conjunction solved
    so far. A leaf is reached when the witness satisfies every DLR. A
    ``var = c`` disjunct that clashes with an earlier ``var = c'`` is dropped
    without an LP call.
    """
    base: list[Relation] = []
    choices: list[list[Relation]] = []
    for d in sys.dlrs:
        options = [r for rel in d.disjuncts for r in _split_ne(rel)]
        if len(options) == 1:
            base.extend(options)
        else:
            choices.append(options)

    root = feasible(base, sys.box, method)
    if not root:
        return INFEASIBLE_RESULT

    chosen: list[Relation] = []
    pins = dict(p for p in map(_pin, base) if p is not None)

    def search(witness):
        i = next((i for i, opts in enumerate(choices) if not any(r.holds(witness) for r in opts)), None)
        if i is None:
            return witness
        for rel in choices[i]:
            pin = _pin(rel)
            if pin is not None and pins.get(pin[0], pin[1]) != pin[1]:
                continue
            res = feasible(base + chosen + [rel], sys.box, method)
            if not res:
                continue
            chosen.append(rel)
            new_pin = pin is not None and pin[0] not in pins
            if new_pin:
                pins[pin[0]] = pin[1]
            found = search(res.witness)
            if new_pin:
                del pins[pin[0]]
            chosen.pop()
            if found is not None:
                return found
        return None

    witness = search(root.witness)
    if witness is None:
        return INFEASIBLE_RESULT
    if not sys.holds(witness):
        raise AssertionError("DLR witness does not satisfy the system")
    return FeasibilityResult(True, dict(witness))
