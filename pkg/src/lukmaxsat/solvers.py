"""End-to-end fuzzy (P)MaxSAT procedures.

All of them return a :class:`Solution` whose witness is re-verified against
the instance on construction, so a solver bug surfaces as
:class:`~lukmaxsat.errors.WitnessMismatch` instead of a wrong count.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import InitVar, dataclass, field
from fractions import Fraction

from .encoders import MILP_MODE, encode_dlr, encode_milp, grid, linearize, decode_wcsp, WcspInstance
from .errors import NotSimpleForm, TooLarge, WitnessMismatch
from .feasibility import dlr_satisfiable, feasible
from .forms import FormClass, as_simple_clause, classify
from .linear import LinExpr, UNIT, ge
from .logic import Formula, Instance, count_satisfied, evaluate, variables
from .milp import branch_and_bound

OPTIMAL = "optimal"
HARD_UNSAT = "hard_unsat"


class SearchStrategy(enum.Enum):
    UP = "up"
    DOWN = "down"
    BINARY = "binary"


@dataclass(frozen=True)
class Solution:
    status: str
    witness: dict | None
    soft_satisfied: int
    method: str
    info: dict = field(default_factory=dict, compare=False)
    instance: InitVar[Instance | None] = None

    def __post_init__(self, instance):
        if self.status == OPTIMAL:
            if self.witness is None:
                raise WitnessMismatch("optimal solution without a witness")
            if instance is not None:
                got = count_satisfied(instance, self.witness)
                if got != (True, self.soft_satisfied):
                    raise WitnessMismatch(
                        f"{self.method}: witness gives {got}, claimed (True, {self.soft_satisfied})"
                    )
        elif self.status != HARD_UNSAT:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def falsified(self) -> int | None:
        return self.info.get("falsified")


def _hard_unsat(method, **info):
    return Solution(HARD_UNSAT, None, 0, method, info)


def search_min(pred, m: int, strategy: SearchStrategy = SearchStrategy.UP):
    """Smallest k in 0..m with ``pred(k)`` truthy, for monotone ``pred``.

    Returns ``(k, pred(k))`` or ``(None, None)`` when even ``pred(m)`` fails.
    """
    if strategy is SearchStrategy.UP:
        for k in range(m + 1):
            r = pred(k)
            if r:
                return k, r
        return None, None
    if strategy is SearchStrategy.DOWN:
        r = pred(m)
        if not r:
            return None, None
        k = m
        while k > 0:
            r2 = pred(k - 1)
            if not r2:
                break
            k, r = k - 1, r2
        return k, r
    if strategy is SearchStrategy.BINARY:
        r = pred(m)
        if not r:
            return None, None
        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi) // 2
            r2 = pred(mid)
            if r2:
                hi, r = mid, r2
            else:
                lo = mid + 1
        return hi, r
    raise ValueError(f"unknown strategy {strategy!r}")


def _restrict(point, names):
    return {v: Fraction(point[v]) for v in names}


# --- grid oracle ---------------------------------------------------------------


def solve_bruteforce(inst: Instance, k: int, limit: int = 10**7) -> Solution:
    """Exhaustive search over T_k-valued assignments; the toolkit's oracle.

    Ties go to the lexicographically smallest witness in variable order.
    """
    values = grid(k)
    names = inst.variables
    if len(values) ** len(names) > limit:
        raise TooLarge(f"{len(values)}^{len(names)} grid points exceed the limit {limit}")
    best, best_point = -1, None
    for combo in itertools.product(values, repeat=len(names)):
        point = dict(zip(names, combo))
        hard_ok, n = count_satisfied(inst, point)
        if hard_ok and n > best:
            best, best_point = n, point
            if n == len(inst.soft):
                break
    if best_point is None:
        return _hard_unsat("bruteforce", k=k)
    return Solution(OPTIMAL, best_point, best, "bruteforce", {"k": k, "falsified": len(inst.soft) - best}, inst)


# --- DLR bound iteration -------------------------------------------------------


def solve_dlr(inst: Instance, strategy: SearchStrategy = SearchStrategy.UP) -> Solution:
    """Smallest bound B such that the DLR encoding with ``sum(y) <= B`` is
    satisfiable; ``|S| - B`` soft formulas are then satisfied."""
    calls = []

    def pred(bound):
        calls.append(bound)
        return dlr_satisfiable(encode_dlr(inst, bound))

    bound, res = search_min(pred, len(inst.soft), strategy)
    if bound is None:
        return _hard_unsat("dlr", bounds_tried=calls)
    witness = _restrict(res.witness, inst.variables)
    return Solution(
        OPTIMAL,
        witness,
        len(inst.soft) - bound,
        "dlr",
        {"falsified": bound, "strategy": strategy.value, "bounds_tried": calls},
        inst,
    )


# --- MILP ----------------------------------------------------------------------


def solve_milp(inst: Instance) -> Solution:
    """Branch and bound on the MILP encoding (minimise the relaxation count)."""
    model = encode_milp(inst)
    stats = {}
    value, point = branch_and_bound(
        model.objective, model.constraints, model.binaries, model.box, maximize=False, integral_objective=True, stats=stats
    )
    if point is None:
        return _hard_unsat("milp")
    falsified = int(value)
    info = {"falsified": falsified, "objective": falsified, "nodes": stats["nodes"]}
    return Solution(OPTIMAL, _restrict(point, inst.variables), len(inst.soft) - falsified, "milp", info, inst)


# --- WCSP ----------------------------------------------------------------------


def solve_wcsp(w: WcspInstance, inst: Instance) -> Solution:
    """Depth-first branch and bound over the per-formula tuple domains.

    The bound is the accumulated cost plus the cheapest unary cost of every
    unassigned variable (all costs are nonnegative).
    """
    n = len(w.domains)
    partners = [[] for _ in range(n)]  # partners[j] = [(i, table)] with i < j
    for (i, j), table in w.binary.items():
        partners[j].append((i, table))
    min_unary = [min(u) if u else 0 for u in w.unary]
    rest = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        rest[i] = rest[i + 1] + min_unary[i]

    best = [w.top, None]
    values = [0] * n

    def search(j, acc):
        if j == n:
            best[0], best[1] = acc, list(values)
            return
        unary = w.unary[j]
        for a in range(len(w.domains[j])):
            cost = acc + unary[a]
            if cost + rest[j + 1] >= best[0]:
                continue
            for i, table in partners[j]:
                cost += table[values[i]][a]
            if cost + rest[j + 1] >= best[0]:
                continue
            values[j] = a
            search(j + 1, cost)

    search(0, 0)
    if best[1] is None:
        return _hard_unsat("wcsp", k=w.k)
    point = decode_wcsp(w, best[1])
    cost = best[0]
    return Solution(OPTIMAL, point, len(inst.soft) - cost, "wcsp", {"k": w.k, "falsified": cost, "cost": cost}, inst)


# --- iterative relaxation for simple Ł-clausal forms --------------------------


def clause_relation(f: Formula):
    """A simple clause l_1 ⊕ ... ⊕ l_r is satisfied iff sum([l_j]) >= 1."""
    clause = as_simple_clause(f)
    total = LinExpr()
    for lit in clause.literals:
        x = LinExpr.var(lit.variable)
        total = total + ((1 - x) if lit.negated else x)
    return ge(total, 1)


def solve_simple_iterative(inst: Instance, strategy: SearchStrategy = SearchStrategy.UP) -> Solution:
    """Relaxation loop for simple Ł-clausal instances without hard formulas.

    ``pred(k)`` asks whether some choice of at most ``k`` clauses to drop
    leaves a jointly satisfiable rest; clauses are kept or dropped left to
    right and a kept prefix is abandoned as soon as it is infeasible.
    """
    if inst.hard:
        raise NotSimpleForm("the iterative relaxation handles soft clauses only")
    if classify(inst) is not FormClass.SIMPLE_L_CLAUSAL:
        raise NotSimpleForm("instance is not in simple Ł-clausal form")
    rels = [clause_relation(f) for f in inst.soft]
    box = {v: UNIT for v in inst.variables}
    m = len(rels)
    start = feasible([], box).witness

    def pred(k):
        kept = []

        def rec(i, drops, witness):
            if i == m:
                return witness
            rel = rels[i]
            if rel.holds(witness):
                w = witness
            else:
                res = feasible(kept + [rel], box)
                w = res.witness if res else None
            if w is not None:
                kept.append(rel)
                found = rec(i + 1, drops, w)
                kept.pop()
                if found is not None:
                    return found
            if drops < k:
                return rec(i + 1, drops + 1, witness)
            return None

        return rec(0, 0, start)

    k_opt, witness = search_min(pred, m, strategy)
    return Solution(
        OPTIMAL,
        _restrict(witness, inst.variables),
        m - k_opt,
        "simple",
        {"falsified": k_opt, "k_opt": k_opt, "strategy": strategy.value},
        inst,
    )


# --- maximum truth degree ------------------------------------------------------


def solve_maxdegree(f: Formula) -> tuple[Fraction, dict]:
    """Exact maximum of [f] over all assignments, with a witness."""
    lin = linearize(f, MILP_MODE)
    names = sorted(variables(f))
    box = {v: UNIT for v in names + lin.aux_vars + lin.selectors}
    value, point = branch_and_bound(lin.root, lin.relations, lin.selectors, box, maximize=True)
    witness = _restrict(point, names)
    if evaluate(f, witness) != value:
        raise WitnessMismatch(f"witness evaluates to {evaluate(f, witness)}, optimum claimed {value}")
    return value, witness
