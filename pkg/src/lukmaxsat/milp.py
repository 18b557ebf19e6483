"""Depth-first branch and bound over binary variables with exact LP bounds."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .feasibility import optimize
from .linear import LinExpr, Relation
from .simplex import OPTIMAL


def branch_and_bound(
    objective: LinExpr,
    constraints: Sequence[Relation],
    binaries: Sequence[str],
    box: dict,
    maximize: bool = False,
    integral_objective: bool = False,
    incumbent: Fraction | None = None,
    stats: dict | None = None,
):
    """Return ``(value, point)`` of an exact optimum, or ``(None, None)``.

    Nodes are explored depth first; at each node the LP relaxation (binaries
    relaxed to [lo, hi] of their box) bounds the subtree. With
    ``integral_objective`` the objective is known to be integer at every
    integral point, so a node survives only if it can beat the incumbent by
    at least one. ``incumbent`` seeds the bound without a point. If ``stats``
    is given, the number of explored nodes is stored under ``"nodes"``.
    """
    constraints = list(constraints)
    sign = 1 if maximize else -1
    best_value = incumbent
    best_point = None
    nodes = 0

    def promising(lp_value):
        if best_value is None:
            return True
        if integral_objective:
            bound = math.floor(lp_value) if maximize else math.ceil(lp_value)
        else:
            bound = lp_value
        return sign * (bound - best_value) > 0

    stack = [{}]
    while stack:
        fixed = stack.pop()
        nodes += 1
        node_box = dict(box)
        for v, val in fixed.items():
            node_box[v] = (val, val)
        status, value, point = optimize(objective, constraints, node_box, maximize=maximize)
        if status != OPTIMAL or not promising(value):
            continue
        frac = next((v for v in binaries if point[v].denominator != 1), None)
        if frac is None:
            best_value, best_point = value, point
            continue
        near = 1 if point[frac] >= Fraction(1, 2) else 0
        stack.append({**fixed, frac: Fraction(1 - near)})
        stack.append({**fixed, frac: Fraction(near)})
    if stats is not None:
        stats["nodes"] = nodes
    if best_point is None:
        return None, None
    return best_value, best_point
