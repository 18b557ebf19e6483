"""Exact two-phase primal simplex on sparse rational rows.

Solves ``max c.x  s.t.  A x (<= | ==) b,  x >= 0`` with Fraction arithmetic
and Bland's rule, so it always terminates and never rounds.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows  # list[dict[int, Fraction]]
        self.rhs = rhs  # list[Fraction]
        self.basis = basis  # list[int]
        self.ncols = ncols

    def pivot(self, r, c, obj):
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            prow = {k: v * inv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] *= inv
        b = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(c)
            if f is None:
                continue
            for k, v in prow.items():
                nv = row.get(k, _ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
            self.rhs[i] -= f * b
        # objective row: obj[0] holds reduced costs, obj[1] the current value
        f = obj[0].get(c)
        if f is not None:
            d = obj[0]
            for k, v in prow.items():
                nv = d.get(k, _ZERO) - f * v
                if nv:
                    d[k] = nv
                else:
                    del d[k]
            obj[1] += f * b
        self.basis[r] = c

    def optimise(self, obj, allowed):
        """Maximise; reduced costs d_j > 0 mean increasing x_j helps."""
        while True:
            entering = None
            for j in sorted(obj[0]):
                if obj[0][j] > 0 and allowed(j):
                    entering = j
                    break
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering, obj)


def simplex(n, constraints, objective=None):
    """Solve an LP over ``n`` nonnegative variables.

    ``constraints`` is a list of ``(coeffs, kind, rhs)`` with ``coeffs`` a
    dict from column index to Fraction and ``kind`` in ``{"<=", "=="}``.
    ``objective`` maps column index to coefficient and is maximised; ``None``
    asks for feasibility only.

    Returns ``(status, x, value)`` where ``x`` is a list of Fractions.
    """
    rows, rhs, basis = [], [], []
    ncols = n
    artificials = []
    for coeffs, kind, b in constraints:
        row = {j: Fraction(c) for j, c in coeffs.items() if c}
        b = Fraction(b)
        if kind == "<=":
            if b < 0:
                row = {j: -c for j, c in row.items()}
                b = -b
                row[ncols] = Fraction(-1)  # surplus
                ncols += 1
                row[ncols] = Fraction(1)
                artificials.append(ncols)
                basis.append(ncols)
            else:
                row[ncols] = Fraction(1)  # slack
                basis.append(ncols)
            ncols += 1
        elif kind == "==":
            if b < 0:
                row = {j: -c for j, c in row.items()}
                b = -b
            row[ncols] = Fraction(1)
            artificials.append(ncols)
            basis.append(ncols)
            ncols += 1
        else:
            raise ValueError(f"unsupported constraint kind {kind!r}")
        rows.append(row)
        rhs.append(b)

    tab = _Tableau(rows, rhs, basis, ncols)
    art = set(artificials)

    if art:
        # phase 1: maximise -sum(artificials)
        d: dict[int, Fraction] = {}
        value = _ZERO
        for i, bvar in enumerate(basis):
            if bvar in art:
                for k, v in rows[i].items():
                    if k not in art:
                        d[k] = d.get(k, _ZERO) + v
                value -= rhs[i]
        obj = [{k: v for k, v in d.items() if v}, value]
        tab.optimise(obj, lambda j: True)
        if obj[1] < 0:
            return INFEASIBLE, None, None
        # drive zero-valued artificials out of the basis
        keep = []
        for i in range(len(tab.rows)):
            if tab.basis[i] in art:
                col = next((k for k in sorted(tab.rows[i]) if k not in art), None)
                if col is None:
                    continue  # redundant row
                tab.pivot(i, col, [{}, _ZERO])
            keep.append(i)
        tab.rows = [{k: v for k, v in tab.rows[i].items() if k not in art} for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    status = OPTIMAL
    value = _ZERO
    if objective:
        c = {j: Fraction(v) for j, v in objective.items() if v}
        d = dict(c)
        value = _ZERO
        for i, bvar in enumerate(tab.basis):
            cb = c.get(bvar)
            if cb:
                for k, v in tab.rows[i].items():
                    nv = d.get(k, _ZERO) - cb * v
                    if nv:
                        d[k] = nv
                    else:
                        d.pop(k, None)
                value += cb * tab.rhs[i]
        for bvar in tab.basis:
            d.pop(bvar, None)
        obj = [d, value]
        status = tab.optimise(obj, lambda j: j not in art)
        value = obj[1]

    x = [_ZERO] * n
    for i, bvar in enumerate(tab.basis):
        if bvar < n:
            x[bvar] = tab.rhs[i]
    if status == UNBOUNDED:
        return UNBOUNDED, x, None
    if objective:
        value = sum((Fraction(objective.get(j, 0)) * x[j] for j in range(n)), _ZERO)
    return OPTIMAL, x, value
