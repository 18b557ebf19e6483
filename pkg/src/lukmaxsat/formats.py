"""Writers for external solver formats and the witness read-back format.

All writers are byte-deterministic for a given model.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

from .encoders import MilpModel, WcspInstance
from .errors import FormulaSyntaxError
from .linear import LinExpr, write_dlr  # noqa: F401  (re-exported)
from .logic import truth_degree

_LP_LINE = 200  # CPLEX rejects lines longer than 510 characters


def _integral(coeffs: dict, rhs: Fraction):
    """Scale a row by the lcm of its denominators so LP text stays exact."""
    dens = [q.denominator for q in coeffs.values()] + [rhs.denominator]
    scale = math.lcm(*dens)
    return {v: int(c * scale) for v, c in coeffs.items()}, int(rhs * scale)


def _lp_terms(coeffs: dict) -> list[str]:
    out = []
    for v in sorted(coeffs):
        c = coeffs[v]
        mag = abs(c)
        body = v if mag == 1 else f"{mag} {v}"
        if not out:
            out.append(body if c > 0 else f"- {body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return out or ["0"]


def _wrap(head: str, terms: list[str], tail: str = "") -> list[str]:
    lines, cur = [], head
    for t in terms + ([tail] if tail else []):
        if len(cur) + 1 + len(t) > _LP_LINE and cur.strip():
            lines.append(cur)
            cur = "   " + t
        else:
            cur = f"{cur} {t}" if cur else t
    lines.append(cur)
    return lines


def write_lp(m: MilpModel) -> str:
    """CPLEX LP text: Minimize / Subject To / Bounds / Binary / End."""
    lines = ["Minimize"]
    obj, _ = _integral(dict(m.objective.terms), Fraction(0))
    lines += _wrap("obj:", _lp_terms(obj))
    lines.append("Subject To")
    ops = {"<=": "<=", ">=": ">=", "=": "=", "<": None, ">": None}
    for i, r in enumerate(m.constraints, start=1):
        op = ops[r.op]
        if op is None:
            raise ValueError("LP format has no strict inequalities")
        d: LinExpr = r.lhs - r.rhs
        coeffs, rhs = _integral(dict(d.terms), -d.const)
        lines += _wrap(f"c{i}:", _lp_terms(coeffs), f"{op} {rhs}")
    binaries = set(m.binaries)
    continuous = [v for v in m.continuous if v not in binaries]
    if continuous:
        lines.append("Bounds")
        lines += [f"0 <= {v} <= 1" for v in continuous]
    if m.binaries:
        lines.append("Binary")
        lines += list(m.binaries)
    lines.append("End")
    return "\n".join(lines) + "\n"


def _default_cost(costs):
    counts = Counter(costs)
    return min(counts, key=lambda c: (-counts[c], c))


def write_wcsp(w: WcspInstance, name: str = "fuzzymaxsat") -> str:
    """toulbar2 ``.wcsp`` text. Each cost function lists its default cost
    (the most frequent one) followed by the exceptional tuples."""
    nfun = len(w.unary) + len(w.binary)
    maxdom = max((len(d) for d in w.domains), default=0)
    lines = [f"{name} {len(w.domains)} {maxdom} {nfun} {w.top}"]
    lines.append(" ".join(str(len(d)) for d in w.domains))
    for i, costs in enumerate(w.unary):
        default = _default_cost(costs)
        rows = [f"{a} {c}" for a, c in enumerate(costs) if c != default]
        lines.append(f"1 {i} {default} {len(rows)}")
        lines += rows
    for (i, j), table in sorted(w.binary.items()):
        flat = [c for row in table for c in row]
        default = _default_cost(flat)
        rows = [f"{a} {b} {c}" for a, row in enumerate(table) for b, c in enumerate(row) if c != default]
        lines.append(f"2 {i} {j} {default} {len(rows)}")
        lines += rows
    return "\n".join(lines) + "\n"


def format_witness(point: dict) -> str:
    return "".join(f"{v} = {_q(point[v])}\n" for v in sorted(point))


def _q(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def read_witness(text: str) -> dict[str, Fraction]:
    """Parse ``variable = value`` lines (``#`` comments, blank lines allowed).

    Values may be decimals or fractions; this is how assignments produced by
    external solvers come back for verification.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep or not name.strip():
            raise FormulaSyntaxError("expected 'variable = value'", lineno, 1)
        try:
            out[name.strip()] = truth_degree(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormulaSyntaxError(str(exc), lineno, raw.index("=") + 2) from None
    return out
