import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lukmaxsat.errors import UnsupportedRelation
from lukmaxsat.feasibility import dlr_satisfiable, feasible, optimize
from lukmaxsat.linear import DLR, DLRSystem, LinExpr, Relation, eq, format_expr, ge, gt, le, lt, ne, write_dlr
from lukmaxsat.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, simplex

X, Y, Z = (LinExpr.var(n) for n in "xyz")


def test_linexpr_arithmetic():
    e = X + 2 * Y - X + F(1, 2)
    assert e.terms == {"y": 2}
    assert e.const == F(1, 2)
    assert e.value({"y": F(1, 4)}) == 1
    assert format_expr(Y - X + 1) == "-x + y + 1"
    assert X + Y == Y + X and hash(X + Y) == hash(Y + X)


def test_relation_holds():
    assert le(X, F(1, 2)).holds({"x": F(1, 2)})
    assert not lt(X, F(1, 2)).holds({"x": F(1, 2)})
    assert ne(X, Y).holds({"x": F(0), "y": F(1)})
    with pytest.raises(ValueError):
        Relation(X, "=<", Y)


# --- simplex -------------------------------------------------------------------


def test_simplex_statuses():
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    status, point, value = simplex(2, [({0: 1, 1: 2}, "<=", 4), ({0: 3, 1: 1}, "<=", 6)], {0: 1, 1: 1})
    assert status == OPTIMAL and value == F(14, 5) and point == [F(8, 5), F(6, 5)]
    assert simplex(1, [({0: 1}, "<=", -1)])[0] == INFEASIBLE
    assert simplex(1, [], {0: 1})[0] == UNBOUNDED
    status, point, _ = simplex(2, [({0: 1, 1: 1}, "==", 1), ({0: 1}, "<=", F(1, 3))])
    assert status == OPTIMAL and sum(point) == 1 and point[0] <= F(1, 3)


# --- conjunctive feasibility ---------------------------------------------------


@pytest.mark.parametrize("method", ["simplex", "fm"])
def test_feasibility_examples(method):
    assert not feasible([ge(X, F(1, 2)), le(X, F(3, 10))], method=method)
    res = feasible([ge(X + Y, 1), le(X, F(1, 4))], method=method)
    assert res and res.witness["x"] + res.witness["y"] >= 1 and res.witness["x"] <= F(1, 4)
    assert not feasible([gt(X, 0), lt(X, 0)], method=method)
    assert feasible([], method=method)


@pytest.mark.parametrize("method", ["simplex", "fm"])
def test_strict_and_box(method):
    # x < 1/2 and x > 1/2 - tiny region left by strictness
    assert feasible([gt(X, F(49, 100)), lt(X, F(1, 2))], method=method)
    assert not feasible([gt(X + Y, 2)], method=method)
    assert feasible([gt(X, 5)], box={"x": (None, None)}, method=method)
    res = feasible([eq(X, 3 * Y)], box={"x": (1, 1)}, method=method)
    assert res.witness == {"x": 1, "y": F(1, 3)}


def test_not_equal_is_rejected_by_core():
    with pytest.raises(UnsupportedRelation):
        feasible([ne(X, Y)])


def test_optimize():
    status, value, point = optimize(X + Y, [le(X + 2 * Y, F(3, 2))])
    assert status == OPTIMAL and value == F(5, 4) and point == {"x": 1, "y": F(1, 4)}
    status, value, _ = optimize(X - Y, [ge(X, Y)], maximize=False)
    assert value == 0
    assert optimize(X, [ge(X, 2)])[0] == INFEASIBLE


coef = st.sampled_from([-1, 0, 1])
const = st.sampled_from([F(i, 4) for i in range(-4, 9)])
op = st.sampled_from(["<", "<=", ">", ">=", "="])
relations = st.builds(
    lambda cx, cy, cz, o, c: Relation(cx * X + cy * Y + cz * Z, o, LinExpr.constant(c)), coef, coef, coef, op, const
)


@given(st.lists(relations, max_size=6))
def test_simplex_agrees_with_fourier_motzkin(rels):
    assert bool(feasible(rels)) == bool(feasible(rels, method="fm"))


# --- DLR -----------------------------------------------------------------------


def test_dlr_examples():
    sys = DLRSystem([DLR((eq(X, 0), eq(X, 1))), DLR((ge(X, F(1, 2)),))])
    res = dlr_satisfiable(sys)
    assert res and res.witness["x"] == 1
    assert not dlr_satisfiable(DLRSystem([DLR((ne(X, X),))]))
    assert dlr_satisfiable(DLRSystem([DLR((le(X, F(1, 3)),))]))


def test_dlr_ne_split():
    res = dlr_satisfiable(DLRSystem([DLR((ne(X, F(1, 2)),)), DLR((ge(X, F(1, 2)),))]))
    assert res and res.witness["x"] > F(1, 2)


def test_dlr_requires_disjuncts():
    with pytest.raises(ValueError):
        DLR(())


def test_write_dlr():
    sys = DLRSystem([DLR((le(X + Y, 1),)), DLR((eq(Y, 0), eq(Y, X - F(1, 2))))], box={"x": (F(-1), F(2))})
    assert write_dlr(sys) == (
        "# -1 <= x <= 2\n"
        "# 0 <= y <= 1\n"
        "x + y <= 1\n"
        "y = 0 v y = x - 1/2\n"
    )


dlrs = st.lists(relations, min_size=1, max_size=3).map(lambda rs: DLR(tuple(rs)))
GRID8 = [F(i, 8) for i in range(9)]


@given(st.lists(dlrs, min_size=1, max_size=4))
def test_dlr_grid_completeness(ds):
    sys = DLRSystem(ds)
    res = dlr_satisfiable(sys)
    if res:
        assert sys.holds(res.witness)
    else:
        names = sys.variables
        for combo in itertools.product(GRID8, repeat=len(names)):
            assert not sys.holds(dict(zip(names, combo)))


@given(st.lists(dlrs, min_size=1, max_size=3), dlrs)
def test_dlr_monotone(ds, extra):
    if not dlr_satisfiable(DLRSystem(ds)):
        assert not dlr_satisfiable(DLRSystem(ds + [extra]))


@given(st.lists(dlrs, min_size=1, max_size=3))
def test_dlr_methods_agree(ds):
    sys = DLRSystem(ds)
    assert bool(dlr_satisfiable(sys)) == bool(dlr_satisfiable(sys, method="fm"))
