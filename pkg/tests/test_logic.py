from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import NAMES, assignments, neg_product, formulas, four_clause_instance
from lukmaxsat.errors import BoundOrder, ConstantOutOfRange, UnboundVariable
from lukmaxsat.logic import (
    Const,
    Implies,
    Instance,
    Neg,
    StrongConj,
    StrongDisj,
    Var,
    WeakConj,
    WeakDisj,
    boolean_value,
    check_model,
    count_satisfied,
    evaluate,
    is_satisfied,
    make_assignment,
    strong_disj,
    truth_degree,
    variables,
)

x, y, z = Var("x"), Var("y"), Var("z")
I1 = make_assignment(x1=0, x2=0, x3=1)
I2 = make_assignment(x1=F(6, 10), x2=F(7, 10), x3=F(2, 10))


def test_neg_product_degrees():
    f = neg_product()
    assert evaluate(f, I1) == 1
    assert evaluate(f, I2) == F(9, 10)
    assert is_satisfied(f, I1)
    assert not is_satisfied(f, I2)


def test_tautology_and_constants():
    for t in (0, F(1, 3), 1):
        assert evaluate(StrongDisj((x, Neg(x))), {"x": F(t)}) == 1
    assert evaluate(Const(F(3, 10)), {}) == F(3, 10)
    assert is_satisfied(Const(F(1)), {})


def test_connective_closed_forms():
    a = {"x": F(1, 2), "y": F(3, 4), "z": F(1, 3)}
    assert evaluate(StrongDisj((x, y, z)), a) == 1
    assert evaluate(StrongConj((x, y, z)), a) == 0
    assert evaluate(StrongConj((x, y)), a) == F(1, 4)
    assert evaluate(WeakDisj((x, y, z)), a) == F(3, 4)
    assert evaluate(WeakConj((x, y, z)), a) == F(1, 3)
    assert evaluate(Implies(y, x), a) == F(3, 4)
    assert evaluate(Implies(x, y), a) == 1


def test_nary_flattening():
    assert StrongDisj((StrongDisj((x, y)), z)) == StrongDisj((x, y, z))
    assert strong_disj(x) == x
    with pytest.raises(ValueError):
        StrongDisj((x,))


def test_unbound_variable():
    with pytest.raises(UnboundVariable) as err:
        evaluate(StrongDisj((x, y)), {"x": F(1)})
    assert err.value.name == "y"


def test_truth_degree_validation():
    assert truth_degree("0.25") == F(1, 4)
    assert truth_degree("3/4") == F(3, 4)
    with pytest.raises(ConstantOutOfRange):
        truth_degree(F(5, 4))
    with pytest.raises(TypeError):
        truth_degree(0.5)


def test_check_model():
    assert check_model([x], [(0, 1)], {"x": F(1, 2)})
    assert check_model([StrongDisj((x, Neg(x)))], [(1, 1)], {"x": F(1, 4)})
    assert not check_model([x], [(1, 1)], {"x": F(1, 2)})
    with pytest.raises(BoundOrder):
        check_model([x], [(1, F(1, 2))], {"x": F(1, 2)})


def test_count_satisfied_four_clause_rows():
    inst = four_clause_instance()
    assert count_satisfied(inst, {"x": F(0), "y": F(0), "z": F(0)}) == (True, 3)
    assert count_satisfied(inst, {"x": F(1), "y": F(0), "z": F(0)}) == (True, 2)
    assert count_satisfied(Instance(), {}) == (True, 0)


def test_instance_variables_sorted():
    inst = Instance((Var("b"),), (StrongDisj((Var("a"), Var("c"))),))
    assert inst.variables == ("a", "b", "c")
    assert inst.with_soft(Var("d")).variables == ("a", "b", "c", "d")


# --- algebraic properties ------------------------------------------------------


@given(formulas(), assignments())
def test_range(f, a):
    assert 0 <= evaluate(f, a) <= 1


@given(formulas(), assignments())
def test_involution(f, a):
    assert evaluate(Neg(Neg(f)), a) == evaluate(f, a)


@given(formulas(), formulas(), assignments())
def test_de_morgan(f, g, a):
    assert evaluate(Neg(StrongDisj((f, g))), a) == evaluate(StrongConj((Neg(f), Neg(g))), a)
    assert evaluate(Neg(StrongConj((f, g))), a) == evaluate(StrongDisj((Neg(f), Neg(g))), a)
    assert evaluate(Neg(WeakDisj((f, g))), a) == evaluate(WeakConj((Neg(f), Neg(g))), a)
    assert evaluate(Neg(WeakConj((f, g))), a) == evaluate(WeakDisj((Neg(f), Neg(g))), a)


@given(formulas(), assignments())
def test_excluded_middle(f, a):
    assert evaluate(StrongDisj((f, Neg(f))), a) == 1
    assert evaluate(StrongConj((f, Neg(f))), a) == 0


@given(formulas(), formulas(), assignments())
def test_implication_identity(f, g, a):
    assert evaluate(Implies(f, g), a) == evaluate(StrongDisj((Neg(f), g)), a)


@given(
    st.sampled_from([StrongDisj, StrongConj, WeakDisj, WeakConj]),
    formulas(),
    formulas(),
    formulas(),
    assignments(),
)
def test_commutative_associative(op, f, g, h, a):
    assert evaluate(op((f, g)), a) == evaluate(op((g, f)), a)
    assert evaluate(op((op((f, g)), h)), a) == evaluate(op((f, op((g, h)))), a)


@given(formulas(constants=False), assignments(values=st.sampled_from([F(0), F(1)])))
def test_boolean_restriction(f, a):
    assert evaluate(f, a) == (1 if boolean_value(f, {v: a[v] == 1 for v in a}) else 0)


@given(formulas())
def test_variables_subset(f):
    assert variables(f) <= set(NAMES)
