from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given

from conftest import assignments
from lukmaxsat.encoders import MilpModel, encode_dlr, encode_milp, encode_wcsp
from lukmaxsat.errors import FormulaSyntaxError
from lukmaxsat.formats import format_witness, read_witness, write_dlr, write_lp, write_wcsp
from lukmaxsat.linear import LinExpr, lt
from lukmaxsat.parser import parse_instance

GOLDEN = Path(__file__).parent / "golden"


def small():
    return parse_instance((GOLDEN / "small.inst").read_text())


def test_lp_golden():
    assert write_lp(encode_milp(small())) == (GOLDEN / "small.lp").read_text()


def test_wcsp_golden():
    assert write_wcsp(encode_wcsp(small(), 1)) == (GOLDEN / "small_k1.wcsp").read_text()


def test_dlr_golden():
    assert write_dlr(encode_dlr(small(), 1)) == (GOLDEN / "small_b1.dlr").read_text()


def test_empty_lp_shape():
    assert write_lp(MilpModel(LinExpr(), [], [], [], [])) == "Minimize\nobj: 0\nSubject To\nEnd\n"


def test_lp_rejects_strict_rows():
    with pytest.raises(ValueError):
        write_lp(MilpModel(LinExpr(), [lt(LinExpr.var("x"), 1)], [], ["x"], []))


def test_lp_scales_fractions_to_integers():
    text = write_lp(encode_milp(parse_instance("soft: x & 1/3\n")))
    assert "/" not in text


def test_lp_wraps_long_rows():
    names = " + ".join(f"v{i}" for i in range(80))
    text = write_lp(encode_milp(parse_instance(f"hard: {names}\n")))
    assert max(len(line) for line in text.splitlines()) <= 200


def test_wcsp_header():
    w = encode_wcsp(parse_instance("soft: x\nsoft: ~x\n"), 1, top=1000)
    assert write_wcsp(w).splitlines()[:2] == ["fuzzymaxsat 2 2 3 1000", "2 2"]


def test_writers_are_deterministic():
    inst = small()
    assert write_lp(encode_milp(inst)) == write_lp(encode_milp(inst))
    assert write_wcsp(encode_wcsp(inst, 2)) == write_wcsp(encode_wcsp(inst, 2))


@given(assignments())
def test_witness_round_trip(a):
    assert read_witness(format_witness(a)) == a


def test_read_witness_formats():
    assert read_witness("# from solver\nx = 0.25\ny=1/3\n\n") == {"x": F(1, 4), "y": F(1, 3)}
    with pytest.raises(FormulaSyntaxError):
        read_witness("x 0.5\n")
    with pytest.raises(FormulaSyntaxError) as err:
        read_witness("x = 1\ny = 3/2\n")
    assert err.value.line == 2
