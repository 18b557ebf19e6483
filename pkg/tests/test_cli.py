import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from conftest import FOUR_CLAUSE_DIMACS
from lukmaxsat.cli import main
from lukmaxsat.logic import count_satisfied
from lukmaxsat.parser import parse_instance


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_neg_product(capsys, write):
    path = write("ex1.inst", "soft: ~(x1 * x2 * ~x3)\n")
    code, out, _ = run(capsys, "eval", path, "--set", "x1=0", "--set", "x2=0", "--set", "x3=1")
    assert code == 0 and json.loads(out)["formulas"][0]["degree"] == "1"
    code, out, _ = run(capsys, "eval", path, "--set", "x1=0.6", "--set", "x2=0.7", "--set", "x3=0.2")
    report = json.loads(out)
    assert report["formulas"][0]["degree"] == "9/10" and report["soft_satisfied"] == 0


def test_eval_witness_file_and_errors(capsys, write):
    path = write("a.inst", "soft: x + y\n")
    wit = write("w.txt", "x = 1/4\ny = 0.75\n")
    code, out, _ = run(capsys, "eval", path, "--witness", wit, "--approx")
    assert code == 0 and json.loads(out)["formulas"][0]["degree_approx"] == "1"
    code, _, err = run(capsys, "eval", path, "--set", "x=1")
    assert code == 3 and "'y'" in err
    assert run(capsys, "eval", path, "--set", "x=2")[0] == 2
    assert run(capsys, "eval", write("bad.inst", "soft: x +\n"))[0] == 2


def test_solve_four_clause_reduction(capsys, write):
    dimacs = write("t1.cnf", FOUR_CLAUSE_DIMACS)
    reduced = str(dimacs) + ".inst"
    code, out, _ = run(capsys, "reduce", "--from-dimacs", dimacs, "--out", reduced)
    assert code == 0 and "|H| = 3, |S| = 4" in out
    for extra in (["--method", "milp"], ["--method", "bruteforce", "--k", "1"], ["--method", "dlr"]):
        code, out, _ = run(capsys, "solve", reduced, *extra)
        report = json.loads(out)
        assert code == 0 and report["soft_satisfied"] == 3
        witness = {v: F(q) for v, q in report["witness"].items()}
        assert count_satisfied(parse_instance(open(reduced).read()), witness) == (True, 3)
        assert set(report["stats"]) == {"hard", "soft", "variables", "form"}


def test_solve_exit_codes(capsys, write):
    unsat = write("u.inst", "hard: 0\nsoft: x\n")
    for method in ("milp", "dlr", "auto"):
        code, out, _ = run(capsys, "solve", unsat, "--method", method)
        assert code == 4 and json.loads(out)["status"] == "hard_unsat"
    assert run(capsys, "solve", unsat, "--method", "wcsp", "--k", "2")[0] == 4
    general = write("g.inst", "soft: x1 * x2\n")
    assert run(capsys, "solve", general, "--method", "simple")[0] == 5
    big = write("big.inst", "soft: a + b + c + d + e + f + g\n")
    assert run(capsys, "solve", big, "--method", "bruteforce", "--k", "20")[0] == 6
    with pytest.raises(SystemExit) as exc:
        main(["solve", general, "--method", "wcsp"])
    assert exc.value.code == 2


def test_auto_picks_simple(capsys, write):
    path = write("s.inst", "soft: x1 + x2\nsoft: ~x1\nsoft: ~x2\n")
    code, out, _ = run(capsys, "solve", path, "--strategy", "binary", "--approx")
    report = json.loads(out)
    assert code == 0 and report["method"] == "simple" and report["soft_satisfied"] == 2
    assert report["k_opt"] == 1 and "witness_approx" in report


def test_encode(capsys, write, tmp_path):
    path = write("two.inst", "soft: x + y\nsoft: ~x\n")
    out_lp = tmp_path / "m.lp"
    code, out, _ = run(capsys, "encode", path, "--to", "lp", "--out", str(out_lp))
    assert code == 0 and out.startswith("lp:")
    lp = out_lp.read_text().splitlines()
    assert lp[lp.index("Binary") + 1 : lp.index("Binary") + 3] == ["y1", "y2"]

    code, out, _ = run(capsys, "encode", write("w.inst", "soft: x\nsoft: ~x\n"), "--to", "wcsp", "--k", "1")
    assert code == 0 and out.splitlines()[:2] == ["fuzzymaxsat 2 2 3 3", "2 2"]

    code, out, err = run(capsys, "encode", path, "--to", "dlr", "--bound", "0")
    assert code == 0 and "y1 + y2 <= 0" in out and err.startswith("dlr:")
    assert run(capsys, "encode", path, "--to", "dlr", "--bound", "5")[0] == 5
    big = write("big.inst", "soft: a + b + c + d + e + f + g\n")
    assert run(capsys, "encode", big, "--to", "wcsp", "--k", "20")[0] == 6


def test_reduce_edge_cases(capsys, write):
    code, out, err = run(capsys, "reduce", "--from-dimacs", write("e.cnf", "p cnf 0 0\n"))
    assert code == 0 and out == "" and "|H| = 0, |S| = 0" in err
    assert run(capsys, "reduce", "--from-dimacs", write("bad.cnf", "p cnf 1 1\n2 0\n"))[0] == 2


def test_classify(capsys, write):
    assert run(capsys, "classify", write("c.inst", "soft: x1 + ~x2\nsoft: ~x3\n"))[1] == "SimpleLClausal\n"
    assert run(capsys, "classify", write("d.inst", "hard: ~(x1 + x2) | x3\n"))[1] == "LClausal\n"
    assert run(capsys, "classify", write("e.inst", "soft: x1 * x2\n"))[1] == "General\n"


def test_module_entry_point(write):
    path = write("m.inst", "soft: x\nsoft: ~x\n")
    proc = subprocess.run(
        [sys.executable, "-m", "lukmaxsat", "solve", path, "--method", "dlr"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["soft_satisfied"] == 1
