from fractions import Fraction

import pytest

import sharpset


def test_binary_static_ordering():
    rep = sharpset.solve(sharpset.model("static", [[0, 0], [0, 1]]))
    assert rep["rendered"] == ["p[1,0] ≤ p[0,1]"]
    assert sharpset.to_fractions(rep["reduced"]) == [[0, -1, 1, 0]]
    assert rep["dims"] == {"rows": 4, "cols": 9, "zdim": rep["dims"]["zdim"]}
    assert rep["version"] == sharpset.__version__


def test_rationals_stay_exact():
    m = sharpset.model("dyn-uncond", [[0, 0], [0, Fraction(1, 3)]], gamma=Fraction(2, 3))
    rep = sharpset.solve(m)
    assert rep["config"]["model"]["gamma"] == "2/3"
    assert rep["config"]["model"]["v"][1][1] == "1/3"
    assert all(isinstance(x, str) for y in rep["reduced"] for x in y)


def test_solvers_agree():
    m = sharpset.model("static", [[0, 2], [0, 1], [0, 0]])
    ref = sharpset.solve(m)["reduced"]
    assert sharpset.solve(m, solver="cutplane")["reduced"] == ref
    assert sharpset.solve(m, solver="oracle")["reduced"] == ref
    assert sharpset.solve(m, solver="probabilistic", K=200)["reduced"] == ref


def test_cases_and_reduce():
    assert len(sharpset.cases("dyn-uncond")) == 10
    static4 = sharpset.cases("static", D=4)
    assert {tuple(c["representative"].values()) for c in static4} >= {("4", "3", "2", "1"), ("4", "4", "4", "4")}
    assert sharpset.reduce([[0, -1, 1, 0], [0, -2, 2, 0]]) == [["0", "-1", "1", "0"]]
    assert sharpset.render([0, 0, 0, 0], sharpset.outcome_labels(2, 2)) == "0 ≤ 0"


def test_errors():
    with pytest.raises(ValueError):
        sharpset.solve(sharpset.model("static", [[0, 1]]))
    with pytest.raises(sharpset.GateRefusal):
        sharpset.solve(sharpset.model("dyn-uncond", [[0, 0], [0, 1]], gamma=1), solver="cutplane")
