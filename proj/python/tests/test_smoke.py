from fractions import Fraction

import pytest

import specnorm


def test_entail_scaling():
    holds, report = specnorm.entail([{"x": 2}], [{"x": 1}])
    assert holds
    assert report["format"] == specnorm.FORMAT
    assert report["certificate"]["kind"] == "farkas"


def test_entail_witness():
    holds, report = specnorm.entail([{"x": 1}], [{"y": 1}])
    assert not holds
    x = {k: Fraction(v) for k, v in report["certificate"]["x"].items()}
    assert x.get("x", 0) > 0
    assert x.get("y", 0) <= 0


def test_leq_and_canon():
    lhs = {"and": [{"x": 1}, {"y": 1}]}
    rhs = {"and": [{"x": 1, "y": 1}]}
    assert specnorm.leq(lhs, rhs)[0]
    assert not specnorm.leq(rhs, lhs)[0]
    term = specnorm.canon({"or": [{"and": [{"x": 1}]}, {"and": [{"x": 1}, {"y": 1}]}]})
    assert len(term["or"]) == 1
    assert specnorm.canon({"and": [{"x": 1}, {"x": Fraction(-1, 2)}]}) == {"or": []}


def test_lattice_check():
    ok, report = specnorm.lattice_check("2x2")
    assert ok and report["completely_normal"]
    ok, report = specnorm.lattice_check("m3")
    assert not ok and not report["distributive"]
    v_poset = {
        "elements": ["0", "p", "pq", "pr", "pqr"],
        "leq": [["0", "p"], ["p", "pq"], ["p", "pr"], ["pq", "pqr"], ["pr", "pqr"]],
        "zero": "0",
    }
    ok, report = specnorm.lattice_check(v_poset)
    assert not ok
    assert sorted(report["normality_counterexample"]) == ["pq", "pr"]
    assert specnorm.lattice_dot("chain3").count("->") == 2


def test_bad_input():
    with pytest.raises(specnorm.InputError):
        specnorm.lattice_check({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]], "zero": "a"})


def test_hom_check():
    hom = {"target": "chain2", "generators": [{"#0": 1}, {"#0": -1}], "values": {"0": "1", "1": "0"}}
    ok, report = specnorm.hom_check(hom)
    assert ok and report["coherent"]
    hom["values"] = {"0": "1", "1": "1"}
    ok, _ = specnorm.hom_check(hom)
    assert not ok


def test_construct_and_verify():
    trace, report = specnorm.construct("2x2", stages=24, seed=3)
    assert report["ok"] and report["surjective"]
    lines = trace.splitlines()
    assert len(lines) == 25
    ok, replay = specnorm.verify_trace(trace)
    assert ok
    assert replay["certificates"]["failed"] == 0
