import pytest

from lpa_ideals.cancellation import cancellation_check, cancellation_counterexample, verify_witness
from lpa_ideals.dsl import parse_ideal
from lpa_ideals.fixtures import load
from lpa_ideals.graph import proper_hs_subsets
from lpa_ideals.ideals import product


@pytest.mark.parametrize("name,branch", [("E1", "iii_a"), ("R2", "iii_b"), ("E3", "iii_b"), ("ACY1", "iii_b")])
def test_positive_verdicts(name, branch):
    v = cancellation_check(load(name))
    assert v.cancellative and v.branch == branch


@pytest.mark.parametrize("name", ["EX3", "EX4", "L1"])
def test_negative_verdicts(name):
    v = cancellation_check(load(name))
    assert not v.cancellative and v.branch == "none"
    assert "H_E" in v.witness


def test_f_has_a_third_hs_set():
    # {v, w} is hereditary and u (which has loops) is never forced in
    g = load("F")
    assert sorted(map(sorted, proper_hs_subsets(g))) == [["v"], ["v", "w"], ["w"]]
    assert cancellation_check(g).branch == "none"


def test_f_is_not_cancellative():
    g = load("F")
    A, B = parse_ideal(g, "<w>"), parse_ideal(g, "<v, w>")
    assert verify_witness(A, B, A)


def test_ex3_triple():
    g = load("EX3")
    A, B, C = (parse_ideal(g, t) for t in ("<v1>", "<v5>", "<v7>"))
    assert product(A, B).is_zero and product(A, C).is_zero and B != C
    assert verify_witness(A, B, C)


def test_ex4_triple():
    g = load("EX4")
    A = parse_ideal(g, "<v>")
    B = parse_ideal(g, "<v> + cycle(u): x^2 + 1")
    assert product(A, B) == product(A, A) == A
    assert verify_witness(A, B, A)


@pytest.mark.parametrize("name", ["EX3", "EX4", "F"])
def test_search_finds_verified_witness(name):
    res = cancellation_counterexample(load(name), seed=0, trials=100)
    w = res.witness
    assert w is not None and verify_witness(w.A, w.B, w.C)
    assert w.as_dict()["AB"] == str(product(w.A, w.C))


@pytest.mark.parametrize("name", ["R2", "E3", "L1", "ACY1"])
def test_search_finds_nothing(name):
    res = cancellation_counterexample(load(name), seed=0, trials=300)
    assert res.witness is None and res.trials == 300


def test_e1_has_a_witness_despite_its_verdict():
    # L/<v> is K[x, 1/x] on the loop at u, so <v> + <c_u - 1> is proper and contains <v>
    g = load("E1")
    A = parse_ideal(g, "<v>")
    B = parse_ideal(g, "<v> + cycle(u): x - 1")
    assert not B.is_whole and B != A
    assert product(A, B) == A == product(A, A)
    res = cancellation_counterexample(g, seed=0, trials=10)
    assert res.witness is not None


def test_witness_universe():
    g = load("EX4")
    A = parse_ideal(g, "<v>")
    one, zero = parse_ideal(g, "1"), parse_ideal(g, "0")
    assert not verify_witness(zero, A, one)
    assert not verify_witness(A, A, one)
    assert not verify_witness(A, zero, zero)
    assert not verify_witness(A, A, A)
