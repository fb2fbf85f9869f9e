import pytest
from hypothesis import given, settings

from lpa_ideals.fixtures import NAMES, load
from lpa_ideals.graph import Graph
from lpa_ideals.ideals import contains
from lpa_ideals.lattice import GradedLattice, LatticeError, admissible_pairs, enumerate_graded_ideals, pair_leq

from conftest import graphs

E = frozenset()


def test_ex4_pairs():
    pairs = admissible_pairs(load("EX4"))
    Hs = {H for H, _ in pairs}
    # {u, v} is hereditary saturated as well, so six pairs in total
    assert Hs == {E, frozenset("v"), frozenset("z"), frozenset("uv"), frozenset({"v", "w", "z"}),
                  frozenset("uvwz")}
    assert all(S == E for _, S in pairs)
    assert len(pairs) == 6


def test_ex3_breaking_pairs():
    pairs = admissible_pairs(load("EX3"))
    assert (frozenset({"v1"}), E) in pairs
    assert (frozenset({"v1"}), frozenset({"v2"})) in pairs


def test_r2_pairs():
    assert admissible_pairs(load("R2")) == [(E, E), (frozenset("u"), E)]


@pytest.mark.parametrize("name,count", [
    ("L1", 2), ("ACY1", 4), ("EX3", 27), ("EX4", 6), ("E1", 3), ("R2", 2), ("E3", 3), ("F", 5)])
def test_fixture_counts(name, count):
    assert len(enumerate_graded_ideals(load(name))) == count


@pytest.mark.parametrize("name", NAMES)
def test_join_and_meet_agree_with_engine(name):
    assert GradedLattice(load(name)).check_against_engine() == []


@given(graphs(max_vertices=5))
@settings(max_examples=60)
def test_random_lattices(g):
    lat = GradedLattice(g)
    assert lat.check_against_engine() == []
    ideals = lat.ideals()
    # the pair order is ideal containment
    for i, A in enumerate(ideals):
        for j, B in enumerate(ideals):
            assert lat.leq[i][j] == contains(B, A)


def test_uniqueness_is_asserted():
    lat = GradedLattice(load("ACY1"))
    with pytest.raises(LatticeError):
        lat._extreme([0, 1, 2, 3][1:3], upward=True)


def test_pair_leq():
    assert pair_leq((E, frozenset("a")), (frozenset("a"), E))
    assert not pair_leq((frozenset("a"), E), (E, frozenset("a")))
