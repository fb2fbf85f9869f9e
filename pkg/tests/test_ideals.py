import pytest
from hypothesis import given
from hypothesis import strategies as st

from lpa_ideals.dsl import parse_ideal, parse_poly_text
from lpa_ideals.fixtures import load
from lpa_ideals.graph import Graph, OMEGA, make_cycle
from lpa_ideals.ideals import (
    IdealError,
    NotPrimeRadical,
    PrimeDescriptor,
    check_invariants,
    compare,
    contains,
    cycle_ideal,
    gr,
    graded_ideal,
    ideal_sum,
    intersect,
    is_prime,
    normalize,
    normalize_pair,
    power,
    prime_power_factor,
    product,
    radical,
    whole_ideal,
    zero_ideal,
)
from lpa_ideals.poly import GF, QQ

from conftest import graph_with_ideals


def X(text, field=QQ):
    return parse_poly_text(text, field)


def L1_part(text, field=QQ):
    g = load("L1")
    return cycle_ideal(g, make_cycle(g, ["u"]), X(text, field))


@pytest.fixture
def ex4():
    g = load("EX4")
    A = graded_ideal(g, {"v"})
    B = normalize(g, {"v"}, (), [(make_cycle(g, ["u"]), X("2x^2 + 2"))])
    return g, A, B


# -- normalization ----------------------------------------------------------

def test_normalize_ex4(ex4):
    g, A, B = ex4
    assert (A.H, A.S, A.parts) == ({"v"}, frozenset(), ())
    assert B.H == {"v"} and B.part(make_cycle(g, ["u"])) == X("x^2 + 1")


def test_normalize_unit_generator():
    assert L1_part("5").is_whole


def test_normalize_exit_rule():
    g = load("E1")
    A = normalize(g, (), (), [(make_cycle(g, ["u"]), X("x - 1"))])
    assert A.H == {"v"}
    assert A.part(make_cycle(g, ["u"])) == X("x - 1")
    assert check_invariants(A) == []


def test_normalize_drops_monomial_factors():
    assert L1_part("x^3 - x^2") == L1_part("x - 1")
    assert L1_part("x^4").is_whole


def test_normalize_breaking_generators():
    g = load("EX3")
    A = normalize(g, {"v1"}, {"v2"})
    assert (A.H, A.S) == ({"v1"}, {"v2"})
    # relative to H = {} the vertex v2 is not breaking
    with pytest.raises(IdealError):
        normalize(g, (), {"v2"})


def test_normalize_promotes_emitters_with_nothing_outside():
    g = Graph.build("ab", [("a", "b", OMEGA)])
    A = normalize(g, {"b"}, {"a"})
    assert A.is_whole


def test_normalize_zero_poly_is_ignored():
    assert L1_part("0").is_zero


def test_normalize_pair_checks_S():
    g = load("EX3")
    with pytest.raises(IdealError):
        normalize_pair(g, {"v1"}, {"v6"}, ())


def test_mixed_graphs_rejected():
    with pytest.raises(IdealError):
        ideal_sum(zero_ideal(load("L1")), zero_ideal(load("E1")))


@given(graph_with_ideals(k=1))
def test_random_ideals_are_canonical(gi):
    g, (A,) = gi
    assert check_invariants(A) == []


# -- sums, intersections, products ------------------------------------------

def test_sum_examples(ex4):
    g, A, B = ex4
    assert ideal_sum(A, zero_ideal(g)) == A
    assert ideal_sum(A, B) == B
    assert ideal_sum(L1_part("x - 1"), L1_part("x + 1")).is_whole
    # over GF(2) x - 1 = x + 1, so nothing collapses
    assert ideal_sum(L1_part("x - 1", GF(2)), L1_part("x + 1", GF(2))) == L1_part("x + 1", GF(2))


def test_product_examples(ex4):
    g, A, B = ex4
    E3 = load("EX3")
    assert product(graded_ideal(E3, {"v1"}), parse_ideal(E3, "<v5>")).is_zero
    assert product(A, B) == A
    assert product(L1_part("x - 1"), L1_part("x - 1")) == L1_part("(x - 1)^2")


def test_intersect_examples(ex4):
    g, A, B = ex4
    assert intersect(A, whole_ideal(g)) == A
    assert intersect(L1_part("x - 1"), L1_part("x + 1")) == L1_part("x^2 - 1")
    assert intersect(A, B) == A


def test_products_across_disjoint_cycles():
    g = Graph.build("ab", [("a", "a"), ("b", "b")])
    ca, cb = make_cycle(g, ["a"]), make_cycle(g, ["b"])
    A, B = cycle_ideal(g, ca, X("x - 1")), cycle_ideal(g, cb, X("x + 1"))
    # the two loops give orthogonal corners, so both sides vanish
    assert product(A, B) == intersect(A, B)
    assert product(A, B).is_zero
    assert product(A, ideal_sum(A, B)) == power(A, 2)


def test_compare_examples(ex4):
    g, A, B = ex4
    assert compare(A, A) == "equal"
    assert compare(A, B) == "A<B"
    E3 = load("EX3")
    assert compare(parse_ideal(E3, "<v5>"), parse_ideal(E3, "<v7>")) == "incomparable"
    assert compare(parse_ideal(E3, "<v3>"), parse_ideal(E3, "<v5>")) == "B<A"


def test_gr_examples(ex4):
    g, A, B = ex4
    assert gr(B) == A
    assert gr(A) == A
    assert gr(L1_part("x - 1")).is_zero


def test_radical_examples(ex4):
    g, A, B = ex4
    assert radical(A) == A
    assert radical(L1_part("(x - 1)^2*(x + 1)")) == L1_part("x^2 - 1")


def test_power_examples(ex4):
    g, A, B = ex4
    assert power(A, 5) == A
    assert power(L1_part("x - 1"), 3) == L1_part("(x - 1)^3")
    assert power(B, 1) == B
    with pytest.raises(ValueError):
        power(A, 0)


# -- primes -----------------------------------------------------------------

def test_is_prime_examples():
    assert is_prime(L1_part("x - 1"))
    assert not is_prime(L1_part("x^2 - 1"))
    assert is_prime(L1_part("x^2 + 1"))
    assert not is_prime(L1_part("x^2 + 1", GF(2)))
    assert not is_prime(graded_ideal(load("EX4"), {"v"}))
    assert is_prime(graded_ideal(load("E1"), {"v"}))
    with pytest.raises(IdealError):
        is_prime(whole_ideal(load("E1")))


def test_prime_needs_full_breaking_set():
    # EX3 / <v1>: v2' is a new sink; with S = {} the quotient still has v4 and v7 as sinks
    g = load("EX3")
    assert not is_prime(graded_ideal(g, {"v1"}))


def test_prime_power_factor_examples():
    P = L1_part("x - 1")
    Q, n = prime_power_factor(L1_part("(x - 1)^3"))
    assert (Q.ideal(load("L1")), n) == (P, 3)
    G = graded_ideal(load("E1"), {"v"})
    Q, n = prime_power_factor(G)
    assert (Q.ideal(load("E1")), n) == (G, 1)
    with pytest.raises(NotPrimeRadical):
        prime_power_factor(L1_part("(x - 1)*(x - 2)"))


def test_prime_descriptor_round_trip():
    P = L1_part("x^2 + 1")
    D = PrimeDescriptor.of(P)
    assert D.kind == "nongraded" and D.ideal(P.graph) == P
    assert str(D) == "nongraded(H={}, S={}, cycle(u): x^2 + 1)"


# -- algebraic laws ---------------------------------------------------------

@given(graph_with_ideals(k=3))
def test_lattice_laws(gi):
    g, (A, B, C) = gi
    assert ideal_sum(A, B) == ideal_sum(B, A)
    assert intersect(A, B) == intersect(B, A)
    assert ideal_sum(A, ideal_sum(B, C)) == ideal_sum(ideal_sum(A, B), C)
    assert intersect(A, intersect(B, C)) == intersect(intersect(A, B), C)
    assert ideal_sum(A, A) == A == intersect(A, A)
    assert ideal_sum(A, intersect(A, B)) == A == intersect(A, ideal_sum(A, B))


@given(graph_with_ideals(k=3))
def test_product_laws(gi):
    g, (A, B, C) = gi
    assert product(A, B) == product(B, A)
    assert product(A, product(B, C)) == product(product(A, B), C)
    assert product(A, ideal_sum(B, C)) == ideal_sum(product(A, B), product(A, C))
    assert product(A, whole_ideal(g)) == A
    assert product(A, zero_ideal(g)).is_zero


@given(graph_with_ideals(k=2))
def test_order_facts(gi):
    g, (A, B) = gi
    S, M, P = ideal_sum(A, B), intersect(A, B), product(A, B)
    assert contains(S, A) and contains(A, M) and contains(M, P)
    assert contains(A, gr(A)) and gr(gr(A)) == gr(A) and gr(A).is_graded
    assert contains(radical(A), A) and radical(radical(A)) == radical(A)
    assert contains(A, power(A, 2)) and contains(power(A, 2), power(A, 3))
    if A.is_graded:
        assert product(A, B) == intersect(A, B)


@given(graph_with_ideals(k=1), st.integers(1, 4))
def test_radical_prime_round_trip(gi, n):
    g, (A,) = gi
    if A.is_whole:
        return
    R = radical(A)
    if is_prime(R):
        D, m = prime_power_factor(power(R, n))
        assert D.ideal(g, A.field) == R
        assert power(R, m) == power(R, n)
