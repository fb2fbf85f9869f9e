import random

import pytest
from hypothesis import given

from lpa_ideals.dsl import DSLError, eval_expr, parse_expr, parse_graph, parse_ideal, parse_poly_text, print_graph
from lpa_ideals.fixtures import NAMES, fixture_text, load
from lpa_ideals.graph import OMEGA, make_cycle
from lpa_ideals.ideals import cycle_ideal, zero_ideal
from lpa_ideals.poly import GF, QQ, Poly
from lpa_ideals.verify import STRATA, GenConfig, random_graph

from conftest import graph_with_ideals

HAND_WRITTEN = [
    "graph A { vertices a; }",
    "graph A { vertices a; edge a -> a; }",
    "graph A { vertices a, b; edge a -> b [3]; edge b -> a; }",
    "graph A { vertices a, b; edge a -> b [inf]; }",
    "graph A { vertices a, b; edge a -> b [omega]; edge a -> a; }",
    "graph A {\n  # comment line\n  vertices p, q, r;\n  edge p -> q; edge p -> q; edge q -> r [2];\n}\n",
    "graph B{vertices x1,x2;edge x2->x1[inf];edge x1->x1[2];}",
    "graph C { vertices s, t; vertices u; edge u -> s; }",
]


def corpus():
    docs = [fixture_text(n) for n in NAMES] + HAND_WRITTEN
    cfg = GenConfig(max_vertices=6)
    for t in range(12):
        g = random_graph(cfg, random.Random(t), STRATA[t % 4])
        docs.append(print_graph(g))
    return docs


def test_corpus_size():
    assert len(corpus()) >= 20


@pytest.mark.parametrize("doc", corpus())
def test_round_trip(doc):
    g = parse_graph(doc)
    text = print_graph(g)
    assert parse_graph(text) == g
    assert print_graph(parse_graph(text)) == text


def test_ex4_shape():
    g = load("EX4")
    assert len(g.vertices) == 4 and len(g.bundles) == 4


def test_inf_multiplicity():
    g = parse_graph("graph X { vertices v1, v2; edge v2 -> v1 [inf]; }")
    assert g.multiplicity("v2", "v1") == OMEGA


def test_duplicate_edge_statements_add_up():
    g = parse_graph("graph X { vertices a, b; edge a -> b; edge a -> b [2]; }")
    assert g.multiplicity("a", "b") == 3


@pytest.mark.parametrize("doc,line,col,fragment", [
    ("graph X { vertices ; }", 1, 20, "empty vertex list"),
    ("graph X { }", 1, 12, "non-empty vertex list"),
    ("graph X { vertices a, a; }", 1, 23, "duplicate vertex"),
    ("graph X {\n  vertices a;\n  edge a -> b;\n}", 3, 13, "unknown endpoint"),
    ("graph X { vertices a; edge a -> a [0]; }", 1, 36, "multiplicity"),
    ("graph X { vertices a; edge a => a; }", 1, 30, "expected"),
    ("graph X { vertices a; } trailing", 1, 25, "after the graph"),
    ("graph X { vertices a; $ }", 1, 23, "unexpected character"),
])
def test_graph_errors(doc, line, col, fragment):
    with pytest.raises(DSLError) as info:
        parse_graph(doc)
    assert (info.value.line, info.value.col) == (line, col)
    assert fragment in info.value.msg


# -- polynomials ------------------------------------------------------------

@pytest.mark.parametrize("text,coeffs", [
    ("x^2 - 1", [-1, 0, 1]),
    ("(x-1)^2*(x+1)", [1, -1, -1, 1]),
    ("2x + 3", [3, 2]),
    ("(x-1)(x+1)", [-1, 0, 1]),
    ("-x^3 + 1/2*x", [0, "1/2", 0, -1]),
    ("7", [7]),
])
def test_poly_text(text, coeffs):
    from fractions import Fraction
    assert parse_poly_text(text) == Poly([Fraction(c) for c in coeffs], QQ)


def test_poly_text_over_gf():
    assert parse_poly_text("x^2 + 4", GF(5)) == parse_poly_text("x^2 - 1", GF(5))
    with pytest.raises(DSLError):
        parse_poly_text("x/5", GF(5))


@pytest.mark.parametrize("bad", ["x^", "x +", "(x", "y", "x^-1", "x/0"])
def test_poly_text_errors(bad):
    with pytest.raises(DSLError):
        parse_poly_text(bad)


# -- ideal expressions ------------------------------------------------------

def test_precedence():
    e = parse_expr("A + B & C * D ^ 2")
    assert e.op == "sum"
    assert e.args[1].op == "meet"
    assert e.args[1].args[1].op == "prod"
    assert e.args[1].args[1].args[1].op == "pow"


def test_ex3_expression():
    g = load("EX3")
    b = {k: parse_ideal(g, v) for k, v in {"A": "<v1>", "B": "<v5>", "C": "<v7>"}.items()}
    assert eval_expr(g, "A*(B&C)", b).is_zero
    assert eval_expr(g, "A*B", b) == zero_ideal(g)


def test_l1_radical_expression():
    g = load("L1")
    P = parse_ideal(g, "cycle(u): x - 1")
    assert eval_expr(g, "rad(P^3)", {"P": P}) == P
    assert P == cycle_ideal(g, make_cycle(g, ["u"]), parse_poly_text("x-1"))


def test_ex4_gr():
    g = load("EX4")
    A = parse_ideal(g, "<v>")
    B = parse_ideal(g, "<v> + cycle(u): x^2 + 1")
    assert eval_expr(g, "gr(B)", {"A": A, "B": B}) == A


def test_literals():
    g = load("EX3")
    assert str(parse_ideal(g, "0")) == "0"
    assert str(parse_ideal(g, "1")) == "1"
    assert str(parse_ideal(g, "<H: v1; S: v2>")) == "<H: v1; S: v2>"
    assert str(parse_ideal(g, "<v5>")) == "<v4, v5>"


@pytest.mark.parametrize("text,fragment", [
    ("Z", "unbound name"),
    ("<q>", "unknown vertex"),
    ("<v1> +", "expected an ideal"),
    ("<H: v1; S: v6>", ""),
    ("<v1>^0", "positive integer"),
    ("rad(<v1>", "expected ')'"),
])
def test_expression_errors(text, fragment):
    g = load("EX3")
    with pytest.raises(DSLError) as info:
        eval_expr(g, text)
    assert fragment in str(info.value)


def test_cycle_literal_errors():
    g = load("R2")
    # both petals have exits, so any cycle generator in R2 is the whole algebra
    assert str(parse_ideal(g, "cycle(u#1): x - 1")) == "1"
    with pytest.raises(DSLError):
        parse_ideal(g, "cycle(u#2): x - 1")


@given(graph_with_ideals(k=1))
def test_ideal_literal_round_trip(gi):
    g, (A,) = gi
    assert parse_ideal(g, str(A)) == A
