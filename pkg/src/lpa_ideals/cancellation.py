"""When does AB = AC force B = C?

:func:`cancellation_check` evaluates the two graph conditions (branches
``iii_a`` and ``iii_b``) literally, with no shortcuts.  :func:`cancellation_counterexample`
looks for a triple (A, B, C) with A nonzero, B and C nonzero proper, AB = AC
and B != C, and re-verifies anything it returns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import (
    DEFAULT_VERTEX_CAP,
    Graph,
    breaking_vertices,
    condition_K,
    exit_free_cycles,
    hs_closure,
    proper_hs_subsets,
    quotient_graph,
)
from .ideals import IdealForm, normalize_pair, product
from .lattice import admissible_pairs
from .poly import QQ, Field, Poly


@dataclass
class Verdict:
    cancellative: bool
    branch: str  # "iii_a", "iii_b" or "none"
    witness: dict = field(default_factory=dict)


def _names(g: Graph, X) -> list:
    return [str(v) for v in g.sorted_vertices(X)]


def _branch_a(g: Graph, HE: list):
    """An exit-free cycle based at v, every vertex reaches v, and H_E = {closure(v)} with B_H empty."""
    for c in exit_free_cycles(g):
        for v in c.vertices:
            if not all(v in g.reach[u] for u in g.vertices):
                continue
            H = hs_closure(g, {v})
            if HE == [H] and not breaking_vertices(g, H):
                return {"cycle": str(c), "base": str(v), "H": _names(g, H)}
    return None


def _branch_b(g: Graph, HE: list):
    """Condition (K), at most two members of H_E, disjoint, B_H empty, each the closure of each of its vertices."""
    if not condition_K(g) or len(HE) > 2:
        return None
    if len(HE) == 2 and HE[0] & HE[1]:
        return None
    for H in HE:
        if breaking_vertices(g, H):
            return None
        if any(hs_closure(g, {u}) != H for u in H):
            return None
    return {"H_E": [_names(g, H) for H in HE]}


def cancellation_check(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> Verdict:
    HE = proper_hs_subsets(g, cap)
    w = _branch_a(g, HE)
    if w is not None:
        return Verdict(True, "iii_a", w)
    w = _branch_b(g, HE)
    if w is not None:
        return Verdict(True, "iii_b", w)
    reasons = {
        "H_E": [_names(g, H) for H in HE],
        "condition_K": condition_K(g),
        "exit_free_cycles": [str(c) for c in exit_free_cycles(g)],
    }
    return Verdict(False, "none", reasons)


# -- counterexamples --------------------------------------------------------

@dataclass
class Counterexample:
    A: IdealForm
    B: IdealForm
    C: IdealForm
    pattern: str

    def as_dict(self) -> dict:
        return {"pattern": self.pattern, "A": str(self.A), "B": str(self.B), "C": str(self.C),
                "AB": str(product(self.A, self.B))}


@dataclass
class SearchResult:
    witness: Counterexample | None
    trials: int


def verify_witness(A: IdealForm, B: IdealForm, C: IdealForm) -> bool:
    """A nonzero, B and C nonzero proper and distinct, and AB = AC."""
    if A.is_zero or B.is_zero or C.is_zero or B.is_whole or C.is_whole:
        return False
    return B != C and product(A, B) == product(A, C)


def _graded_universe(g: Graph, field: Field) -> list:
    full = frozenset(g.vertices)
    return [IdealForm(g, H, S, (), field) for H, S in admissible_pairs(g)
            if (H or S) and H != full]


def _cycle_extensions(G: IdealForm) -> list:
    """G + <(x - 1)(c)> for every exit-free cycle c of the quotient by G."""
    g = G.graph
    q = quotient_graph(g, G.H, G.S).graph
    x = Poly.x(G.field)
    return [normalize_pair(g, G.H, G.S, [(c, x - 1)], G.field) for c in exit_free_cycles(q)]


def _nested(graded: list):
    # G strictly inside a graded B gives G*B = G & B = G = G*G
    for G in graded:
        for B in graded:
            if B != G and G.H <= B.H and G.S <= (B.H | B.S):
                yield G, B, G


def _disjoint(graded: list):
    for A in graded:
        killed = [B for B in graded if product(A, B).is_zero]
        if len(killed) >= 2:
            yield A, killed[0], killed[1]


def _cycle_over_graded(graded: list):
    for G in graded:
        for B in _cycle_extensions(G):
            if not B.is_whole:
                yield G, B, G


def cancellation_counterexample(g: Graph, seed=0, trials: int = 500, field: Field = QQ) -> SearchResult:
    """Structured patterns first, then a seeded random search over ``trials`` triples."""
    graded = _graded_universe(g, field)
    patterns = (("nested", _nested), ("disjoint", _disjoint), ("cycle-over-graded", _cycle_over_graded))
    for name, gen in patterns:
        for A, B, C in gen(graded):
            if verify_witness(A, B, C):
                return SearchResult(Counterexample(A, B, C, name), 0)

    from .verify import GenConfig, random_ideal

    cfg = GenConfig(field=field.name)
    rng = random.Random(f"cancel:{seed}")
    for t in range(trials):
        A = random_ideal(g, cfg, rng)
        B = random_ideal(g, cfg, rng)
        C = random_ideal(g, cfg, rng)
        if verify_witness(A, B, C):
            return SearchResult(Counterexample(A, B, C, "random"), t + 1)
    return SearchResult(None, trials)
