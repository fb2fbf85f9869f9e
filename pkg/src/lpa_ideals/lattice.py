"""The lattice of graded ideals, found by brute-force poset search.

Graded ideals correspond to admissible pairs (H, S).  The order used here is
(H1, S1) <= (H2, S2) iff H1 is inside H2 and S1 is inside H2 | S2; meets and
joins are located by scanning all bounds rather than by a formula, and the
join is checked against the engine's sum.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .graph import DEFAULT_VERTEX_CAP, Graph, breaking_vertices, enumerate_hs_subsets
from .ideals import IdealForm, ideal_sum, intersect
from .poly import QQ


class LatticeError(AssertionError):
    """A meet or join is missing or not unique."""


def admissible_pairs(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> list:
    """Every (H, S) with H hereditary saturated and S a subset of B_H."""
    out = []
    for H in enumerate_hs_subsets(g, cap):
        B = g.sorted_vertices(breaking_vertices(g, H))
        for k in range(len(B) + 1):
            for S in itertools.combinations(B, k):
                out.append((H, frozenset(S)))
    return out


def pair_leq(p, q) -> bool:
    (H1, S1), (H2, S2) = p, q
    return H1 <= H2 and S1 <= (H2 | S2)


class GradedLattice:
    def __init__(self, g: Graph, cap: int = DEFAULT_VERTEX_CAP):
        self.graph = g
        self.pairs = admissible_pairs(g, cap)
        n = len(self.pairs)
        self.leq = [[pair_leq(self.pairs[i], self.pairs[j]) for j in range(n)] for i in range(n)]

    def __len__(self):
        return len(self.pairs)

    def index(self, pair) -> int:
        return self.pairs.index((frozenset(pair[0]), frozenset(pair[1])))

    def _extreme(self, candidates, upward: bool) -> int:
        # the candidate comparable to and beyond every other candidate
        best = [c for c in candidates
                if all((self.leq[d][c] if upward else self.leq[c][d]) for d in candidates)]
        if len(best) != 1:
            raise LatticeError(f"expected a unique extreme element, found {len(best)}")
        return best[0]

    def meet_index(self, i: int, j: int) -> int:
        lower = [k for k in range(len(self.pairs)) if self.leq[k][i] and self.leq[k][j]]
        return self._extreme(lower, upward=True)

    def join_index(self, i: int, j: int) -> int:
        upper = [k for k in range(len(self.pairs)) if self.leq[i][k] and self.leq[j][k]]
        return self._extreme(upper, upward=False)

    @cached_property
    def meet_table(self) -> list:
        n = len(self.pairs)
        return [[self.meet_index(i, j) for j in range(n)] for i in range(n)]

    @cached_property
    def join_table(self) -> list:
        n = len(self.pairs)
        return [[self.join_index(i, j) for j in range(n)] for i in range(n)]

    def ideal(self, i: int, field=QQ) -> IdealForm:
        H, S = self.pairs[i]
        return IdealForm(self.graph, H, S, (), field)

    def ideals(self, field=QQ) -> list:
        return [self.ideal(i, field) for i in range(len(self.pairs))]

    def check_against_engine(self) -> list:
        """Pairs (i, j) where the searched join or meet disagrees with sum or intersect."""
        bad = []
        ideals = self.ideals()
        n = len(self.pairs)
        for i in range(n):
            for j in range(i, n):
                if ideal_sum(ideals[i], ideals[j]) != ideals[self.join_table[i][j]]:
                    bad.append(("join", i, j))
                if intersect(ideals[i], ideals[j]) != ideals[self.meet_table[i][j]]:
                    bad.append(("meet", i, j))
        return bad


def enumerate_graded_ideals(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> GradedLattice:
    return GradedLattice(g, cap)
