"""Prime ideals: graded primes, non-graded frames, and their instantiations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import DEFAULT_VERTEX_CAP, Cycle, Graph, breaking_vertices, exit_free_cycles, is_downward_directed, quotient_graph
from .ideals import PrimeDescriptor
from .lattice import admissible_pairs
from .poly import QQ, Field, Poly, is_irreducible


@dataclass(frozen=True)
class PrimeFrame:
    """Shape I(H, B_H) + <p(c)> of a non-graded prime; p ranges over irreducibles."""

    H: frozenset
    S: frozenset
    cycle: Cycle

    def instantiate(self, p: Poly) -> PrimeDescriptor:
        return PrimeDescriptor("nongraded", self.H, self.S, self.cycle, p)


def graded_primes(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> list:
    """Proper graded primes: admissible pairs whose quotient graph is downward directed."""
    full = frozenset(g.vertices)
    out = []
    for H, S in admissible_pairs(g, cap):
        if H != full and is_downward_directed(quotient_graph(g, H, S).graph):
            out.append(PrimeDescriptor("graded", H, S))
    return out


def prime_frames(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> list:
    full = frozenset(g.vertices)
    out = []
    for H, S in admissible_pairs(g, cap):
        if H == full or S != breaking_vertices(g, H):
            continue
        q = quotient_graph(g, H, S).graph
        if not is_downward_directed(q):
            continue
        for c in exit_free_cycles(q):
            out.append(PrimeFrame(H, S, c))
    return out


def irreducible_polys(field: Field = QQ, max_degree: int = 2, height: int = 2) -> list:
    """Monic irreducibles with nonzero constant term, up to max_degree.

    Over Q the coefficients are integers in [-height, height]; over GF(p)
    every such polynomial is listed.
    """
    if field.characteristic:
        values = range(field.characteristic)
    else:
        values = range(-height, height + 1)
    out = []
    for d in range(1, max_degree + 1):
        for lower in itertools.product(values, repeat=d):
            if lower[0] == 0:
                continue
            f = Poly(list(lower) + [1], field)
            if is_irreducible(f):
                out.append(f)
    return out


def enumerate_primes(g: Graph, max_degree: int = 2, height: int = 2, field: Field = QQ,
                     cap: int = DEFAULT_VERTEX_CAP) -> dict:
    """Graded primes, non-graded frames, and frames instantiated with small irreducibles."""
    frames = prime_frames(g, cap)
    polys = irreducible_polys(field, max_degree, height)
    return {
        "graded": graded_primes(g, cap),
        "frames": frames,
        "nongraded": [fr.instantiate(p) for fr in frames for p in polys],
    }
