"""Two-sided ideals of a Leavitt path algebra in canonical form.

An ideal is stored as an admissible pair (H, S) together with a polynomial for
each cycle that carries a non-graded part.  The cycles are exactly those that
survive without exits in the quotient graph E\\(H,S); each polynomial is monic,
non-constant, with nonzero constant term.  Two ideals are equal iff their
canonical forms are equal, so every operation ends in :func:`normalize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .graph import (
    OMEGA,
    Cycle,
    Graph,
    GraphError,
    breaking_vertices,
    exit_free_cycles,
    hs_closure,
    is_exit_free,
    is_hs,
    make_cycle,
    outside_count,
    quotient_graph,
)
from .poly import (
    QQ,
    Field,
    Poly,
    is_irreducible,
    laurent_canonical,
    poly_gcd,
    poly_lcm,
    squarefree_part,
)


class IdealError(ValueError):
    pass


class NotPrimeRadical(ValueError):
    """The radical of the ideal is not prime, so it is not a prime power."""


def _cycle_key(g: Graph):
    return lambda item: (len(item[0].vertices), [g.index[v] for v in item[0].vertices])


@dataclass(frozen=True)
class IdealForm:
    graph: Graph
    H: frozenset
    S: frozenset = frozenset()
    parts: tuple = ()  # ((Cycle, Poly), ...) in cycle order
    field: Field = dc_field(default=QQ)

    # -- predicates --

    @property
    def is_graded(self) -> bool:
        return not self.parts

    @property
    def is_zero(self) -> bool:
        return not self.H and not self.S and not self.parts

    @property
    def is_whole(self) -> bool:
        return len(self.H) == len(self.graph.vertices)

    def part(self, c: Cycle):
        for d, f in self.parts:
            if d == c:
                return f
        return None

    @property
    def pair(self):
        return self.H, self.S

    # -- operators --

    def __add__(self, other):
        return ideal_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, n: int):
        return power(self, n)

    def __le__(self, other):
        return contains(other, self)

    def __lt__(self, other):
        return self != other and contains(other, self)

    def __str__(self):
        return ideal_literal(self)

    def __repr__(self):
        name = self.graph.name or "graph"
        return f"IdealForm({name}: {self})"


def ideal_literal(A: IdealForm) -> str:
    """Text form accepted by the ideal literal parser."""
    g = A.graph
    if A.is_whole:
        return "1"
    if A.is_zero:
        return "0"
    terms = []
    H = ", ".join(g.sorted_vertices(A.H))
    if A.S:
        terms.append(f"<H: {H}; S: {', '.join(g.sorted_vertices(A.S))}>")
    elif A.H:
        terms.append(f"<{H}>")
    for c, f in A.parts:
        terms.append(f"{c}: {f}")
    return " + ".join(terms)


# -- construction and normalization ---------------------------------------

def zero_ideal(g: Graph, field: Field = QQ) -> IdealForm:
    return IdealForm(g, frozenset(), frozenset(), (), field)


def whole_ideal(g: Graph, field: Field = QQ) -> IdealForm:
    return IdealForm(g, frozenset(g.vertices), frozenset(), (), field)


def _settle(g: Graph, H: frozenset, S: set):
    """Rebase S onto the current H until stable.

    v^H differs from v^H' by edges landing in H' \\ H, so membership carries
    over; once every edge of v lands in H the element v^H is v itself.
    """
    while True:
        S = {v for v in S if v not in H}
        promote = {v for v in S if outside_count(g, v, H) == 0}
        if not promote:
            return H, frozenset(S)
        H = hs_closure(g, H | promote)


def _exit_ranges(g: Graph, c: Cycle, H: frozenset) -> set:
    """Ranges of exits of c that survive outside H.

    For an exit e at a vertex of c, e* f(c) e = f(0) r(e), so each such range
    lies in the ideal generated by f(c).  A parallel copy of the cycle edge
    is an exit too, with range the next cycle vertex.
    """
    out = set()
    for v, nxt, _ in c.steps():
        for t, m in g.out[v]:
            if t in H:
                continue
            if t != nxt or m != 1:
                out.add(t)
    return out


def _canon_cycle(g: Graph, c) -> Cycle:
    if isinstance(c, Cycle):
        return make_cycle(g, c.vertices, c.labels)
    return make_cycle(g, c)


def normalize(g: Graph, vertex_gens=(), breaking_gens=(), cycle_gens=(), field: Field = QQ) -> IdealForm:
    """Canonical form of the ideal generated by vertices, v^H elements and f(c) elements.

    ``breaking_gens`` name vertices v whose element v^H is a generator, where
    H is the closure of ``vertex_gens``.
    """
    for v in list(vertex_gens) + list(breaking_gens):
        g.check_vertex(v)
    H = hs_closure(g, vertex_gens)
    S = set()
    for v in breaking_gens:
        if v in H:
            continue
        k = outside_count(g, v, H)
        if not g.is_infinite_emitter(v):
            raise IdealError(f"{v} is not an infinite emitter, so {v}^H is undefined")
        if k == OMEGA:
            raise IdealError(f"{v} emits infinitely many edges outside H, so {v}^H is undefined")
        if k == 0:
            H = hs_closure(g, H | {v})
        else:
            S.add(v)

    parts = []
    for c, f in cycle_gens:
        c = _canon_cycle(g, c)
        if not isinstance(f, Poly):
            f = Poly(f if isinstance(f, (list, tuple)) else (f,), field)
        if f.field is not field:
            raise IdealError(f"polynomial over {f.field} in an ideal over {field}")
        if not f.is_zero():
            parts.append((c, laurent_canonical(f)))

    while True:
        H, S = _settle(g, H, S)
        merged: dict = {}
        for c, f in parts:
            if c.vertex_set & H:
                continue
            merged[c] = poly_gcd(merged[c], f) if c in merged else f
        grow = set()
        mark = set()
        B = breaking_vertices(g, H)
        kept = []
        for c, f in merged.items():
            f = laurent_canonical(f)
            if f.degree() == 0:
                grow |= c.vertex_set
                continue
            grow |= _exit_ranges(g, c, H)
            # a cycle vertex u in B_H \ S gives the exit e' into u' in the quotient
            mark |= {u for u in c.vertices if u in B and u not in S}
            kept.append((c, f))
        parts = kept
        if grow:
            H = hs_closure(g, H | grow)
        if mark:
            S = set(S) | mark
        if not grow and not mark:
            break
    return IdealForm(g, H, frozenset(S), tuple(sorted(parts, key=_cycle_key(g))), field)


def graded_ideal(g: Graph, H, S=(), field: Field = QQ) -> IdealForm:
    """I(H,S) for an admissible pair, checked."""
    H = frozenset(H)
    S = frozenset(S)
    if not is_hs(g, H):
        raise IdealError("H is not hereditary saturated")
    if not S <= breaking_vertices(g, H):
        raise IdealError("S is not contained in B_H")
    return IdealForm(g, H, S, (), field)


def cycle_ideal(g: Graph, c, f: Poly) -> IdealForm:
    """The ideal generated by the single element f(c)."""
    return normalize(g, (), (), [(c, f)], f.field)


def check_invariants(A: IdealForm) -> list:
    """Violations of the canonical-form invariants (empty when valid)."""
    g = A.graph
    bad = []
    if not is_hs(g, A.H):
        bad.append("H is not hereditary saturated")
    B = breaking_vertices(g, A.H)
    if not A.S <= B:
        bad.append("S is not inside B_H")
    try:
        q = quotient_graph(g, A.H, A.S & B).graph
    except GraphError as e:
        return bad + [str(e)]
    seen = set()
    for c, f in A.parts:
        if c in seen:
            bad.append(f"duplicate cycle {c}")
        seen.add(c)
        if c.vertex_set & A.H:
            bad.append(f"{c} meets H")
            continue
        if any(lab for lab in c.labels) or not is_exit_free(q, c):
            bad.append(f"{c} has an exit in the quotient")
        if f.degree() < 1 or f.lc() != 1 or f.coeffs[0] == 0:
            bad.append(f"part {f} on {c} is not a canonical generator")
        if f.field is not A.field:
            bad.append(f"part {f} has the wrong field")
    if list(A.parts) != sorted(A.parts, key=_cycle_key(g)):
        bad.append("parts out of order")
    return bad


# -- lattice and ring operations --------------------------------------------

def _same(A: IdealForm, B: IdealForm):
    if A.graph != B.graph:
        raise IdealError("ideals live over different graphs")
    if A.field is not B.field:
        raise IdealError(f"field mismatch: {A.field} vs {B.field}")


def ideal_sum(A: IdealForm, B: IdealForm) -> IdealForm:
    _same(A, B)
    # v^{H_A} and v^{H} differ by terms in <H> for H containing H_A
    return normalize(A.graph, A.H | B.H, A.S | B.S, A.parts + B.parts, A.field)


def normalize_pair(g: Graph, H, S, parts, field: Field = QQ) -> IdealForm:
    """normalize with S given relative to an already hereditary saturated H."""
    H = frozenset(H)
    bad = set(S) - breaking_vertices(g, H) - H
    if bad:
        raise IdealError(f"{g.sorted_vertices(bad)} are not breaking vertices of H")
    return normalize(g, H, S, parts, field)


def membership_poly(A: IdealForm, c: Cycle) -> Poly:
    """Generator of the Laurent ideal {f : f(c) in A} for a cycle c of the graph.

    1 when c lies in H, the stored part when there is one, else 0.
    """
    if c.vertex_set & A.H:
        return Poly.const(1, A.field)
    f = A.part(c)
    return f if f is not None else Poly((), A.field)


def intersect(A: IdealForm, B: IdealForm) -> IdealForm:
    _same(A, B)
    g = A.graph
    H = A.H & B.H
    Bk = breaking_vertices(g, H)
    S = Bk & (A.H | A.S) & (B.H | B.S)
    q = quotient_graph(g, H, S).graph
    parts = []
    for c in exit_free_cycles(q):
        fa, fb = membership_poly(A, c), membership_poly(B, c)
        if fa.is_zero() or fb.is_zero():
            continue
        parts.append((c, poly_lcm(fa, fb)))
    return normalize_pair(g, H, S, parts, A.field)


def gr(A: IdealForm) -> IdealForm:
    """The largest graded ideal inside A."""
    return IdealForm(A.graph, A.H, A.S, (), A.field)


def is_graded(A: IdealForm) -> bool:
    return A.is_graded


def product(A: IdealForm, B: IdealForm) -> IdealForm:
    """A*B from the bilinear expansion A = gr(A) + sum of <f(c)>.

    gr(A)*B = gr(A) & B for graded factors; same-cycle parts multiply their
    polynomials; parts on distinct cycles multiply to their intersection.
    """
    _same(A, B)
    g = A.graph
    acc = ideal_sum(intersect(gr(A), B), intersect(gr(B), A))
    for c, f in A.parts:
        for d, h in B.parts:
            if c == d:
                term = cycle_ideal(g, c, f * h)
            else:
                term = intersect(cycle_ideal(g, c, f), cycle_ideal(g, d, h))
            acc = ideal_sum(acc, term)
    return acc


def power(A: IdealForm, n: int) -> IdealForm:
    if n < 1:
        raise IdealError("power needs n >= 1")
    result = A
    for _ in range(n - 1):
        result = product(result, A)
    return result


def contains(A: IdealForm, B: IdealForm) -> bool:
    """B is a subset of A."""
    _same(A, B)
    return ideal_sum(A, B) == A


def compare(A: IdealForm, B: IdealForm) -> str:
    """One of ``"equal"``, ``"A<B"``, ``"B<A"``, ``"incomparable"``."""
    _same(A, B)
    if A == B:
        return "equal"
    if contains(B, A):
        return "A<B"
    if contains(A, B):
        return "B<A"
    return "incomparable"


def radical(A: IdealForm) -> IdealForm:
    parts = tuple((c, squarefree_part(f)) for c, f in A.parts)
    return IdealForm(A.graph, A.H, A.S, parts, A.field)


# -- primes ---------------------------------------------------------------

@dataclass(frozen=True)
class PrimeDescriptor:
    kind: str  # "graded" or "nongraded"
    H: frozenset
    S: frozenset
    cycle: Cycle | None = None
    poly: Poly | None = None

    def ideal(self, g: Graph, field: Field = QQ) -> IdealForm:
        if self.kind == "graded":
            return IdealForm(g, self.H, self.S, (), field)
        return normalize_pair(g, self.H, self.S, [(self.cycle, self.poly)], self.poly.field)

    @classmethod
    def of(cls, P: IdealForm) -> "PrimeDescriptor":
        if P.is_graded:
            return cls("graded", P.H, P.S)
        (c, f), = P.parts
        return cls("nongraded", P.H, P.S, c, f)

    def __str__(self):
        g_part = f"H={{{', '.join(sorted(map(str, self.H)))}}}, S={{{', '.join(sorted(map(str, self.S)))}}}"
        if self.kind == "graded":
            return f"graded({g_part})"
        return f"nongraded({g_part}, {self.cycle}: {self.poly})"


def is_prime(A: IdealForm) -> bool:
    """Primality of a proper ideal.

    L/I(H,S) is the algebra of E\\(H,S), which is prime iff its vertex set is
    downward directed.  A non-graded prime has S = B_H, a single part whose
    polynomial is irreducible, and a downward directed complement.
    """
    from .graph import is_downward_directed

    if A.is_whole:
        raise IdealError("the whole algebra is not a proper ideal")
    g = A.graph
    q = quotient_graph(g, A.H, A.S).graph
    if not is_downward_directed(q):
        return False
    if A.is_graded:
        return True
    if A.S != breaking_vertices(g, A.H) or len(A.parts) != 1:
        return False
    return is_irreducible(A.parts[0][1])


def prime_power_factor(A: IdealForm):
    """(P, n) with P prime and A = P^n, or NotPrimeRadical."""
    if A.is_whole:
        raise IdealError("the whole algebra is not a proper ideal")
    R = radical(A)
    if not is_prime(R):
        raise NotPrimeRadical(f"radical {R} is not prime")
    if R.is_graded:
        n = 1
    else:
        (_, p), = R.parts
        (_, f), = A.parts
        n = f.degree() // p.degree()
    if power(R, n) != A:
        raise ArithmeticError(f"{A} has prime radical {R} but is not a power of it")
    return PrimeDescriptor.of(R), n
