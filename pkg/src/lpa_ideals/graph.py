"""Finite directed multigraphs with symbolic infinite edge bundles.

A graph is a finite ordered vertex tuple plus at most one *bundle* per
ordered vertex pair.  A bundle carries a multiplicity that is either a
positive integer or ``OMEGA`` (infinitely many parallel edges).  Everything
here is a pure function of immutable values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Union

OMEGA = math.inf
Multiplicity = Union[int, float]

DEFAULT_VERTEX_CAP = 16


class GraphError(ValueError):
    """Malformed graph or an argument that does not belong to the graph."""


class CapacityError(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


def _check_mult(m) -> Multiplicity:
    if m == OMEGA:
        return OMEGA
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise GraphError(f"multiplicity must be a positive integer or OMEGA, got {m!r}")
    return m


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    bundles: tuple  # ((src, dst, multiplicity), ...) sorted by vertex position
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex identifiers")
        pos = {v: i for i, v in enumerate(self.vertices)}
        seen = set()
        for s, t, m in self.bundles:
            if s not in pos or t not in pos:
                raise GraphError(f"bundle {s}->{t} has an endpoint outside the vertex set")
            if (s, t) in seen:
                raise GraphError(f"more than one bundle for {s}->{t}")
            seen.add((s, t))
            _check_mult(m)

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable, name: str = "") -> "Graph":
        """Build from ``(src, dst)`` or ``(src, dst, mult)`` triples.

        Repeated pairs are merged by adding multiplicities (``OMEGA`` absorbs).
        """
        vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        acc: dict = {}
        for e in edges:
            s, t, m = (e[0], e[1], 1) if len(e) == 2 else e
            m = _check_mult(m)
            if s not in pos or t not in pos:
                raise GraphError(f"unknown endpoint in edge {s}->{t}")
            acc[(s, t)] = acc.get((s, t), 0) + m
        bundles = tuple(
            (s, t, m) for (s, t), m in sorted(acc.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]]))
        )
        return cls(vertices, bundles, name)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.vertices, self.bundles))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out(self) -> dict:
        """vertex -> tuple of (target, multiplicity)."""
        d = {v: [] for v in self.vertices}
        for s, t, m in self.bundles:
            d[s].append((t, m))
        return {v: tuple(x) for v, x in d.items()}

    @cached_property
    def _mult(self) -> dict:
        return {(s, t): m for s, t, m in self.bundles}

    def multiplicity(self, u, v) -> Multiplicity:
        return self._mult.get((u, v), 0)

    def check_vertex(self, v):
        if v not in self.index:
            raise GraphError(f"unknown vertex {v!r}")

    def out_degree(self, v) -> Multiplicity:
        return sum(m for _, m in self.out[v])

    def is_sink(self, v) -> bool:
        return not self.out[v]

    def is_infinite_emitter(self, v) -> bool:
        return self.out_degree(v) == OMEGA

    def is_regular(self, v) -> bool:
        d = self.out_degree(v)
        return 0 < d < OMEGA

    def is_source(self, v) -> bool:
        return all(t != v for _, t, _ in self.bundles)

    def sorted_vertices(self, vs: Iterable) -> list:
        return sorted(vs, key=self.index.__getitem__)

    @cached_property
    def reach(self) -> dict:
        """vertex -> frozenset of vertices reachable by a (possibly empty) path."""
        res = {}
        for v in self.vertices:
            seen = {v}
            todo = [v]
            while todo:
                x = todo.pop()
                for t, _ in self.out[x]:
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
            res[v] = frozenset(seen)
        return res

    @property
    def has_omega(self) -> bool:
        return any(m == OMEGA for _, _, m in self.bundles)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Graph{label}: {len(self.vertices)} vertices, {len(self.bundles)} bundles>"


# -- reachability and hereditary saturated sets -----------------------------

def reachable(g: Graph, u, v) -> bool:
    """``u >= v``: a possibly empty directed path runs from u to v."""
    g.check_vertex(u)
    g.check_vertex(v)
    return v in g.reach[u]


def is_hereditary(g: Graph, X) -> bool:
    return all(t in X for v in X for t, _ in g.out[v])


def is_saturated(g: Graph, X) -> bool:
    return not any(
        v not in X and g.is_regular(v) and all(t in X for t, _ in g.out[v])
        for v in g.vertices
    )


def is_hs(g: Graph, X) -> bool:
    return is_hereditary(g, X) and is_saturated(g, X)


@lru_cache(maxsize=65536)
def _hs_closure(g: Graph, X: frozenset) -> frozenset:
    H = set()
    for v in X:
        H |= g.reach[v]
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v not in H and g.is_regular(v) and all(t in H for t, _ in g.out[v]):
                H.add(v)
                changed = True
    return frozenset(H)


def hs_closure(g: Graph, X: Iterable) -> frozenset:
    """Least hereditary saturated set containing X."""
    X = frozenset(X)
    for v in X:
        g.check_vertex(v)
    return _hs_closure(g, X)


@lru_cache(maxsize=256)
def _hs_subsets(g: Graph) -> tuple:
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for X in frontier:
            for v in g.vertices:
                if v not in X:
                    Y = _hs_closure(g, X | {v})
                    if Y not in found:
                        found.add(Y)
                        nxt.append(Y)
        frontier = nxt
    key = lambda X: (len(X), sorted(g.index[v] for v in X))
    return tuple(sorted(found, key=key))


def enumerate_hs_subsets(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> list:
    """Every hereditary saturated subset, including the empty set and E^0.

    Members are frozensets ordered by size, then by vertex positions.  Every
    hereditary saturated set is the closure of a union of single-vertex
    closures, so the search only walks joins of the lattice.
    """
    if len(g.vertices) > cap:
        raise CapacityError(f"{len(g.vertices)} vertices exceeds the cap of {cap}")
    return list(_hs_subsets(g))


def proper_hs_subsets(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> list:
    """Non-empty proper hereditary saturated subsets."""
    full = frozenset(g.vertices)
    return [X for X in enumerate_hs_subsets(g, cap) if X and X != full]


def outside_count(g: Graph, v, H) -> Multiplicity:
    """Number of edges emitted by v whose range lies outside H."""
    return sum(m for t, m in g.out[v] if t not in H)


@lru_cache(maxsize=65536)
def _breaking(g: Graph, H: frozenset) -> frozenset:
    return frozenset(
        v for v in g.vertices
        if v not in H and g.is_infinite_emitter(v) and 0 < outside_count(g, v, H) < OMEGA
    )


def breaking_vertices(g: Graph, H: Iterable) -> frozenset:
    """B_H: infinite emitters outside H with finitely many (>= 1) edges leaving H."""
    return _breaking(g, frozenset(H))


# -- quotients --------------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    graph: Graph
    origin: dict  # quotient vertex -> original vertex
    primed: dict  # original vertex in B_H \ S -> its primed copy


def _prime_name(v, taken) -> str:
    name = f"{v}'"
    while name in taken:
        name += "'"
    return name


@lru_cache(maxsize=65536)
def _quotient(g: Graph, H: frozenset, S: frozenset) -> Quotient:
    B = _breaking(g, H)
    if not S <= B:
        raise GraphError(f"S must be a subset of the breaking vertices {sorted(B)}")
    taken = set(g.vertices)
    primed = {}
    for v in g.vertices:
        if v in B and v not in S:
            primed[v] = _prime_name(v, taken)
            taken.add(primed[v])
    vertices = [v for v in g.vertices if v not in H] + list(primed.values())
    edges = []
    for s, t, m in g.bundles:
        if t in H:
            continue
        edges.append((s, t, m))
        if t in primed:
            edges.append((s, primed[t], m))
    origin = {v: v for v in g.vertices if v not in H}
    origin.update({p: v for v, p in primed.items()})
    return Quotient(Graph.build(vertices, edges, name=f"{g.name}\\(H,S)" if g.name else ""), origin, primed)


def quotient_graph(g: Graph, H: Iterable, S: Iterable = ()) -> Quotient:
    """The quotient graph E\\(H,S) with provenance of primed vertices."""
    return _quotient(g, frozenset(H), frozenset(S))


# -- cycles -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Cycle:
    """A simple closed path in canonical rotation.

    ``labels[i]`` selects which parallel edge of the bundle
    ``vertices[i] -> vertices[i+1]`` the cycle uses.
    """

    vertices: tuple
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", (0,) * len(self.vertices))
        if len(self.labels) != len(self.vertices) or not self.vertices:
            raise GraphError("cycle needs one label per vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("cycle vertices must be distinct")

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def steps(self):
        k = len(self.vertices)
        for i, v in enumerate(self.vertices):
            yield v, self.vertices[(i + 1) % k], self.labels[i]

    def __str__(self):
        parts = [v if lab == 0 else f"{v}#{lab}" for v, lab in zip(self.vertices, self.labels)]
        return f"cycle({', '.join(parts)})"


def make_cycle(g: Graph, vertices, labels=None) -> Cycle:
    """Validate a closed path of g and return it in canonical rotation."""
    vertices = tuple(vertices)
    labels = tuple(labels) if labels else (0,) * len(vertices)
    if not vertices:
        raise GraphError("empty cycle")
    for v in vertices:
        g.check_vertex(v)
    k = len(vertices)
    for i in range(k):
        m = g.multiplicity(vertices[i], vertices[(i + 1) % k])
        if m == 0:
            raise GraphError(f"no edge {vertices[i]} -> {vertices[(i + 1) % k]}")
        if labels[i] < 0 or labels[i] >= m:
            raise GraphError(f"edge label {labels[i]} out of range for {vertices[i]} -> {vertices[(i + 1) % k]}")
    r = min(range(k), key=lambda i: g.index[vertices[i]])
    return Cycle(vertices[r:] + vertices[:r], labels[r:] + labels[:r])


@lru_cache(maxsize=256)
def vertex_cycles(g: Graph) -> tuple:
    """Simple cycles as vertex tuples, rotated to start at their first vertex."""
    found = []
    order = g.index
    for start in g.vertices:
        s = order[start]
        stack = [(start, (start,))]
        while stack:
            v, path = stack.pop()
            for t, _ in g.out[v]:
                if t == start:
                    found.append(path)
                elif order[t] > s and t not in path:
                    stack.append((t, path + (t,)))
    key = lambda p: (len(p), [order[v] for v in p])
    return tuple(sorted(set(found), key=key))


def enumerate_cycles(g: Graph, omega_labels: int = 2) -> list:
    """All simple closed paths up to rotation, parallel edges told apart by label.

    An ``OMEGA`` bundle contributes infinitely many cycles; only the first
    ``omega_labels`` labels are listed for it.
    """
    out = []
    for vs in vertex_cycles(g):
        k = len(vs)
        choices = []
        for i in range(k):
            m = g.multiplicity(vs[i], vs[(i + 1) % k])
            choices.append(range(omega_labels if m == OMEGA else m))
        for labels in itertools.product(*choices):
            out.append(Cycle(vs, tuple(labels)))
    return out


def is_exit_free(g: Graph, c: Cycle) -> bool:
    """No vertex of c emits an edge other than its own cycle edge."""
    for v, t, _ in c.steps():
        if g.out[v] != ((t, 1),):
            return False
    return True


@lru_cache(maxsize=65536)
def exit_free_cycles(g: Graph) -> tuple:
    """Exit-free cycles: each vertex emits exactly one edge, following the cycle."""
    succ = {v: g.out[v][0][0] for v in g.vertices if len(g.out[v]) == 1 and g.out[v][0][1] == 1}
    found = set()
    for v in succ:
        path = [v]
        x = succ[v]
        while x in succ and x not in path:
            path.append(x)
            x = succ[x]
        if x == v:
            r = min(range(len(path)), key=lambda i: g.index[path[i]])
            found.add(tuple(path[r:] + path[:r]))
    key = lambda p: (len(p), [g.index[v] for v in p])
    return tuple(Cycle(p) for p in sorted(found, key=key))


def condition_L(g: Graph) -> bool:
    """Every cycle has an exit."""
    return not exit_free_cycles(g)


def closed_path_count(g: Graph, v, cap: int = 2) -> int:
    """Closed simple paths based at v (v is not revisited before the end), capped at ``cap``.

    Other vertices may repeat, so a cycle hanging off such a path already
    gives infinitely many.
    """
    g.check_vertex(v)
    fwd = set()
    todo = [t for t, _ in g.out[v] if t != v]
    while todo:
        x = todo.pop()
        if x not in fwd:
            fwd.add(x)
            todo.extend(t for t, _ in g.out[x] if t != v)
    inner = {x for x in fwd if _reaches_avoiding(g, x, v)}
    if any(all(x in inner for x in c) for c in vertex_cycles(g)):
        return cap

    memo = {}

    def count_from(x):
        # edge paths x -> v through inner vertices only; the inner part is acyclic here
        if x not in memo:
            total = 0
            for t, m in g.out[x]:
                n = 1 if t == v else (count_from(t) if t in inner else 0)
                if n:
                    total += m * n
            memo[x] = min(total, cap)
        return memo[x]

    return int(count_from(v))


def _reaches_avoiding(g: Graph, x, v) -> bool:
    seen = {x}
    todo = [x]
    while todo:
        y = todo.pop()
        for t, _ in g.out[y]:
            if t == v:
                return True
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return False


def condition_K(g: Graph) -> bool:
    """No vertex is the base of exactly one closed simple path."""
    return all(closed_path_count(g, v) != 1 for v in g.vertices)


def is_downward_directed(g: Graph, D: Iterable | None = None) -> bool:
    """Every pair of vertices of D has a common successor inside D."""
    D = list(g.vertices if D is None else D)
    Dset = set(D)
    for u, v in itertools.combinations(D, 2):
        if not (g.reach[u] & g.reach[v] & Dset):
            return False
    return True
