"""Independent ground truth for the symbolic engine.

For a finite acyclic graph with finite multiplicities the algebra is finite
dimensional.  Eliminating every non-sink vertex with v = sum e e* leaves the
basis of path pairs (a, b) ending at a common sink, which multiply as matrix
units: (a b*)(c d*) = a d* if b = c, else 0.  Ideals are computed there by
plain linear algebra over GF(p).

Cycle parts are checked against Laurent-ideal arithmetic done with sympy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .graph import OMEGA, Graph, vertex_cycles
from .ideals import (
    IdealForm,
    ideal_sum,
    intersect,
    normalize,
    product,
    radical,
)
from .poly import QQ, Poly

DEFAULT_PRIME = 32003
DIMENSION_CAP = 4096


class OracleError(ValueError):
    pass


# -- the explicit algebra ---------------------------------------------------

@dataclass
class ConcreteAlgebra:
    graph: Graph
    p: int
    basis: list  # [(alpha, beta)], paths as (start, edge tuple)
    index: dict = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _paths_from(self) -> dict:
        # vertex -> paths from it to a sink
        out = {}
        for a, _ in self.basis:
            out.setdefault(a[0], set()).add(a)
        return {v: sorted(ps, key=repr) for v, ps in out.items()}

    def paths_from(self, v) -> list:
        return self._paths_from.get(v, [])

    def mul(self, x: dict, y: dict) -> dict:
        """Product of two sparse vectors {basis index: coeff}."""
        p = self.p
        by_left: dict = {}
        for j, cj in y.items():
            c, d = self.basis[j]
            by_left.setdefault(c, []).append((d, cj))
        out: dict = {}
        for i, ci in x.items():
            a, b = self.basis[i]
            for d, cj in by_left.get(b, ()):
                k = self.index[(a, d)]
                out[k] = (out.get(k, 0) + ci * cj) % p
        return {k: c for k, c in out.items() if c}

    def unit(self, i: int) -> dict:
        return {i: 1}

    # images of the generators

    def vertex(self, v) -> dict:
        return {self.index[(a, a)]: 1 for a in self.paths_from(v)}

    def edge(self, e) -> dict:
        s, t, k = e
        out = {}
        for a in self.paths_from(t):
            ea = (s, ((s, t, k),) + a[1])
            out[self.index[(ea, a)]] = 1
        return out

    def ghost(self, e) -> dict:
        s, t, k = e
        out = {}
        for a in self.paths_from(t):
            ea = (s, ((s, t, k),) + a[1])
            out[self.index[(a, ea)]] = 1
        return out


def _sink_paths(g: Graph) -> dict:
    """vertex -> list of paths from that vertex to a sink."""
    memo: dict = {}

    def go(v):
        if v not in memo:
            if g.is_sink(v):
                memo[v] = [(v, ())]
            else:
                acc = []
                for t, m in g.out[v]:
                    for k in range(m):
                        for _, rest in go(t):
                            acc.append((v, ((v, t, k),) + rest))
                memo[v] = acc
        return memo[v]

    for v in g.vertices:
        go(v)
    return memo


def _end(path, g: Graph):
    v, es = path
    return es[-1][1] if es else v


def build_concrete(g: Graph, p: int = DEFAULT_PRIME, cap: int = DIMENSION_CAP) -> ConcreteAlgebra:
    if vertex_cycles(g):
        raise OracleError("the concrete model needs an acyclic graph")
    if g.has_omega:
        raise OracleError("the concrete model needs finite multiplicities")
    paths = _sink_paths(g)
    into: dict = {}
    for v in g.vertices:
        for a in paths[v]:
            into.setdefault(_end(a, g), []).append(a)
    dim = sum(len(ps) ** 2 for ps in into.values())
    if dim > cap:
        raise OracleError(f"dimension {dim} exceeds the cap {cap}")
    basis = []
    for s in g.vertices:
        for a in into.get(s, ()):
            for b in into[s]:
                basis.append((a, b))
    return ConcreteAlgebra(g, p, basis, {pair: i for i, pair in enumerate(basis)})


# -- subspaces over GF(p) ---------------------------------------------------

class Subspace:
    """Row-reduced basis {pivot: row} of a subspace of GF(p)^n, rows as dicts."""

    def __init__(self, p: int, rows=()):
        self.p = p
        self.rows: dict = {}
        for r in rows:
            self.add(r)

    def reduce(self, v: dict) -> dict:
        p = self.p
        v = {k: c % p for k, c in v.items() if c % p}
        while v:
            piv = min(v)
            row = self.rows.get(piv)
            if row is None:
                return v
            c = v[piv]
            for k, rc in row.items():
                nc = (v.get(k, 0) - c * rc) % p
                if nc:
                    v[k] = nc
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        inv = pow(v[piv], -1, self.p)
        v = {k: c * inv % self.p for k, c in v.items()}
        # keep the basis fully reduced so equality is literal
        for q, row in list(self.rows.items()):
            c = row.get(piv)
            if c:
                new = dict(row)
                for k, vc in v.items():
                    nc = (new.get(k, 0) - c * vc) % self.p
                    if nc:
                        new[k] = nc
                    else:
                        new.pop(k, None)
                self.rows[q] = new
        self.rows[piv] = v
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def key(self):
        return frozenset((q, frozenset(r.items())) for q, r in self.rows.items())

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows.values())

    def vectors(self) -> list:
        return list(self.rows.values())


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    return Subspace(U.p, U.vectors() + W.vectors())


def subspace_intersection(U: Subspace, W: Subspace, n: int) -> Subspace:
    """Zassenhaus: reduce rows (u | u) and (w | 0); rows (0 | x) span U & W."""
    Z = Subspace(U.p)
    for u in U.vectors():
        row = dict(u)
        row.update({k + n: c for k, c in u.items()})
        Z.add(row)
    for w in W.vectors():
        Z.add(dict(w))
    return Subspace(U.p, [{k - n: c for k, c in r.items()} for q, r in Z.rows.items() if q >= n])


def concrete_ideal(alg: ConcreteAlgebra, generators) -> Subspace:
    """Two-sided ideal spanned by x g y over basis elements x, y."""
    span = Subspace(alg.p)
    for gen in generators:
        for i in range(alg.dimension):
            left = alg.mul({i: 1}, gen)
            if not left:
                continue
            for j in range(alg.dimension):
                span.add(alg.mul(left, {j: 1}))
    return span


def ideal_product(alg: ConcreteAlgebra, U: Subspace, W: Subspace) -> Subspace:
    out = Subspace(alg.p)
    for u in U.vectors():
        for w in W.vectors():
            out.add(alg.mul(u, w))
    return out


def symbolic_to_concrete(alg: ConcreteAlgebra, A: IdealForm) -> Subspace:
    if A.S or A.parts:
        raise OracleError("acyclic graphs with finite multiplicities only carry I(H, {})")
    return concrete_ideal(alg, [alg.vertex(v) for v in A.H])


def enumerate_concrete_ideals(alg: ConcreteAlgebra) -> set:
    """All ideals, as closures under sum of the principal ideals of basis elements."""
    principal = {concrete_ideal(alg, [{i: 1}]) for i in range(alg.dimension)}
    found = {Subspace(alg.p)}
    frontier = list(found)
    while frontier:
        nxt = []
        for U in frontier:
            for P in principal:
                V = subspace_sum(U, P)
                if V not in found:
                    found.add(V)
                    nxt.append(V)
        frontier = nxt
    return found


@dataclass
class OracleReport:
    name: str
    trials: int = 0
    checks: int = 0
    mismatches: int = 0
    first_mismatch: dict | None = None

    def record(self, ok: bool, detail: dict):
        self.checks += 1
        if not ok:
            self.mismatches += 1
            if self.first_mismatch is None:
                self.first_mismatch = detail

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _random_generators(alg: ConcreteAlgebra, rng: random.Random):
    """Random vertices, edges and ghost edges, each with its symbolic vertex."""
    g = alg.graph
    edges = [(s, t, k) for s, t, m in g.bundles for k in range(m)]
    out = []
    for _ in range(rng.randint(0, 3)):
        kind = rng.choice(("v", "e", "e*")) if edges else "v"
        if kind == "v":
            v = rng.choice(g.vertices)
            out.append((alg.vertex(v), v, v))
        else:
            e = rng.choice(edges)
            # <e> = <e*> = <r(e)> since e = e r(e) and r(e) = e* e
            img = alg.edge(e) if kind == "e" else alg.ghost(e)
            out.append((img, f"{kind}:{e[0]}->{e[1]}#{e[2]}", e[1]))
    return out


def compare_with_symbolic(g: Graph, trials: int = 100, seed=0, p: int = DEFAULT_PRIME) -> OracleReport:
    """Sums, products and intersections of random ideals, both ways."""
    alg = build_concrete(g, p)
    rng = random.Random(f"oracle:{g.name}:{seed}")
    rep = OracleReport(f"acyclic:{g.name}")
    n = alg.dimension
    principal: dict = {}

    def concrete(gens):
        # principal ideals are cached per generator; an ideal is their sum
        out = Subspace(alg.p)
        for img, label, _ in gens:
            if label not in principal:
                principal[label] = concrete_ideal(alg, [img])
            for r in principal[label].vectors():
                out.add(r)
        return out

    images: dict = {}

    def image(A: IdealForm) -> Subspace:
        if A.H not in images:
            images[A.H] = symbolic_to_concrete(alg, A)
        return images[A.H]

    for t in range(trials):
        rep.trials += 1
        gens_a = _random_generators(alg, rng)
        gens_b = _random_generators(alg, rng)
        A = normalize(g, [v for _, _, v in gens_a])
        B = normalize(g, [v for _, _, v in gens_b])
        CA, CB = concrete(gens_a), concrete(gens_b)
        detail = {"trial": t, "seed": seed, "A": [s for _, s, _ in gens_a], "B": [s for _, s, _ in gens_b]}
        rep.record(image(A) == CA, dict(detail, op="A"))
        rep.record(image(B) == CB, dict(detail, op="B"))
        rep.record(image(ideal_sum(A, B)) == subspace_sum(CA, CB), dict(detail, op="sum"))
        rep.record(image(product(A, B)) == ideal_product(alg, CA, CB), dict(detail, op="product"))
        rep.record(image(intersect(A, B)) == subspace_intersection(CA, CB, n),
                   dict(detail, op="intersect"))
    return rep


def random_acyclic_graph(rng: random.Random, max_vertices: int = 5, density: float = 0.5) -> Graph:
    n = rng.randint(1, max_vertices)
    names = "abcdefgh"[:n]
    edges = [(names[i], names[j], 1 if rng.random() < 0.8 else 2)
             for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return Graph.build(names, edges, f"A{rng.randrange(10**6)}")


def acyclic_suite(graphs: int = 50, trials: int = 100, seed=0, max_vertices: int = 5) -> dict:
    """compare_with_symbolic on random acyclic graphs, plus ideal counts against the lattice."""
    from .lattice import admissible_pairs

    rng = random.Random(f"acyclic-suite:{seed}")
    out = {"suite": "acyclic", "graphs": 0, "checks": 0, "mismatches": 0, "count_mismatches": 0,
           "max_dimension": 0, "first_mismatch": None}
    while out["graphs"] < graphs:
        g = random_acyclic_graph(rng, max_vertices)
        try:
            alg = build_concrete(g)
        except OracleError:
            continue
        out["graphs"] += 1
        out["max_dimension"] = max(out["max_dimension"], alg.dimension)
        rep = compare_with_symbolic(g, trials, seed)
        out["checks"] += rep.checks
        out["mismatches"] += rep.mismatches
        if rep.first_mismatch and out["first_mismatch"] is None:
            out["first_mismatch"] = dict(rep.first_mismatch, graph=repr(g.bundles))
        if alg.dimension <= 64 and len(enumerate_concrete_ideals(alg)) != len(admissible_pairs(g)):
            out["count_mismatches"] += 1
    return out


def laurent_suite(pairs: int = 200, seed=0, fields=None) -> dict:
    from .poly import GF

    fields = fields or (QQ, GF(5))
    out = {"suite": "laurent", "scenarios": [], "checks": 0, "mismatches": 0, "first_mismatch": None}
    for sc in laurent_scenarios():
        for f in fields:
            rep = laurent_oracle(sc, pairs, seed, f)
            out["scenarios"].append(f"{sc.name}/{f}")
            out["checks"] += rep.checks
            out["mismatches"] += rep.mismatches
            if rep.first_mismatch and out["first_mismatch"] is None:
                out["first_mismatch"] = dict(rep.first_mismatch, scenario=sc.name, field=str(f))
    return out


# -- Laurent oracle ---------------------------------------------------------

def _to_sympy(f: Poly):
    import sympy

    x = sympy.Symbol("x")
    if f.field is QQ:
        return sympy.Poly(list(reversed(f.coeffs)) or [0], x, domain=sympy.QQ)
    return sympy.Poly(list(reversed(f.coeffs)) or [0], x, modulus=f.field.characteristic)


def _sympy_laurent(sp) -> list:
    """Canonical Laurent generator as ascending coefficients (as strings), via sympy."""
    import sympy

    x = sp.gen
    low = min(m[0] for m in sp.monoms())
    q = sympy.Poly(sp.as_expr() / x ** low, x, domain=sp.domain).monic()
    return [str(c) for c in reversed(q.all_coeffs())]


def _coeff_strings(f: Poly, p: int) -> list:
    if p:
        # sympy prints residues symmetrically
        return [str(c if c <= p // 2 else c - p) for c in f.coeffs]
    return [str(c) for c in f.coeffs]


@dataclass(frozen=True)
class LaurentScenario:
    name: str
    graph: Graph
    base_H: tuple
    cycle: tuple


def laurent_scenarios() -> list:
    from .fixtures import load

    return [
        LaurentScenario("L1", load("L1"), (), ("u",)),
        LaurentScenario("E1", load("E1"), (), ("v",)),
        LaurentScenario("E1/H", load("E1"), ("v",), ("u",)),
        LaurentScenario("EX4", load("EX4"), ("v",), ("u",)),
    ]


def _random_poly(rng: random.Random, field, max_degree: int = 4) -> Poly:
    while True:
        d = rng.randint(1, max_degree)
        cs = [rng.randint(-5, 5) for _ in range(d)] + [rng.choice([1, 1, 2, -3])]
        f = Poly(cs, field)
        if f.degree() >= 1 and f.coeffs[0] != 0:
            return f


def laurent_oracle(scenario: LaurentScenario, pairs: int = 200, seed=0, field=QQ) -> OracleReport:
    """Cycle parts of sum / product / intersect / radical against sympy gcd / product / lcm / sqf."""
    import sympy

    g = scenario.graph
    rng = random.Random(f"laurent:{scenario.name}:{seed}")
    rep = OracleReport(f"laurent:{scenario.name}")
    p = field.characteristic
    base = normalize(g, scenario.base_H, (), (), field)

    def ideal(f):
        return normalize(g, scenario.base_H, (), [(scenario.cycle, f)], field)

    def expect(result: IdealForm, sp) -> bool:
        want = _sympy_laurent(sp)
        if len(want) == 1:
            # unit: the cycle is swallowed by H
            return result.is_graded and set(scenario.cycle) <= result.H
        if result.H != base.H or len(result.parts) != 1:
            return False
        return _coeff_strings(result.parts[0][1], p) == want

    for t in range(pairs):
        rep.trials += 1
        # products of a shared random factor make gcds non-trivial
        common = _random_poly(rng, field, 2)
        f = _random_poly(rng, field, 3) * (common if rng.random() < 0.5 else 1)
        h = _random_poly(rng, field, 3) * (common if rng.random() < 0.5 else 1)
        if rng.random() < 0.3:
            f = f * common
        A, B = ideal(f), ideal(h)
        sf, sh = _to_sympy(f), _to_sympy(h)
        detail = {"trial": t, "f": str(f), "g": str(h)}
        rep.record(expect(ideal_sum(A, B), sympy.gcd(sf, sh)), dict(detail, op="sum"))
        rep.record(expect(intersect(A, B), sympy.lcm(sf, sh)), dict(detail, op="intersect"))
        rep.record(expect(product(A, B), sf * sh), dict(detail, op="product"))
        rep.record(expect(radical(A), sympy.sqf_part(sf)), dict(detail, op="radical"))
    return rep
