"""Seeded random graphs and ideals, and the identity suites run over them.

Every trial draws from its own ``random.Random`` seeded by
``"<suite>:<seed>:<trial>"``, so a single failing trial can be replayed
without re-running the ones before it.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .dsl import print_graph
from .graph import OMEGA, Graph, enumerate_cycles, exit_free_cycles, quotient_graph, vertex_cycles
from .ideals import (
    IdealForm,
    NotPrimeRadical,
    gr,
    ideal_sum,
    intersect,
    normalize,
    normalize_pair,
    power,
    prime_power_factor,
    product,
)
from .lattice import admissible_pairs
from .poly import Poly, field_from_name

SCHEMA = "lpa-ideals/1"
VERTEX_NAMES = "abcdefghijklmnop"


@dataclass(frozen=True)
class GenConfig:
    max_vertices: int = 6
    edge_density: float = 0.45
    omega_prob: float = 0.25
    cycle_bias: float = 0.5
    field: str = "QQ"
    max_poly_degree: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_vertices > len(VERTEX_NAMES) or self.max_poly_degree < 1:
            raise ValueError("caps must be positive (and at most 16 vertices)")

    @property
    def field_obj(self):
        return field_from_name(self.field)

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(asdict(self), sort_keys=True).encode()).hexdigest()[:12]


STRATA = ("acyclic", "exit-free-cycle", "omega", "free")


def random_graph(cfg: GenConfig, rng: random.Random, stratum: str | None = None) -> Graph:
    """A random graph; ``stratum`` forces acyclic / an exit-free cycle / an OMEGA bundle.

    Edges mostly run forward in vertex order so that proper hereditary
    saturated sets are common; cycles are planted on top of that backbone.
    """
    stratum = stratum or rng.choice(STRATA)
    n = rng.randint(min(3, cfg.max_vertices), cfg.max_vertices)
    names = VERTEX_NAMES[:n]
    edges = {}
    omega = stratum != "acyclic"
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < cfg.edge_density:
                m = OMEGA if omega and rng.random() < cfg.omega_prob else (1 if rng.random() < 0.8 else 2)
                edges[(names[i], names[j])] = m
    if stratum != "acyclic":
        for _ in range(rng.randint(1, 2) if rng.random() < cfg.cycle_bias or stratum == "exit-free-cycle" else 0):
            k = rng.randint(1, min(2, n))
            start = rng.randrange(n - k + 1)
            cyc = names[start:start + k]
            for i, v in enumerate(cyc):
                edges[(v, cyc[(i + 1) % k])] = edges.get((v, cyc[(i + 1) % k]), 0) + 1
    if stratum == "exit-free-cycle":
        used = set()
        for _ in range(rng.randint(1, 2)):
            k = rng.randint(1, min(2, n))
            start = rng.randrange(n - k + 1)
            cyc = names[start:start + k]
            if used & set(cyc):
                continue
            used |= set(cyc)
            for v in cyc:
                for key in [e for e in edges if e[0] == v]:
                    del edges[key]
            for i, v in enumerate(cyc):
                edges[(v, cyc[(i + 1) % k])] = 1
    if stratum == "omega" and not any(m == OMEGA for m in edges.values()):
        i = rng.randrange(n)
        j = rng.randrange(i, n)
        edges[(names[i], names[j])] = OMEGA
    name = f"R{rng.randrange(10**6)}"
    return Graph.build(names, [(a, b, m) for (a, b), m in edges.items()], name)


@lru_cache(maxsize=512)
def _pairs(g: Graph) -> tuple:
    return tuple(admissible_pairs(g))


@lru_cache(maxsize=64)
def _factor_pool(field) -> tuple:
    x = Poly.x(field)
    pool = [x - 1, x + 1, x - 2, x * x + 1, x * x + x + 1]
    return tuple(f for f in pool if f.degree() >= 1 and f.coeffs[0] != 0)


def random_poly(cfg: GenConfig, rng: random.Random) -> Poly:
    """A product of a few factors from a small shared pool, so gcds and lcms are non-trivial."""
    pool = [f for f in _factor_pool(cfg.field_obj) if f.degree() <= cfg.max_poly_degree]
    f = Poly.const(1, cfg.field_obj)
    for _ in range(rng.randint(1, 2)):
        f = f * rng.choice(pool) ** rng.randint(1, 2)
    return f


def random_ideal(g: Graph, cfg: GenConfig, rng: random.Random) -> IdealForm:
    """Uniform admissible pair plus 0-2 cycle parts, normalized.

    Parts go on exit-free cycles of the quotient; now and then a generator is
    placed on an arbitrary cycle of the graph so the exit rewriting runs too.
    """
    field = cfg.field_obj
    H, S = rng.choice(_pairs(g))
    gens = []
    free = list(exit_free_cycles(quotient_graph(g, H, S).graph))
    if free:
        for c in rng.sample(free, min(len(free), rng.choice((0, 1, 1, 2, 2)))):
            gens.append((c, random_poly(cfg, rng)))
    if rng.random() < 0.3:
        cyc = enumerate_cycles(g)
        if cyc:
            gens.append((rng.choice(cyc), random_poly(cfg, rng)))
    return normalize_pair(g, H, S, gens, field)


@dataclass
class SuiteReport:
    suite: str
    trials: int = 0
    failures: int = 0
    first_counterexample: dict | None = None
    elapsed: float = 0.0
    seed: object = 0
    config: str = ""
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def fail(self, info: dict):
        self.failures += 1
        if self.first_counterexample is None:
            self.first_counterexample = info

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = SCHEMA
        d["elapsed"] = round(self.elapsed, 3)
        return d


def reproduction(g: Graph, bindings: dict, expr: str, field: str = "QQ") -> str:
    """A shell snippet replaying a check through the command line."""
    lets = " ".join(f"--let '{k}={v}'" for k, v in bindings.items())
    fld = "" if field == "QQ" else f" --field '{field}'"
    return (f"cat > repro.graph <<'EOF'\n{print_graph(g)}EOF\n"
            f"lpa-ideals op repro.graph{fld} {lets} --expr '{expr}'")


def _trial_rng(suite: str, seed, t: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{t}")


def _trial_graph(cfg: GenConfig, rng: random.Random, t: int, graph: Graph | None) -> Graph:
    return graph if graph is not None else random_graph(cfg, rng, STRATA[t % len(STRATA)])


def _identity_suite(name, check, cfg: GenConfig, trials: int, seed, graph: Graph | None, arity: int) -> SuiteReport:
    rep = SuiteReport(name, seed=seed, config=cfg.digest())
    start = time.perf_counter()
    for t in range(trials):
        rng = _trial_rng(name, seed, t)
        g = _trial_graph(cfg, rng, t, graph)
        ideals = [random_ideal(g, cfg, rng) for _ in range(arity)]
        bad = check(*ideals)
        rep.trials += 1
        if bad:
            label, lhs, rhs, expr = bad
            names = "ABC"[:arity]
            rep.fail({
                "trial": t,
                "identity": label,
                "graph": print_graph(g),
                "ideals": {k: str(v) for k, v in zip(names, ideals)},
                "lhs": str(lhs),
                "rhs": str(rhs),
                "repro": reproduction(g, {k: str(v) for k, v in zip(names, ideals)}, expr, cfg.field),
            })
            rep.details[label] = rep.details.get(label, 0) + 1
    rep.elapsed = time.perf_counter() - start
    return rep


def suite_product_meet(cfg: GenConfig = GenConfig(), trials: int = 1000, seed=0, graph: Graph | None = None) -> SuiteReport:
    """A(B & C) = AB & AC."""

    def check(A, B, C):
        lhs = product(A, intersect(B, C))
        rhs = intersect(product(A, B), product(A, C))
        return None if lhs == rhs else ("A*(B&C) = A*B & A*C", lhs, rhs, "A*(B&C)")

    return _identity_suite("t4", check, cfg, trials, seed, graph, 3)


def suite_sum_meet_product(cfg: GenConfig = GenConfig(), trials: int = 1000, seed=0, graph: Graph | None = None) -> SuiteReport:
    """(A + B)(A & B) = AB."""

    def check(A, B):
        lhs = product(ideal_sum(A, B), intersect(A, B))
        rhs = product(A, B)
        return None if lhs == rhs else ("(A+B)*(A&B) = A*B", lhs, rhs, "(A+B)*(A&B)")

    return _identity_suite("t5", check, cfg, trials, seed, graph, 2)


AXIOMS = (
    "AB=BA",
    "graded G: GB=G&B",
    "A&(B+C)=(A&B)+(A&C)",
    "modular law",
    "lattice laws",
)


def suite_axioms(cfg: GenConfig = GenConfig(), trials: int = 1000, seed=0, graph: Graph | None = None) -> SuiteReport:
    """Identities the engine relies on or must respect, each checked on every trial."""

    def check(A, B, C):
        G = gr(A)
        Cm = intersect(A, C)  # any C below A, for the modular law
        checks = (
            ("AB=BA", product(A, B), product(B, A), "A*B"),
            ("graded G: GB=G&B", product(G, B), intersect(G, B), "gr(A)*B"),
            ("A&(B+C)=(A&B)+(A&C)", intersect(A, ideal_sum(B, C)),
             ideal_sum(intersect(A, B), intersect(A, C)), "A&(B+C)"),
            ("modular law", intersect(A, ideal_sum(B, Cm)), ideal_sum(intersect(A, B), Cm), "A&(B+(A&C))"),
            ("lattice laws", ideal_sum(A, intersect(A, B)), A, "A+(A&B)"),
            ("lattice laws", intersect(A, ideal_sum(A, B)), A, "A&(A+B)"),
            ("lattice laws", ideal_sum(ideal_sum(A, B), C), ideal_sum(A, ideal_sum(B, C)), "(A+B)+C"),
            ("lattice laws", intersect(intersect(A, B), C), intersect(A, intersect(B, C)), "(A&B)&C"),
            ("lattice laws", ideal_sum(A, B), ideal_sum(B, A), "A+B"),
            ("lattice laws", intersect(A, B), intersect(B, A), "A&B"),
            ("lattice laws", ideal_sum(A, A), A, "A+A"),
            ("lattice laws", intersect(A, A), A, "A&A"),
        )
        for label, lhs, rhs, expr in checks:
            if lhs != rhs:
                return label, lhs, rhs, expr
        return None

    return _identity_suite("axioms", check, cfg, trials, seed, graph, 3)


# -- primes -----------------------------------------------------------------

def _sample_prime(g: Graph, cfg: GenConfig, rng: random.Random):
    from .spectrum import graded_primes, irreducible_polys, prime_frames

    frames = prime_frames(g)
    if frames and rng.random() < 0.75:
        fr = rng.choice(frames)
        polys = irreducible_polys(cfg.field_obj, cfg.max_poly_degree, 2)
        return fr.instantiate(rng.choice(polys)).ideal(g, cfg.field_obj)
    graded = graded_primes(g)
    if not graded:
        return None
    return rng.choice(graded).ideal(g, cfg.field_obj)


def _laurent_shift(A: IdealForm, rng: random.Random) -> IdealForm:
    """The same ideal rebuilt from generators x^k f(c) and its graded part."""
    x = Poly.x(A.field)
    gens = [(c, f * x ** rng.randint(0, 2)) for c, f in A.parts]
    return normalize_pair(A.graph, A.H, A.S, gens, A.field)


def _control_ok(field) -> bool:
    from .fixtures import load

    L1 = load("L1")
    x = Poly.x(field)
    I = normalize(L1, (), (), [(("u",), (x - 1) * (x - 2))], field)
    try:
        prime_power_factor(I)
    except NotPrimeRadical:
        return True
    return False


def suite_prime_powers(cfg: GenConfig = GenConfig(), trials: int = 200, seed=0, graph: Graph | None = None) -> SuiteReport:
    """Ideals with a prime radical factor as P^n, and power(P, n) gives them back."""
    rep = SuiteReport("t6", seed=seed, config=cfg.digest())
    start = time.perf_counter()
    t = 0
    while rep.trials < trials:
        rng = _trial_rng("t6", seed, t)
        g = _trial_graph(cfg, rng, t, graph)
        t += 1
        P = _sample_prime(g, cfg, rng)
        if P is None:
            continue
        n = rng.randint(1, 4)
        Pn = power(P, n)
        # absorb a higher power and re-express the generator up to a Laurent unit
        I = _laurent_shift(ideal_sum(Pn, power(P, n + rng.randint(0, 2))), rng)
        rep.trials += 1
        info = {"trial": t - 1, "graph": print_graph(g), "P": str(P), "n": n, "I": str(I)}
        try:
            desc, m = prime_power_factor(I)
        except (NotPrimeRadical, ArithmeticError) as e:
            rep.fail(dict(info, error=str(e)))
            continue
        Q = desc.ideal(g, cfg.field_obj)
        want_n = 1 if P.is_graded else n
        if Q != P or m != want_n or power(Q, m) != I:
            rep.fail(dict(info, got=str(Q), m=m))
    rep.details["nonprime_control_rejected"] = _control_ok(cfg.field_obj)
    if not rep.details["nonprime_control_rejected"]:
        rep.fail({"control": "<(c-1)(c-2)> on L1 was not rejected"})
    rep.elapsed = time.perf_counter() - start
    return rep


def suite_primary_chain(cfg: GenConfig = GenConfig(), trials: int = 200, seed=0, graph: Graph | None = None) -> SuiteReport:
    """P^(n+1) + J with J inside P^n is P^n or P^(n+1); non-graded powers strictly decrease."""
    rep = SuiteReport("c7", seed=seed, config=cfg.digest())
    start = time.perf_counter()
    t = 0
    while rep.trials < trials:
        rng = _trial_rng("c7", seed, t)
        g = _trial_graph(cfg, rng, t, graph)
        t += 1
        P = _sample_prime(g, cfg, rng)
        if P is None:
            continue
        n = rng.randint(1, 3)
        Pn, Pn1 = power(P, n), power(P, n + 1)
        rep.trials += 1
        info = {"trial": t - 1, "graph": print_graph(g), "P": str(P), "n": n}
        X = random_ideal(g, cfg, rng)
        candidates = [product(Pn, X), intersect(Pn, X), Pn]
        if not P.is_graded:
            (c, p), = P.parts
            extra = random_poly(cfg, rng)
            candidates.append(normalize_pair(g, P.H, P.S, [(c, p ** n * extra)], P.field))
        for J in candidates:
            A = ideal_sum(Pn1, J)
            if A not in (Pn, Pn1):
                rep.fail(dict(info, J=str(J), A=str(A)))
                break
        else:
            if not P.is_graded:
                chain = [power(P, k) for k in range(1, n + 2)]
                if any(chain[k] == chain[k + 1] or not intersect(chain[k], chain[k + 1]) == chain[k + 1]
                       for k in range(len(chain) - 1)):
                    rep.fail(dict(info, chain=[str(c) for c in chain]))
            elif Pn != P:
                rep.fail(dict(info, Pn=str(Pn)))
    rep.elapsed = time.perf_counter() - start
    return rep


# -- cancellation -----------------------------------------------------------

def suite_cancellation(cfg: GenConfig = GenConfig(), trials: int = 50, seed=0, graph: Graph | None = None,
                       fuzz: int = 500, include_fixtures: bool = True) -> SuiteReport:
    """Verdict versus search: cancellative graphs yield no witness, the others yield a verified one."""
    from .cancellation import cancellation_check, cancellation_counterexample, verify_witness
    from .fixtures import load

    rep = SuiteReport("cancel", seed=seed, config=cfg.digest())
    start = time.perf_counter()
    graphs = []
    if graph is not None:
        graphs.append(("given", graph))
    else:
        if include_fixtures:
            graphs += [(name, load(name)) for name in ("E1", "R2", "E3", "F", "EX3", "EX4")]
        for t in range(trials):
            rng = _trial_rng("cancel", seed, t)
            graphs.append((f"random:{t}", random_graph(cfg, rng, STRATA[t % len(STRATA)])))
    failing_random = witnessed_random = 0
    rows = []
    for label, g in graphs:
        verdict = cancellation_check(g)
        found = cancellation_counterexample(g, seed=f"{seed}:{label}", trials=fuzz, field=cfg.field_obj)
        w = found.witness
        verified = w is not None and verify_witness(w.A, w.B, w.C)
        rep.trials += 1
        rows.append({"graph": label, "verdict": verdict.cancellative, "branch": verdict.branch,
                     "witness": w.as_dict() if w else None})
        info = {"graph_label": label, "graph": print_graph(g), "verdict": verdict.branch}
        if verdict.cancellative and w is not None:
            rep.fail(dict(info, problem="cancellative verdict but a counterexample exists", witness=w.as_dict()))
        elif not verdict.cancellative:
            if label.startswith("random"):
                failing_random += 1
                witnessed_random += verified
            if not verified:
                rep.fail(dict(info, problem="non-cancellative verdict but no verified counterexample"))
    rate = witnessed_random / failing_random if failing_random else 1.0
    rep.details.update({"graphs": rows, "random_failing": failing_random,
                        "random_witnessed": witnessed_random, "witness_rate": rate})
    rep.elapsed = time.perf_counter() - start
    return rep


SUITES = {
    "t4": suite_product_meet,
    "t5": suite_sum_meet_product,
    "t6": suite_prime_powers,
    "c7": suite_primary_chain,
    "axioms": suite_axioms,
    "cancel": suite_cancellation,
}

DEFAULT_TRIALS = {"t4": 1000, "t5": 1000, "t6": 200, "c7": 200, "axioms": 1000, "cancel": 50}
