import random
import subprocess
import sys

import pytest

from lpa_ideals.dsl import print_graph
from lpa_ideals.fixtures import load
from lpa_ideals.graph import exit_free_cycles, vertex_cycles
from lpa_ideals.ideals import check_invariants, ideal_sum
from lpa_ideals.verify import (
    DEFAULT_TRIALS,
    SCHEMA,
    STRATA,
    SUITES,
    GenConfig,
    _identity_suite,
    random_graph,
    random_ideal,
    reproduction,
    suite_axioms,
    suite_cancellation,
    suite_primary_chain,
    suite_product_meet,
    suite_sum_meet_product,
    suite_prime_powers,
)


def test_generator_is_deterministic():
    cfg = GenConfig(seed=1)
    a = [random_graph(cfg, random.Random(f"x:{t}")) for t in range(20)]
    b = [random_graph(cfg, random.Random(f"x:{t}")) for t in range(20)]
    assert a == b
    assert suite_product_meet(cfg, trials=30, seed=5).to_dict()["failures"] == 0


def test_config_digest():
    assert GenConfig().digest() == GenConfig().digest()
    assert GenConfig(max_vertices=4).digest() != GenConfig().digest()
    with pytest.raises(ValueError):
        GenConfig(max_vertices=0)


def test_tiny_budget_gives_loop_graphs():
    cfg = GenConfig(max_vertices=1, cycle_bias=1.0)
    for t in range(40):
        g = random_graph(cfg, random.Random(t), "exit-free-cycle")
        assert len(g.vertices) == 1 and g.multiplicity("a", "a") >= 1


def test_strata_coverage():
    cfg = GenConfig()
    gs = [random_graph(cfg, random.Random(t), STRATA[t % 4]) for t in range(400)]
    acyclic = sum(1 for g in gs if not vertex_cycles(g)) / len(gs)
    exit_free = sum(1 for g in gs if exit_free_cycles(g)) / len(gs)
    omega = sum(1 for g in gs if g.has_omega) / len(gs)
    assert acyclic >= 0.25 and exit_free >= 0.25 and omega >= 0.20


def test_random_ideals_are_canonical():
    cfg = GenConfig()
    rng = random.Random(0)
    for t in range(200):
        g = random_graph(cfg, rng, STRATA[t % 4])
        A = random_ideal(g, cfg, rng)
        assert check_invariants(A) == []


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_runs_clean_on_small_budgets(name):
    if name == "cancel":
        rep = suite_cancellation(trials=0, graph=load("R2"), fuzz=50)
    else:
        rep = SUITES[name](GenConfig(), trials=40, seed=3)
    assert rep.ok, rep.first_counterexample
    d = rep.to_dict()
    assert d["schema"] == SCHEMA and d["trials"] >= 1 and d["config"] == GenConfig().digest()


def test_suites_on_fixtures():
    for name in ("EX4", "E1", "EX3"):
        g = load(name)
        assert suite_sum_meet_product(trials=20, graph=g).ok
        assert suite_axioms(trials=20, graph=g).ok


def test_degenerate_b_equals_c():
    g = load("EX4")
    rep = _identity_suite("deg", lambda A, B: None, GenConfig(), 5, 0, g, 2)
    assert rep.ok and rep.trials == 5


def test_failure_carries_reproduction(tmp_path):
    def broken(A, B):
        lhs, rhs = ideal_sum(A, B), A
        return None if lhs == rhs else ("A+B=A", lhs, rhs, "A+B")

    rep = _identity_suite("broken", broken, GenConfig(), 200, 0, None, 2)
    assert not rep.ok
    cx = rep.first_counterexample
    script = cx["repro"]
    assert script.startswith("cat > repro.graph")
    # the script replays through the installed command and prints lhs
    out = subprocess.run(["bash", "-c", script.replace("lpa-ideals", f"{sys.executable} -m lpa_ideals")],
                         cwd=tmp_path, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == cx["lhs"]


def test_reproduction_text():
    g = load("L1")
    s = reproduction(g, {"A": "cycle(u): x - 1"}, "A*A", "GF(5)")
    assert print_graph(g) in s and "--field 'GF(5)'" in s and "--expr 'A*A'" in s


def test_prime_suites_on_l1():
    g = load("L1")
    assert suite_prime_powers(trials=30, graph=g).ok
    assert suite_primary_chain(trials=30, graph=g).ok
    assert suite_prime_powers(trials=10, graph=g).details["nonprime_control_rejected"]


def test_gf_field_suites():
    cfg = GenConfig(field="GF(3)")
    assert suite_product_meet(cfg, trials=40).ok
    assert suite_prime_powers(cfg, trials=40).ok


def test_default_trials_cover_all_suites():
    assert set(DEFAULT_TRIALS) == set(SUITES)


def test_cancellation_suite_default_budget():
    # fixtures plus 50 random graphs, 500 fuzz trials each: verdict and search must agree everywhere
    rep = suite_cancellation(GenConfig(), trials=50, seed=0, fuzz=500)
    failures = rep.failures
    first = rep.first_counterexample or {}
    summary = f"first: {first.get('graph_label')}: {first.get('problem')}, witness rate {rep.details['witness_rate']:.3f}"
    assert failures == 0, summary
