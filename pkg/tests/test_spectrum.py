from lpa_ideals.fixtures import load
from lpa_ideals.graph import make_cycle
from lpa_ideals.ideals import is_prime
from lpa_ideals.poly import GF, QQ, is_irreducible
from lpa_ideals.spectrum import enumerate_primes, graded_primes, irreducible_polys, prime_frames


def names(ps):
    return sorted((sorted(p.H), sorted(p.S)) for p in ps)


def test_e1():
    g = load("E1")
    res = enumerate_primes(g, max_degree=1)
    assert names(res["graded"]) == [([], []), (["v"], [])]
    frames = {(tuple(sorted(f.H)), str(f.cycle)) for f in res["frames"]}
    assert frames == {((), "cycle(v)"), (("v",), "cycle(u)")}


def test_l1():
    res = enumerate_primes(load("L1"), max_degree=2)
    assert names(res["graded"]) == [([], [])]
    polys = {str(p.poly) for p in res["nongraded"]}
    assert {"x - 1", "x + 1", "x^2 + 1"} <= polys
    assert "x^2 - 1" not in polys


def test_acy1():
    res = enumerate_primes(load("ACY1"))
    assert names(res["graded"]) == [(["v"], []), (["w"], [])]
    assert res["frames"] == [] and res["nongraded"] == []


def test_everything_listed_is_prime():
    for name in ("E1", "L1", "EX3", "EX4", "E3", "F"):
        g = load(name)
        res = enumerate_primes(g, max_degree=2)
        for P in res["graded"] + res["nongraded"]:
            assert is_prime(P.ideal(g)), (name, str(P))


def test_irreducibles():
    ps = irreducible_polys(GF(2), max_degree=3)
    assert sorted(str(p) for p in ps) == ["x + 1", "x^2 + x + 1", "x^3 + x + 1", "x^3 + x^2 + 1"]
    assert all(is_irreducible(p) and p(0) != 0 for p in irreducible_polys(QQ, 2, 3))
