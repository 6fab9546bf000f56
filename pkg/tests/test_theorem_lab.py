import json

import pytest

from anderson_ring.poly import NotFoundUpTo, Poly, parse_poly
from anderson_ring.ring import RingSpec, factorize, ideal_from_generators, ideal_lattice, predicates
from anderson_ring.spectrum import LocIdeal
from anderson_ring.theorem_lab import (
    Certificate,
    SearchMiss,
    Status,
    check_contraction,
    check_gaussian_slice,
    check_generator_count,
    check_locally_principal,
    check_pir2,
    check_vnr_prufer_slice,
    generator_search,
    square_free_identity,
)

from conftest import SUITE

R = RingSpec.parse
Z4, Z5, Z6 = R("Z4"), R("Z5"), R("Z6")


def ideal(ring, *gens):
    return ideal_from_generators(ring, list(gens))


def square_free(n):
    return all(e == 1 for _, e in factorize(n))


def test_generator_search_z6():
    cert = generator_search(LocIdeal.i_plus_x(ideal(Z6, 2)), 1)
    assert isinstance(cert, Certificate) and cert.check()
    assert cert.generator == parse_poly("X+2", Z6)
    assert "(X)*(2X+1) = (X+2)*(2X+3)" in cert.identities()


def test_generator_search_field():
    cert = generator_search(LocIdeal.i_plus_x(ideal(Z5, 0)), 1)
    assert cert.generator == Poly.x(Z5) and cert.check()


def test_generator_search_idempotent():
    ring = R("Z2xZ3")
    e = ring((1, 0))
    cert = generator_search(LocIdeal.i_plus_x(ideal(ring, e)), 1)
    assert cert.generator == Poly.x(ring) + e and cert.check()
    # (X+e)(X+1-e) = X(X+1) using e^2 = e and e(1-e) = 0
    X = Poly.x(ring)
    assert (X + e) * (X + (ring.one - e)) == X * (X + 1)


def test_generator_search_z4_exhausts():
    miss = generator_search(LocIdeal.i_plus_x(ideal(Z4, 2)), 3)
    assert isinstance(miss, SearchMiss) and str(miss) == "NotFoundUpTo(3)"
    assert isinstance(miss, NotFoundUpTo) and miss.bound == 3
    # every candidate with f(0) in {0, 2} is refuted by an exact certificate
    # degree k: two constant terms, three nonzero leading coefficients, 4^(k-1) middles
    survivors = 2 + 2 * 3 + 2 * 3 * 4 + 2 * 3 * 16
    assert miss.refuted == survivors
    assert survivors == 128 and miss.examined + miss.pruned == 4 + 3 * 4 + 3 * 16 + 3 * 64
    assert all(f.check() for f in miss.failures)


def test_generator_search_needs_i_plus_x():
    with pytest.raises(ValueError):
        generator_search(LocIdeal.extension(ideal(Z6, 2)), 1)


def test_square_free_identity():
    for n in (6, 10, 15, 30, 42, 105, 210):
        for p, _ in factorize(n):
            assert square_free_identity(n, p).check()
    assert str(square_free_identity(6, 2).witness.multiplier) == "2X+1"


def test_pir2_examples():
    v = check_pir2(Z6, 1)
    assert v.status == "verified" and v.agrees_with_theorem and v.recheck()
    gens = sorted(str(c.generator) for c in v.certificates if isinstance(c, Certificate))
    assert gens == ["X+2", "X+3"]
    v4 = check_pir2(Z4, 3)
    assert v4.status == "bounded-consistent(3)" and v4.agrees_with_theorem and v4.recheck()
    v30 = check_pir2(R("Z2xZ3xZ5"), 1)
    assert v30.status == "verified" and v30.recheck()


def test_pir2_square_free_sweep():
    for n in range(2, 211):
        if not square_free(n):
            continue
        v = check_pir2(R(f"Z{n}"), 1)
        assert v.status == "verified" and v.agrees_with_theorem and v.recheck(), n
        gens = {str(c.generator) for c in v.certificates if isinstance(c, Certificate)}
        assert gens == {f"X+{p}" if p < n else "X" for p, _ in factorize(n)}, n


def test_pir2_non_square_free_sweep():
    for n in range(2, 101):
        if square_free(n):
            continue
        v = check_pir2(R(f"Z{n}"), 2)
        assert v.status == "bounded-consistent(2)" and v.agrees_with_theorem and v.recheck(), n


@pytest.mark.parametrize("lit", SUITE)
def test_contraction_exhaustive(lit):
    ring = R(lit)
    if ring.cardinality > 64:
        pytest.skip("above the exhaustive size")
    for I in ideal_lattice(ring):
        v = check_contraction(I)
        assert v.status == "verified" and v.recheck(), I


def test_contraction_examples():
    v = check_contraction(ideal(Z4, 2))
    assert v.claims[0].detail == "contraction [0, 2]"
    assert check_contraction(ideal(Z6, 0)).status == "verified"
    assert check_contraction(ideal(R("Z12"), 3)).status == "verified"


def test_generator_count_examples():
    assert check_generator_count(ideal(Z6, 2)).status == "verified"
    assert check_generator_count(ideal(Z4, 1)).status == "verified"
    ring = R("Z4xZ9")
    I = ideal(ring, (2, 0), (0, 3))
    assert I.generator_count == 1
    v = check_generator_count(I)
    assert v.status == "verified" and v.recheck()


@pytest.mark.parametrize("lit", SUITE)
def test_ideal_checkers_on_suite(lit):
    for I in ideal_lattice(R(lit)):
        for check in (check_generator_count, check_locally_principal):
            v = check(I)
            assert v.status == "verified" and v.agrees_with_theorem and v.recheck(), (check.__name__, I)


def test_locally_principal_examples():
    assert "invertible=False" in check_locally_principal(ideal(Z6, 2)).claims[1].detail
    assert "ann=(3)" in check_locally_principal(ideal(Z6, 2)).claims[1].detail
    assert "invertible=True" in check_locally_principal(ideal(Z4, 1)).claims[1].detail
    assert "invertible=False" in check_locally_principal(ideal(Z4, 2)).claims[1].detail


@pytest.mark.parametrize("lit", ["Z6", "Z5", "Z2xZ3"])
def test_gaussian_vnr(lit):
    v = check_gaussian_slice(R(lit), trials=40)
    assert v.status == "verified" and v.agrees_with_theorem


@pytest.mark.parametrize("lit", ["Z4", "Z9", "Z8"])
def test_gaussian_non_vnr(lit):
    v = check_gaussian_slice(R(lit), trials=40)
    assert v.status in ("refuted",) or v.status.startswith("bounded-consistent")
    if v.status == "refuted":
        assert v.certificates and v.recheck()
        assert v.claims[0].witnesses


def test_gaussian_deterministic():
    a = check_gaussian_slice(Z4, trials=10, seed=7).to_json()
    b = check_gaussian_slice(Z4, trials=10, seed=7).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_vnr_prufer_examples():
    assert all(r["vanishes"] for r in check_vnr_prufer_slice(R("Z30")).claims[0].witnesses)
    z4 = check_vnr_prufer_slice(Z4).claims[0].witnesses
    assert z4 == [{"factor": "Z4", "maximal_ideal": "(2)", "vanishes": False, "witness": {"m": 2, "image": 2}}]
    rows = check_vnr_prufer_slice(R("Z2xZ9")).claims[0].witnesses
    assert [r["vanishes"] for r in rows] == [True, False]


@pytest.mark.parametrize("lit", SUITE + ["Z2", "Z7", "Z16", "Z2xZ2", "Z3xZ3", "Z2xZ4"])
def test_vnr_prufer_agrees_with_predicate(lit):
    ring = R(lit)
    v = check_vnr_prufer_slice(ring)
    assert v.agrees_with_theorem and v.status == "verified"
    all_vanish = all(r["vanishes"] for r in v.claims[0].witnesses)
    assert all_vanish == predicates(ring).is_vnr


def test_verdict_json_round_trip():
    v = check_pir2(Z4, 2).to_json()
    text = json.dumps(v, sort_keys=True)
    assert json.dumps(json.loads(text), sort_keys=True) == text
    assert Status.BOUNDED.value == "bounded-consistent"
