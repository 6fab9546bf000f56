import itertools

import pytest
from hypothesis import given, strategies as st

from anderson_ring.ring import (
    IdealOfR,
    NotAUnitError,
    RingMismatchError,
    RingSpec,
    RingTooLargeError,
    annihilator,
    combination_in_ideal,
    factorize,
    ideal_from_generators,
    ideal_lattice,
    ideal_product,
    local_factors,
    max_ideals,
    min_primes,
    nilpotents,
    predicates,
    prime_ideals,
    ring_ops,
    solve_linear,
    vnr_witness,
)

from conftest import SMALL, SUITE

R = RingSpec.parse


def ints(I: IdealOfR) -> list:
    return sorted(x.to_json() for x in I.elements)


def square_free(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


# --- literals and arithmetic ---------------------------------------------------------------


@pytest.mark.parametrize("lit,moduli", [("Z6", (6,)), ("Z4xZ9", (4, 9)), ("z2xZ3xz5", (2, 3, 5)), (" Z7 ", (7,))])
def test_parse_literal(lit, moduli):
    assert R(lit).moduli == moduli


@pytest.mark.parametrize("lit", ["Q6", "Z", "Z6x", "6", "Z1", "Z0xZ3", ""])
def test_parse_rejects(lit):
    with pytest.raises(ValueError):
        R(lit)


def test_ring_ops_examples():
    Z6, P = R("Z6"), R("Z2xZ3")
    assert ring_ops(Z6, Z6(4), Z6(5))["add"] == 3
    assert P((1, 2)) * P((1, 2)) == P((1, 1))
    assert R("Z4")(2) * 2 == 0
    assert ring_ops(Z6, Z6(1), Z6(5))["neg"] == 5


def test_ring_mismatch():
    with pytest.raises(RingMismatchError, match="ring mismatch"):
        R("Z6")(1) + R("Z4")(1)


def test_units_and_inverse():
    assert R("Z6")(5).is_unit() and R("Z6")(5).inverse() == 5
    assert not R("Z4")(2).is_unit()
    assert R("Z2xZ3")((1, 2)).is_unit()
    with pytest.raises(NotAUnitError, match="not a unit"):
        R("Z4")(2).inverse()


@given(st.sampled_from(SMALL), st.data())
def test_ring_axioms(lit, data):
    ring = R(lit)
    elems = list(ring.elements())
    x, y, z = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x + (-x) == ring.zero and x * ring.one == x


@pytest.mark.parametrize("lit", SMALL)
def test_is_unit_iff_coprime(lit):
    ring = R(lit)
    for x in ring.elements():
        assert x.is_unit() == any((x * y) == ring.one for y in ring.elements())


# --- ideals -----------------------------------------------------------------------------------


def test_ideal_examples():
    Z6, Z4 = R("Z6"), R("Z4")
    assert ints(ideal_from_generators(Z6, [2])) == [0, 2, 4]
    assert ints(ideal_from_generators(Z4, [])) == [0]
    assert ints(ideal_from_generators(Z6, [2, 3])) == list(range(6))


@pytest.mark.parametrize("lit,count", [("Z4", 3), ("Z6", 4), ("Z2xZ2", 4), ("Z8", 4), ("Z12", 6), ("Z30", 8)])
def test_lattice_sizes(lit, count):
    # derived: ideals of Z_n correspond to divisors of n; products multiply
    assert len(ideal_lattice(R(lit))) == count


@pytest.mark.parametrize("lit", SMALL + ["Z12"])
def test_lattice_is_every_ideal(lit):
    # brute force: every subset closed under the ideal operations
    ring = R(lit)
    elems = list(ring.elements())
    if len(elems) > 12:
        pytest.skip("subset enumeration too large")
    closed = set()
    for k in range(len(elems) + 1):
        for sub in itertools.combinations(elems, k):
            s = set(sub)
            if ring.zero in s and all(a + b in s for a in s for b in s) and all(r * a in s for r in elems for a in s):
                closed.add(frozenset(s))
    assert {frozenset(I.elements) for I in ideal_lattice(ring)} == closed


@pytest.mark.parametrize("lit", SUITE)
def test_ideal_invariants(lit):
    ring = R(lit)
    for I in ideal_lattice(ring):
        s = set(I.elements)
        assert ring.zero in s
        assert all(g in s for g in I.generators)
        again = ideal_from_generators(ring, I.elements)
        assert again == I  # closure is idempotent
        assert ideal_from_generators(ring, I.minimal_generators) == I
        assert I.generator_count <= 1  # these rings are principal ideal rings


def test_lattice_cap():
    with pytest.raises(RingTooLargeError, match="ring too large"):
        ideal_lattice(R("Z5000"))
    with pytest.raises(RingTooLargeError):
        ideal_lattice(R("Z30"), cap=16)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("ANDERSON_CAP", "8")
    with pytest.raises(RingTooLargeError):
        ideal_lattice(R("Z9"))


def test_max_and_min_examples():
    assert sorted(ints(M) for M in max_ideals(R("Z6"))) == [[0, 2, 4], [0, 3]]
    assert [ints(M) for M in max_ideals(R("Z4"))] == [[0, 2]]
    assert [ints(P) for P in min_primes(R("Z4"))] == [[0, 2]]
    assert len(max_ideals(R("Z2xZ3"))) == 2


@pytest.mark.parametrize("lit", SUITE)
def test_primes_are_maximal(lit):
    ring = R(lit)
    assert set(prime_ideals(ring)) == set(max_ideals(ring)) == set(min_primes(ring))
    assert len(max_ideals(ring)) == len(local_factors(ring))


def test_predicate_examples():
    z4 = predicates(R("Z4"))
    assert (z4.is_vnr, z4.is_pir, z4.is_reduced, z4.is_local, z4.is_field) == (False, True, False, True, False)
    assert predicates(R("Z30")).is_vnr
    assert not predicates(R("Z12")).is_vnr
    assert predicates(R("Z7")).is_field
    assert not predicates(R("Z2xZ3")).is_field


def test_predicates_on_z_n():
    for n in range(2, 1001):
        p = predicates(R(f"Z{n}"))
        sf = square_free(n)
        assert p.is_vnr == sf and p.is_reduced == sf, n
        assert p.is_field == (factorize(n) == [(n, 1)]), n


@pytest.mark.parametrize("lit", SMALL + SUITE)
def test_vnr_by_exhaustion(lit):
    ring = R(lit)
    exhaustive = all(any(a * a * b == a for b in ring.elements()) for a in ring.elements())
    assert predicates(ring).is_vnr == exhaustive
    for a in ring.elements():
        w = vnr_witness(a)
        assert (w is not None) == any(a * a * b == a for b in ring.elements())
        if w is not None:
            assert a * a * w == a


def test_nilpotents():
    assert [x.to_json() for x in nilpotents(R("Z8"))] == [0, 2, 4, 6]
    assert [x.to_json() for x in nilpotents(R("Z6"))] == [0]


def test_annihilator_and_product():
    Z6 = R("Z6")
    assert ints(annihilator(ideal_from_generators(Z6, [2]))) == [0, 3]
    assert ints(ideal_product(ideal_from_generators(Z6, [2]), ideal_from_generators(Z6, [3]))) == [0]


# --- local factors ----------------------------------------------------------------------------


def test_local_factor_examples():
    assert [str(f) for f in local_factors(R("Z12"))] == ["Z4", "Z3"]
    assert [str(f) for f in local_factors(R("Z7"))] == ["Z7"]
    assert [str(f) for f in local_factors(R("Z2xZ9"))] == ["Z2", "Z9"]


@pytest.mark.parametrize("lit", SUITE)
def test_local_factor_invariants(lit):
    ring = R(lit)
    fs = local_factors(ring)
    assert ring.cardinality == __import__("math").prod(f.ring.cardinality for f in fs)
    images = {tuple(f.project(x) for f in fs) for x in ring.elements()}
    assert len(images) == ring.cardinality  # jointly injective
    for f in fs:
        xs = list(ring.elements())
        assert {f.project(x) for x in xs} == set(f.ring.elements())  # surjective
        for x, y in itertools.islice(itertools.product(xs, xs), 200):
            assert f.project(x * y) == f.project(x) * f.project(y)
            assert f.project(x + y) == f.project(x) + f.project(y)
        assert f.maximal_ideal() in max_ideals(ring)


# --- linear systems ---------------------------------------------------------------------------


def test_solve_linear_examples():
    Z6, Z4 = R("Z6"), R("Z4")
    x = solve_linear(Z6, [[2]], [4])
    assert x is not None and 2 * x[0] == 4
    assert solve_linear(Z4, [[2]], [1]) is None
    sol = solve_linear(Z6, [[1, 1], [2, 0]], [1, 0])
    # derived by exhaustion over Z_6^2: the solution set is {(0,1), (3,4)}
    brute = [(a, b) for a in range(6) for b in range(6) if (a + b) % 6 == 1 and 2 * a % 6 == 0]
    assert brute == [(0, 1), (3, 4)]
    assert tuple(v.to_json() for v in sol) in brute


def test_solve_linear_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        solve_linear(R("Z6"), [[1, 2], [1]], [0, 0])
    with pytest.raises(ValueError, match="dimension mismatch"):
        solve_linear(R("Z6"), [[1]], [0, 0])


@given(lit=st.sampled_from(["Z4", "Z6", "Z8", "Z9", "Z2xZ2", "Z2xZ3", "Z2xZ4"]), data=st.data())
def test_solve_linear_complete(lit, data):
    ring = R(lit)
    elems = list(ring.elements())
    m = data.draw(st.integers(1, 3))
    k = data.draw(st.integers(1, 3 if ring.cardinality > 6 else 4))
    A = [[data.draw(st.sampled_from(elems)) for _ in range(k)] for _ in range(m)]
    b = [data.draw(st.sampled_from(elems)) for _ in range(m)]

    def ok(x):
        return all(sum((a * v for a, v in zip(row, x)), ring.zero) == c for row, c in zip(A, b))

    sol = solve_linear(ring, A, b)
    exists = any(ok(x) for x in itertools.product(elems, repeat=k))
    assert (sol is not None) == exists
    if sol is not None:
        assert ok(sol)


def test_combination_in_ideal():
    Z6 = R("Z6")
    I = ideal_from_generators(Z6, [2])
    r = combination_in_ideal(Z6(4), I)
    assert r is not None and sum((c * g for c, g in zip(r, I.generators)), Z6.zero) == 4
    assert combination_in_ideal(Z6(3), I) is None
