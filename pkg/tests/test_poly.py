import itertools

import pytest
from hypothesis import given, strategies as st

from anderson_ring.poly import (
    MultSetKind,
    NotFoundUpTo,
    Poly,
    Witness,
    content,
    degree,
    evaluate,
    find_truncation_obstruction,
    in_multiplicative_set,
    membership_bounded,
    membership_mod_x_power,
    parse_poly,
    saturation_zero_divisor,
)
from anderson_ring.ring import RingMismatchError, RingSpec, ideal_from_generators, ideal_product

from conftest import SMALL

Z4, Z6 = RingSpec.parse("Z4"), RingSpec.parse("Z6")


def P(text, ring=Z6):
    return parse_poly(text, ring)


def polys(ring, max_degree=3):
    coeff = st.tuples(*(st.integers(0, n - 1) for n in ring.moduli))
    return st.lists(coeff, max_size=max_degree + 1).map(lambda cs: Poly(ring, [ring(c) for c in cs]))


def ring_and_polys(count, max_degree=3):
    return st.sampled_from(SMALL).map(RingSpec.parse).flatmap(
        lambda r: st.tuples(st.just(r), *(polys(r, max_degree) for _ in range(count))))


def test_square_free_product():
    assert P("X+2") * P("2X+3") == P("2X^2+X")


def test_eval_at_zero_is_constant_term():
    assert evaluate(P("2X^2+X"), Z6(0)) == Z6(0)
    assert evaluate(P("X^2+5"), Z6(2)) == Z6(3)


def test_nilpotent_square():
    assert (P("2X+2", Z4) ** 2).is_zero()


def test_zero_polynomial_canonical():
    z = Poly(Z6, [0, 0, 0])
    assert z.is_zero() and len(z) == 0 and z.constant_term == Z6(0)
    assert degree(z) == float("-inf")
    assert degree(P("3X^2+1")) == 2
    assert P("6X^3+X") == P("X")


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        P("X") + P("X", Z4)


def test_content_examples():
    assert content(P("2X+4")).elements == ideal_from_generators(Z6, [2]).elements
    assert len(content(P("3X+2"))) == 6
    assert len(content(Poly(Z6))) == 1


@pytest.mark.parametrize("text,kind,expected", [
    ("3X+1", MultSetKind.A, True),
    ("2X+5", MultSetKind.A_SATURATED, True),
    ("2X+5", MultSetKind.A, False),
    ("X^2+2X", MultSetKind.U_TILDE, False),
    ("X^2+2X", MultSetKind.U, True),
    ("3X+2", MultSetKind.N, True),
    ("2X+4", MultSetKind.N, False),
    ("0", MultSetKind.N, False),
    ("0", MultSetKind.A_SATURATED, False),
])
def test_multiplicative_set_examples(text, kind, expected):
    assert in_multiplicative_set(P(text), kind) is expected


def test_multiplicative_set_parse():
    assert MultSetKind.parse("Abar") is MultSetKind.A_SATURATED
    with pytest.raises(ValueError):
        MultSetKind.parse("B")


@given(ring_and_polys(1))
def test_multiplicative_set_containments(args):
    _, p = args
    member = {k: in_multiplicative_set(p, k) for k in MultSetKind}
    if member[MultSetKind.A]:
        assert member[MultSetKind.A_SATURATED] and member[MultSetKind.N] and member[MultSetKind.U_TILDE]
    if member[MultSetKind.U]:
        assert member[MultSetKind.N]
    if p.is_monic() and p.constant_term == p.ring.one:
        assert member[MultSetKind.A] and member[MultSetKind.U]


@given(ring_and_polys(2))
def test_content_of_product(args):
    _, p, q = args
    assert content(p * q) <= ideal_product(content(p), content(q))


@given(ring_and_polys(3, 2))
def test_ring_axioms(args):
    _, p, q, r = args
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == Poly(p.ring)


@given(ring_and_polys(1, 4))
def test_parse_round_trip(args):
    _, p = args
    assert parse_poly(str(p), p.ring) == p


def test_membership_examples():
    w = membership_bounded(P("X^2"), [P("X")], 1)
    assert isinstance(w, Witness) and w.check() and w.cofactors == (P("X"),)
    w = membership_bounded(P("2X^2+X"), [P("X+2")], 1)
    assert w.cofactors == (P("2X+3"),)
    for d in range(4):
        assert membership_bounded(P("1", Z4), [P("2X+2", Z4)], d) == NotFoundUpTo(d)
    with pytest.raises(ValueError):
        membership_bounded(P("1"), [P("X")], -1)


def test_membership_with_multiplier():
    # 1 is not a multiple of X+1 in R[X] but is after inverting A
    assert isinstance(membership_bounded(P("1"), [P("X+1")], 2), NotFoundUpTo)
    w = membership_bounded(P("1"), [P("X+1")], 1, multiplier=True)
    assert w.check() and w.multiplier.constant_term == Z6(1)


@given(ring_and_polys(3, 2), st.integers(0, 2), st.booleans())
def test_membership_sound(args, d, multiplier):
    _, t, g1, g2 = args
    w = membership_bounded(t, [g1, g2], d, multiplier=multiplier)
    if isinstance(w, Witness):
        assert w.check()
    else:
        assert w == NotFoundUpTo(d)


def test_membership_complete_against_brute_force():
    gens = [P("2X+2", Z4)]
    found = {membership_bounded(Poly(Z4, c), gens, 1) != NotFoundUpTo(1)
             for c in itertools.product(range(4), repeat=3)}
    multiples = {(g * Poly(Z4, q)) for g in gens for q in itertools.product(range(4), repeat=2)}
    for c in itertools.product(range(4), repeat=3):
        t = Poly(Z4, c)
        assert (membership_bounded(t, gens, 1) != NotFoundUpTo(1)) == (t in multiples)
    assert found == {True, False}


def test_truncation_obstruction():
    ob = find_truncation_obstruction(P("1", Z4), [P("2", Z4), P("X", Z4)], 3)
    assert ob is not None and ob.order == 1 and ob.check()
    assert membership_mod_x_power(P("X", Z4), [P("X+2", Z4)], 1) is not None
    assert find_truncation_obstruction(P("X"), [P("X+2")], 4) is None


@pytest.mark.parametrize("lit", SMALL)
def test_saturation_regular(lit):
    # s with unit constant term is never a zero divisor
    assert saturation_zero_divisor(RingSpec.parse(lit), 2, 2) is None
