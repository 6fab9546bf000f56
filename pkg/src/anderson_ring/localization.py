"""Fractions f/g in R[X]_S for S one of A, its saturation, N, U, U-tilde.

Equality is plain cross-multiplication, ``a/b == c/d`` iff ``a*d == c*b``,
with no "exists s in S" factor. That is sound because every element of
the five sets is a non-zero-divisor of R[X]:

* A, its saturation, U-tilde: if ``s`` has a unit lowest coefficient and
  ``s*h == 0``, compare coefficients of ``s*h`` from the bottom up; each
  step forces the next coefficient of ``h`` to vanish, so ``h == 0``.
  U is the mirror image (top coefficient 1, induct from the top).
* N: by McCoy's theorem a zero divisor ``f`` is killed by a nonzero
  constant ``c``, so ``c`` annihilates every coefficient and hence
  ``c(f) = R``, forcing ``c == 0``.

``tests/test_localization.py`` pins this with exhaustive small cases.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .poly import MultSetKind, NotFoundUpTo, Poly, in_multiplicative_set, membership_bounded, parse_poly, strip_wrapping_parens
from .ring import RingMismatchError, RingSpec


class KindMismatchError(ValueError):
    pass


class LocElem:
    """The fraction ``num/den`` in R[X]_S, ``S`` given by ``kind``."""

    __slots__ = ("ring", "kind", "num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, kind: MultSetKind = MultSetKind.A):
        if den is None:
            den = Poly.const(num.ring, 1)
        if num.ring != den.ring:
            raise RingMismatchError()
        kind = MultSetKind(kind)
        if not in_multiplicative_set(den, kind):
            raise ValueError(f"denominator {den} is not in {kind.value}")
        self.ring = num.ring
        self.kind = kind
        self.num = num
        self.den = den

    @classmethod
    def parse(cls, literal: str, ring: RingSpec | None = None, kind: MultSetKind | None = None) -> LocElem:
        return parse_fraction(literal, ring, kind)

    def _check(self, other) -> LocElem:
        if isinstance(other, (int, Poly)):
            num = other if isinstance(other, Poly) else Poly.const(self.ring, other)
            return LocElem(num, kind=self.kind)
        if not isinstance(other, LocElem):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError()
        if other.kind != self.kind:
            raise KindMismatchError(f"kind mismatch: {self.kind.value} vs {other.kind.value}")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return LocElem(self.num * o.den + o.num * self.den, self.den * o.den, self.kind)

    __radd__ = __add__

    def __neg__(self):
        return LocElem(-self.num, self.den, self.kind)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return LocElem(self.num * o.num, self.den * o.den, self.kind)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return loc_eq(self, o)

    __hash__ = None  # no normal form

    def as_kind(self, kind: MultSetKind) -> LocElem:
        """Reinterpret the same fraction in another localization."""
        return LocElem(self.num, self.den, kind)

    def is_unit(self) -> bool:
        return is_unit_loc(self)

    def inverse(self) -> LocElem:
        return loc_inverse(self)

    def __str__(self):
        return f"({self.num})/({self.den})@{self.ring}:{self.kind.value}"

    __repr__ = __str__

    def to_json(self):
        return {"den": str(self.den), "kind": self.kind.value, "num": str(self.num)}


def loc_ops(x: LocElem, y: LocElem) -> dict[str, LocElem]:
    return {"add": x + y, "sub": x - y, "mul": x * y, "neg": -x}


def loc_eq(x: LocElem, y: LocElem) -> bool:
    if x.ring != y.ring:
        raise RingMismatchError()
    if x.kind != y.kind:
        raise KindMismatchError(f"kind mismatch: {x.kind.value} vs {y.kind.value}")
    return x.num * y.den == y.num * x.den


def is_unit_loc(x: LocElem) -> bool:
    """Units of R[X]_A are exactly the fractions whose numerator has a unit constant term."""
    if x.kind is not MultSetKind.A:
        raise ValueError("unit test implemented for kind A only")
    return x.num.constant_term.is_unit()


def loc_inverse(x: LocElem) -> LocElem:
    """``g/f`` rescaled by ``f(0)^-1`` so the new denominator lies in A."""
    if not is_unit_loc(x):
        raise ArithmeticError("not a unit")
    u = x.num.constant_term.inverse()
    return LocElem(x.den * u, x.num * u, MultSetKind.A)


def unit_inverse_by_search(x: LocElem, max_degree: int = 4):
    """Inverse of ``x`` found by searching ``num*q == h`` with ``h`` in A, or None.

    Independent of :func:`is_unit_loc`; used to cross-check it.
    """
    for d in range(max_degree + 1):
        w = membership_bounded(Poly.const(x.ring, 1), [x.num], d, multiplier=True)
        if not isinstance(w, NotFoundUpTo):
            q, h = w.cofactors[0], w.multiplier
            return LocElem(x.den * q, h, MultSetKind.A), w
    return None


def parse_fraction(literal: str, ring: RingSpec | None = None, kind: MultSetKind | None = None) -> LocElem:
    """Parse ``"(X+2)/(2X+1)@Z6:A"``; the ``@ring:kind`` suffix may be supplied as arguments."""
    text = literal.strip()
    if "@" in text:
        text, _, suffix = text.partition("@")
        ring_text, _, kind_text = suffix.partition(":")
        ring = RingSpec.parse(ring_text)
        if kind_text:
            kind = MultSetKind.parse(kind_text)
    if ring is None:
        raise ValueError(f"fraction {literal!r} needs a ring")
    kind = MultSetKind.A if kind is None else MultSetKind(kind)
    parts = _split_slash(strip_wrapping_parens(text))
    if len(parts) > 2:
        raise ValueError(f"malformed fraction {literal!r}")
    num = parse_poly(parts[0], ring)
    den = parse_poly(parts[1], ring) if len(parts) == 2 else Poly.const(ring, 1)
    return LocElem(num, den, kind)


def _split_slash(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def random_poly(ring: RingSpec, rng: random.Random, max_degree: int) -> Poly:
    deg = rng.randint(0, max_degree)
    return Poly(ring, [ring(tuple(rng.randrange(n) for n in ring.moduli)) for _ in range(deg + 1)])


def random_in_set(ring: RingSpec, rng: random.Random, max_degree: int, kind: MultSetKind) -> Poly:
    """Rejection-sample a polynomial of the given multiplicative set."""
    if kind is MultSetKind.A:
        p = random_poly(ring, rng, max_degree)
        return p - p.constant_term + 1
    while True:
        p = random_poly(ring, rng, max_degree)
        if in_multiplicative_set(p, kind):
            return p


def random_fraction(ring: RingSpec, rng: random.Random, num_degree: int, den_degree: int,
                    kind: MultSetKind = MultSetKind.A) -> LocElem:
    return LocElem(random_poly(ring, rng, num_degree), random_in_set(ring, rng, den_degree, kind), kind)


@dataclass
class EmbeddingReport:
    ring: RingSpec
    samples: int
    a_to_n_homomorphism: bool
    a_to_n_injective: bool
    a_inside_u_tilde: bool
    u_tilde_decomposition: bool
    u_reversal_into_a: bool
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "a_inside_u_tilde": self.a_inside_u_tilde,
            "a_to_n_homomorphism": self.a_to_n_homomorphism,
            "a_to_n_injective": self.a_to_n_injective,
            "failures": self.failures,
            "ok": self.ok,
            "ring": str(self.ring),
            "samples": self.samples,
            "u_reversal_into_a": self.u_reversal_into_a,
            "u_tilde_decomposition": self.u_tilde_decomposition,
        }


def reverse(p: Poly, length: int | None = None) -> Poly:
    """``X^m p(1/X)`` with ``m = deg p`` (or ``length-1``)."""
    m = len(p) if length is None else length
    return Poly.from_cols(p.ring, [list(reversed(c + (0,) * (m - len(c)))) for c in p.cols])


def decompose_u_tilde(x: LocElem) -> tuple[LocElem, int]:
    """Write ``f/g`` in R[X]_{U-tilde} as ``(f/g') * X^-k`` with ``f/g'`` in R[X]_A."""
    if x.kind is not MultSetKind.U_TILDE:
        raise KindMismatchError("expected a U_tilde fraction")
    k = x.den.low_degree()
    return LocElem(x.num, x.den.shift_down(k), MultSetKind.A), k


def canonical_embeddings(ring: RingSpec, samples: int = 200, seed: int = 0, max_degree: int = 2) -> EmbeddingReport:
    """Check the inclusions between the localizations on seeded samples.

    * R[X]_A -> R[X]_N (same fraction) preserves sums and products and is
      injective;
    * A is inside U-tilde, and every f/g of R[X]_{U-tilde} equals
      (f/g')*X^-k with f/g' in R[X]_A, so R[X]_{U-tilde} = (R[X]_A)[1/X];
    * reversal ``g -> X^deg(g) g(1/X)`` maps monic polynomials into A,
      the shadow of X -> 1/X identifying R[X]_U with R[X]_{U-tilde}.
    """
    ring.check_cap()
    rng = random.Random(seed)
    A, N, UT = MultSetKind.A, MultSetKind.N, MultSetKind.U_TILDE
    failures = []
    hom = inj = inside = decomp = rev = True
    for i in range(samples):
        x = random_fraction(ring, rng, max_degree, max_degree)
        y = random_fraction(ring, rng, max_degree, max_degree)
        if not ((x + y).as_kind(N) == x.as_kind(N) + y.as_kind(N) and (x * y).as_kind(N) == x.as_kind(N) * y.as_kind(N)):
            hom = False
            failures.append(f"homomorphism A->N failed on {x}, {y}")
        if (x.as_kind(N) == y.as_kind(N)) != (x == y):
            inj = False
            failures.append(f"injectivity A->N failed on {x}, {y}")
        if not in_multiplicative_set(x.den, UT):
            inside = False
            failures.append(f"{x.den} in A but not in U_tilde")
        k = rng.randint(0, 2)
        z = LocElem(random_poly(ring, rng, max_degree), random_in_set(ring, rng, max_degree, A) * Poly.x(ring, k), UT)
        base, k2 = decompose_u_tilde(z)
        # (f/g') * (1/X^k) back in U_tilde
        rebuilt = base.as_kind(UT) * LocElem(Poly.const(ring, 1), Poly.x(ring, k2), UT)
        if not (rebuilt == z and k2 == k):
            decomp = False
            failures.append(f"U_tilde decomposition failed on {z}")
        m = rng.randint(0, max_degree)
        monic = random_poly(ring, rng, max_degree).truncate(m) + Poly.x(ring, m)
        if not (in_multiplicative_set(monic, MultSetKind.U) and in_multiplicative_set(reverse(monic), A)):
            rev = False
            failures.append(f"reversal of monic {monic} not in A")
    return EmbeddingReport(ring, samples, hom, inj, inside, decomp, rev, failures)
