"""Finite commutative rings Z_{n_1} x ... x Z_{n_k}.

Elements are coordinate tuples of residues. Ideals are stored with their
full element set, which makes equality, containment and maximality plain
set operations (rings here are small; see ``DEFAULT_CAP``).
"""
from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

DEFAULT_CAP = 4096


class RingMismatchError(ValueError):
    def __init__(self, msg: str = "ring mismatch"):
        super().__init__(msg)


class NotAUnitError(ArithmeticError):
    def __init__(self, msg: str = "not a unit"):
        super().__init__(msg)


class RingTooLargeError(ValueError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"ring too large: cardinality {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


def cardinality_cap(cap: int | None = None) -> int:
    """Resolve the cardinality cap: explicit argument, then ``ANDERSON_CAP``, then the default."""
    if cap is not None:
        return cap
    env = os.environ.get("ANDERSON_CAP")
    return int(env) if env else DEFAULT_CAP


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of a small positive integer as ``[(p, e), ...]``."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


_LITERAL = re.compile(r"^\s*z\s*(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class RingSpec:
    """The ring Z_{n_1} x ... x Z_{n_k}."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(n) for n in self.moduli)
        if not moduli:
            raise ValueError("a ring needs at least one modulus")
        if any(n < 2 for n in moduli):
            raise ValueError(f"every modulus must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def parse(cls, literal: str) -> RingSpec:
        """Parse literals like ``"Z6"``, ``"Z4xZ9"`` or ``"z2xz3xz5"``."""
        parts = literal.strip().lower().split("x")
        moduli = []
        for part in parts:
            m = _LITERAL.match(part)
            if m is None:
                raise ValueError(f"unknown ring literal {literal!r}")
            moduli.append(int(m.group(1)))
        return cls(tuple(moduli))

    def __str__(self):
        return "x".join(f"Z{n}" for n in self.moduli)

    @property
    def cardinality(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def check_cap(self, cap: int | None = None) -> None:
        cap = cardinality_cap(cap)
        if self.cardinality > cap:
            raise RingTooLargeError(self.cardinality, cap)

    def __call__(self, value) -> RingElem:
        """Coerce an int (broadcast to every coordinate), tuple or element."""
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingMismatchError()
            return value
        if isinstance(value, int):
            return RingElem(self, tuple(value % n for n in self.moduli))
        coords = tuple(value)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return RingElem(self, tuple(int(c) % n for c, n in zip(coords, self.moduli)))

    @property
    def zero(self) -> RingElem:
        return self(0)

    @property
    def one(self) -> RingElem:
        return self(1)

    def idempotents(self) -> list[RingElem]:
        """The coordinate idempotents e_i (1 in slot i, 0 elsewhere)."""
        return [self(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]

    def elements(self) -> Iterator[RingElem]:
        """All elements in lexicographic coordinate order."""
        for coords in itertools.product(*(range(n) for n in self.moduli)):
            yield RingElem(self, coords)

    def units(self) -> list[RingElem]:
        return [x for x in self.elements() if x.is_unit()]


@dataclass(frozen=True, order=True)
class RingElem:
    ring: RingSpec = field(compare=False)
    coords: tuple[int, ...]

    def _other(self, other) -> RingElem | None:
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatchError()
            return other
        if isinstance(other, int):
            return self.ring(other)
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash((self.ring.moduli, self.coords))

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElem(self.ring, tuple((a + b) % n for a, b, n in zip(self.coords, o.coords, self.ring.moduli)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElem(self.ring, tuple((a - b) % n for a, b, n in zip(self.coords, o.coords, self.ring.moduli)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElem(self.ring, tuple(a * b % n for a, b, n in zip(self.coords, o.coords, self.ring.moduli)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, tuple(-a % n for a, n in zip(self.coords, self.ring.moduli)))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RingElem(self.ring, tuple(pow(a, k, n) for a, n in zip(self.coords, self.ring.moduli)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_unit(self) -> bool:
        return all(math.gcd(a, n) == 1 for a, n in zip(self.coords, self.ring.moduli))

    def inverse(self) -> RingElem:
        if not self.is_unit():
            raise NotAUnitError()
        return RingElem(self.ring, tuple(pow(a, -1, n) for a, n in zip(self.coords, self.ring.moduli)))

    def to_json(self):
        return self.coords[0] if self.ring.rank == 1 else list(self.coords)

    def __str__(self):
        if self.ring.rank == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    def __repr__(self):
        return f"RingElem({self}@{self.ring})"


def ring_ops(ring: RingSpec, x: RingElem, y: RingElem) -> dict[str, RingElem]:
    """Sum, difference, product and negation of two elements, checked against ``ring``."""
    if x.ring != ring or y.ring != ring:
        raise RingMismatchError()
    return {"add": x + y, "sub": x - y, "mul": x * y, "neg": -x}


class IdealOfR:
    """An ideal of a finite ring, held as generators plus its closed element set."""

    def __init__(self, ring: RingSpec, generators: Sequence[RingElem], elements: Iterable[RingElem]):
        self.ring = ring
        self.generators = tuple(generators)
        self._set = frozenset(elements)
        self.elements = tuple(sorted(self._set, key=lambda x: x.coords))

    def __contains__(self, x) -> bool:
        return self.ring(x) in self._set

    def __le__(self, other: IdealOfR) -> bool:
        return self._set <= other._set

    def __lt__(self, other: IdealOfR) -> bool:
        return self._set < other._set

    def __eq__(self, other):
        if not isinstance(other, IdealOfR):
            return NotImplemented
        return self.ring == other.ring and self._set == other._set

    def __hash__(self):
        return hash((self.ring.moduli, self._set))

    def __len__(self):
        return len(self._set)

    def is_zero(self) -> bool:
        return len(self._set) == 1

    def is_proper(self) -> bool:
        return self.ring.one not in self._set

    @cached_property
    def minimal_generators(self) -> tuple[RingElem, ...]:
        """A generating set of least size, found by search over element subsets."""
        if self.is_zero():
            return ()
        nonzero = [x for x in self.elements if not x.is_zero()]
        for k in itertools.count(1):
            for combo in itertools.combinations(nonzero, k):
                if len(ideal_from_generators(self.ring, combo)) == len(self):
                    return combo

    @property
    def generator_count(self) -> int:
        return len(self.minimal_generators)

    def label(self) -> str:
        """Literal ``(g1,g2)`` naming the ideal by its minimal generators."""
        gens = self.minimal_generators or (self.ring.zero,)
        return "(" + ",".join(str(g) for g in gens) + ")"

    def __repr__(self):
        return f"IdealOfR{self.label()}@{self.ring}"

    def to_json(self):
        return {"generators": [g.to_json() for g in self.minimal_generators], "size": len(self)}


def ideal_from_generators(ring: RingSpec, gens: Iterable) -> IdealOfR:
    """Smallest ideal containing ``gens``, by worklist closure.

    Multiplying by a ring element is a sum of multiplications by the
    coordinate idempotents, so the ideal is the additive subgroup spanned by
    ``e_i * g``; the worklist closes {0} under adding those.
    """
    gens = [ring(g) for g in gens]
    moduli = ring.moduli
    steps = {(e * g).coords for e in ring.idempotents() for g in gens}
    zero = ring.zero.coords
    steps.discard(zero)
    seen = {zero}
    work = [zero]
    while work:
        x = work.pop()
        for s in steps:
            y = tuple((a + b) % n for a, b, n in zip(x, s, moduli))
            if y not in seen:
                seen.add(y)
                work.append(y)
    return IdealOfR(ring, gens, (RingElem(ring, c) for c in seen))


def ideal_sum(I: IdealOfR, J: IdealOfR) -> IdealOfR:
    return ideal_from_generators(I.ring, I.generators + J.generators)


def ideal_product(I: IdealOfR, J: IdealOfR) -> IdealOfR:
    return ideal_from_generators(I.ring, [a * b for a in I.generators for b in J.generators])


def annihilator(I: IdealOfR) -> IdealOfR:
    ring = I.ring
    return ideal_from_generators(ring, [r for r in ring.elements() if all((r * g).is_zero() for g in I.generators)])


def _additive_closure(n: int, steps: Iterable[int]) -> frozenset[int]:
    steps = {s % n for s in steps} - {0}
    seen = {0}
    work = [0]
    while work:
        x = work.pop()
        for s in steps:
            y = (x + s) % n
            if y not in seen:
                seen.add(y)
                work.append(y)
    return frozenset(seen)


@lru_cache(maxsize=1024)
def _coordinate_ideals(n: int) -> dict[frozenset[int], tuple[int, ...]]:
    """Ideals of Z_n as residue sets (with generators): principal ideals, closed under sums.

    In Z_n, ``r*a`` is a repeated sum of ``a``, so (a) is the additive
    closure of ``a``; (a) == (u*a) for units u, so each orbit is closed once.
    """
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    found: dict[frozenset[int], tuple[int, ...]] = {}
    done: set[int] = set()
    for a in range(n):
        if a in done:
            continue
        found.setdefault(_additive_closure(n, [a]), (a,) if a else ())
        done.update(u * a % n for u in units)
    frontier = list(found)
    tried: set[frozenset] = set()
    while frontier:
        new = []
        for I in frontier:
            for J in list(found):
                pair = frozenset((I, J))
                if I <= J or J <= I or pair in tried:
                    continue
                tried.add(pair)
                gens = found[I] + found[J]
                S = _additive_closure(n, gens)
                if S not in found:
                    found[S] = gens
                    new.append(S)
        frontier = new
    return found


def ideal_lattice(ring: RingSpec, cap: int | None = None) -> list[IdealOfR]:
    """All ideals of ``ring``, deduplicated, ordered by size then elements.

    An ideal of a product is the product of its images in the coordinate
    rings (multiply by the coordinate idempotents), so the lattice is the
    product of the coordinate lattices.
    """
    ring.check_cap(cap)
    return list(_lattice(ring))


@lru_cache(maxsize=128)
def _lattice(ring: RingSpec) -> tuple[IdealOfR, ...]:
    per_coord = [_coordinate_ideals(n) for n in ring.moduli]
    out = []
    for combo in itertools.product(*(list(c.items()) for c in per_coord)):
        gens = []
        for j, (_, g) in enumerate(combo):
            for v in g:
                coords = [0] * ring.rank
                coords[j] = v
                gens.append(RingElem(ring, tuple(coords)))
        elems = (RingElem(ring, c) for c in itertools.product(*(sorted(S) for S, _ in combo)))
        out.append(IdealOfR(ring, gens, elems))
    return tuple(sorted(out, key=lambda I: (len(I), [x.coords for x in I.elements])))


def _principal_reps(ring: RingSpec) -> list[RingElem]:
    """One generator for each principal ideal."""
    return [I.minimal_generators[0] if I.minimal_generators else ring.zero
            for I in _lattice(ring) if I.generator_count <= 1]


def _is_prime(P: IdealOfR, reps: Sequence[RingElem]) -> bool:
    if not P.is_proper():
        return False
    outside = [a for a in reps if a not in P]
    return all(a * b not in P for a in outside for b in outside)


def prime_ideals(ring: RingSpec, cap: int | None = None) -> list[IdealOfR]:
    """Proper ideals with multiplicatively closed complement.

    Testing ``ab in P`` on one generator per principal ideal suffices, since
    the condition only depends on the ideals (a) and (b).
    """
    lattice = ideal_lattice(ring, cap)
    reps = _principal_reps(ring)
    return [P for P in lattice if _is_prime(P, reps)]


def max_ideals(ring: RingSpec, cap: int | None = None) -> list[IdealOfR]:
    proper = [I for I in ideal_lattice(ring, cap) if I.is_proper()]
    return [I for I in proper if not any(I < J for J in proper)]


def min_primes(ring: RingSpec, cap: int | None = None) -> list[IdealOfR]:
    """Minimal primes; also checks that every prime is maximal (finite rings are zero-dimensional)."""
    primes = prime_ideals(ring, cap)
    maximal = set(max_ideals(ring, cap))
    if not set(primes) <= maximal:
        raise RuntimeError(f"{ring}: found a non-maximal prime ideal")
    return [P for P in primes if not any(Q < P for Q in primes)]


class RingPredicates:
    """Ring predicates, each computed on first access."""

    def __init__(self, ring: RingSpec, cap: int | None = None):
        ring.check_cap(cap)
        self.ring = ring
        self.cap = cap

    @cached_property
    def is_reduced(self) -> bool:
        return len(nilpotents(self.ring)) == 1

    @cached_property
    def is_vnr(self) -> bool:
        # every a against every b; a^2 b == a splits over the coordinates
        return all(kernels.vnr_scan(n) < 0 for n in self.ring.moduli)

    @cached_property
    def is_pir(self) -> bool:
        return all(I.generator_count <= 1 for I in ideal_lattice(self.ring, self.cap))

    @cached_property
    def _maxes(self) -> list[IdealOfR]:
        return max_ideals(self.ring, self.cap)

    @property
    def is_local(self) -> bool:
        return len(self._maxes) == 1

    @property
    def is_field(self) -> bool:
        return self.is_local and self._maxes[0].is_zero()

    def cross_check(self) -> bool:
        """vnr iff reduced and every prime is maximal."""
        primes = prime_ideals(self.ring, self.cap)
        return self.is_vnr == (self.is_reduced and set(primes) <= set(self._maxes))

    def to_json(self):
        if not self.cross_check():
            raise RuntimeError(f"{self.ring}: vnr characterization failed")
        return {
            "is_field": self.is_field,
            "is_local": self.is_local,
            "is_pir": self.is_pir,
            "is_reduced": self.is_reduced,
            "is_vnr": self.is_vnr,
        }


def _nilpotent_residues(n: int) -> list[int]:
    # x^k == 0 for some k iff x^(2^m) == 0 with 2^m >= n (nilpotency index <= log2 n)
    y = np.arange(n, dtype=np.int64 if n < 3_000_000_000 else object)
    for _ in range(n.bit_length()):
        y = y * y % n
    return [int(v) for v in np.flatnonzero(y == 0)]


def nilpotents(ring: RingSpec) -> list[RingElem]:
    """All nilpotent elements, in lexicographic order."""
    per = [_nilpotent_residues(n) for n in ring.moduli]
    return [RingElem(ring, c) for c in itertools.product(*per)]


def vnr_witness(a: RingElem) -> RingElem | None:
    """Some ``b`` with ``a*a*b == a``, found by a linear solve, or None."""
    sol = solve_linear(a.ring, [[a * a]], [a])
    return None if sol is None else sol[0]


def predicates(ring: RingSpec, cap: int | None = None) -> RingPredicates:
    return RingPredicates(ring, cap)


@dataclass(frozen=True)
class LocalFactor:
    """A local factor Z_{p^e} of the ring, with its projection."""

    ring: RingSpec
    index: int
    prime: int
    exponent: int
    source: RingSpec

    def project(self, x: RingElem) -> RingElem:
        if x.ring != self.source:
            raise RingMismatchError()
        return self.ring(x.coords[self.index])

    def maximal_ideal(self) -> IdealOfR:
        """The maximal ideal of the source ring that this factor localizes at."""
        n = self.source.moduli[self.index]
        gen = list(self.source.one.coords)
        gen[self.index] = self.prime % n
        return ideal_from_generators(self.source, [self.source(gen)])

    def __str__(self):
        return str(self.ring)


def local_factors(ring: RingSpec) -> list[LocalFactor]:
    """CRT decomposition into local rings Z_{p^e}, one per maximal ideal."""
    out = []
    for i, n in enumerate(ring.moduli):
        for p, e in factorize(n):
            out.append(LocalFactor(RingSpec((p ** e,)), i, p, e, ring))
    return out


def solve_components(moduli: Sequence[int], rows_by_comp, rhs_by_comp, ncols: int) -> list[list[int]] | None:
    """Solve one integer system per modulus; None if any component has no solution."""
    out = []
    for n, rows, rhs in zip(moduli, rows_by_comp, rhs_by_comp):
        x = kernels.solve_mod(rows, rhs, ncols, n)
        if x is None:
            return None
        out.append(x)
    return out


def solve_linear(ring: RingSpec, A: Sequence[Sequence], b: Sequence) -> list[RingElem] | None:
    """One solution of ``A x = b`` over ``ring``, or None when none exists.

    Exact: each coordinate ring Z_n is solved by unimodular diagonalization
    mod n, and the solutions are recombined coordinatewise.
    """
    m = len(A)
    if len(b) != m:
        raise ValueError("dimension mismatch")
    ncols = len(A[0]) if m else 0
    if any(len(row) != ncols for row in A):
        raise ValueError("dimension mismatch")
    A = [[ring(v) for v in row] for row in A]
    b = [ring(v) for v in b]
    rows = [[[v.coords[c] for v in row] for row in A] for c in range(ring.rank)]
    rhs = [[v.coords[c] for v in b] for c in range(ring.rank)]
    sol = solve_components(ring.moduli, rows, rhs, ncols)
    if sol is None:
        return None
    return [ring(tuple(sol[c][j] for c in range(ring.rank))) for j in range(ncols)]


def combination_in_ideal(x: RingElem, I: IdealOfR) -> list[RingElem] | None:
    """Coefficients ``r`` with ``x == sum(r_j * g_j)`` over I's generators, or None."""
    gens = I.generators or (I.ring.zero,)
    sol = solve_linear(I.ring, [list(gens)], [x])
    if sol is None:
        return None
    return sol if I.generators else []
