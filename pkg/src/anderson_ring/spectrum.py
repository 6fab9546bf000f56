"""Ideals of R[X]_A and the prime spectrum over finite (zero-dimensional) R.

Membership has two exact regimes and one bounded one:

* ``IR[X]_A``: ``f/g`` is in it iff every coefficient of ``f`` is in I.
  If ``f*h`` has coefficients in I for some h with h(0) = 1, then over
  R/I the product is zero and h is regular, so f is zero mod I.
* ``(I + XR[X])_A``: ``f/g`` is in it iff ``f(0)`` is in I, because
  ``(f*h)(0) == f(0)`` for h in A.
* an ideal generated by arbitrary polynomials: bounded cofactor search,
  with a truncation argument (see ``poly.TruncationObstruction``) as the
  only source of exact negative answers.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .localization import LocElem, random_fraction, random_poly
from .poly import (
    MultSetKind,
    NotFoundUpTo,
    Poly,
    TruncationObstruction,
    Witness,
    find_truncation_obstruction,
    membership_bounded,
)
from .ring import (
    IdealOfR,
    RingElem,
    RingSpec,
    ideal_lattice,
    local_factors,
    max_ideals,
    min_primes,
    solve_linear,
)


class Shape(str, enum.Enum):
    EXTENSION = "ExtensionOfR"
    I_PLUS_X = "IPlusX"
    GENERAL = "General"


@dataclass(frozen=True)
class LocIdeal:
    """An ideal of R[X]_A in one of three shapes."""

    ring: RingSpec
    shape: Shape
    ideal: IdealOfR | None = None
    gens: tuple[Poly, ...] = ()
    degree_bound: int = 4
    kind: MultSetKind = MultSetKind.A

    @classmethod
    def extension(cls, I: IdealOfR) -> LocIdeal:
        return cls(I.ring, Shape.EXTENSION, ideal=I)

    @classmethod
    def i_plus_x(cls, I: IdealOfR) -> LocIdeal:
        return cls(I.ring, Shape.I_PLUS_X, ideal=I)

    @classmethod
    def general(cls, gens: Sequence[Poly], degree_bound: int = 4, ring: RingSpec | None = None) -> LocIdeal:
        gens = tuple(gens)
        if ring is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit ring")
            ring = gens[0].ring
        return cls(ring, Shape.GENERAL, gens=gens, degree_bound=degree_bound)

    def generators(self) -> tuple[Poly, ...]:
        """Polynomial generators of the ideal (as an ideal of R[X]_A)."""
        if self.shape is Shape.GENERAL:
            return self.gens
        base = tuple(Poly.const(self.ring, g) for g in self.ideal.minimal_generators)
        if self.shape is Shape.I_PLUS_X:
            return base + (Poly.x(self.ring),)
        return base

    def is_proper(self) -> bool:
        return not isinstance(loc_membership(LocElem(Poly.const(self.ring, 1)), self), Member)

    def __contains__(self, x) -> bool:
        if isinstance(x, Poly):
            x = LocElem(x)
        return isinstance(loc_membership(x, self), Member)

    def label(self) -> str:
        if self.shape is Shape.EXTENSION:
            return self.ideal.label()
        if self.shape is Shape.I_PLUS_X:
            return self.ideal.label() + "+X"
        return "[" + "; ".join(str(g) for g in self.gens) + "]"

    def __str__(self):
        return f"{self.label()}@{self.ring}"

    def to_json(self):
        out = {
            "generators": [str(g) for g in self.generators()],
            "label": self.label(),
            "shape": self.shape.value,
        }
        if self.shape is Shape.GENERAL:
            out["degree_bound"] = self.degree_bound
        return out


@dataclass(frozen=True)
class Member:
    """``x`` is in the ideal; ``witness`` certifies ``num(x)*h == sum(gen_i*q_i)``."""

    x: LocElem
    witness: Witness

    def check(self) -> bool:
        """Re-evaluate: the polynomial identity holds and the fractions recombine to ``x``."""
        w = self.witness
        if not w.check() or w.target != self.x.num:
            return False
        h = w.multiplier if w.multiplier is not None else Poly.const(self.x.ring, 1)
        total = LocElem(Poly(self.x.ring))
        for g, q in zip(w.gens, w.cofactors):
            total = total + LocElem(g) * LocElem(q, self.x.den * h)
        return total == self.x

    def __str__(self):
        return "Member"

    def to_json(self):
        return {"status": "Member", "witness": self.witness.to_json()}


@dataclass(frozen=True)
class NotMember:
    x: LocElem
    reason: str
    certificate: TruncationObstruction | None = None

    def __str__(self):
        return "NotMember"

    def to_json(self):
        out = {"reason": self.reason, "status": "NotMember"}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _const_combination(x: RingElem, I: IdealOfR) -> list[Poly]:
    """Constant cofactors expressing ``x`` over the minimal generators of I."""
    gens = I.minimal_generators
    if not gens:
        assert x.is_zero()
        return []
    coeffs = solve_linear(I.ring, [list(gens)], [x])
    assert coeffs is not None
    return [Poly.const(x.ring, c) for c in coeffs]


def loc_membership(x: LocElem, J: LocIdeal, degree_bound: int | None = None):
    """Decide ``x in J``.

    Exact (``Member``/``NotMember``) for the extension and I+X shapes.
    For general ideals: ``Member`` with a witness, ``NotMember`` with a
    truncation certificate, or ``NotFoundUpTo(d)``.
    """
    if x.ring != J.ring:
        raise ValueError("ring mismatch")
    if x.kind is not MultSetKind.A or J.kind is not MultSetKind.A:
        raise ValueError("kind mismatch: membership is implemented for R[X]_A")
    ring = x.ring
    f = x.num
    one = Poly.const(ring, 1)
    if J.shape is Shape.EXTENSION:
        I = J.ideal
        for i, c in enumerate(f.coeffs):
            if c not in I:
                return NotMember(x, f"coefficient of X^{i} is {c}, not in {I.label()}")
        gens = J.generators()
        cofactors = [Poly(ring) for _ in gens]
        for i, c in enumerate(f.coeffs):
            for j, r in enumerate(_const_combination(c, I)):
                cofactors[j] = cofactors[j] + r * Poly.x(ring, i)
        return Member(x, Witness(f, gens, tuple(cofactors), one))
    if J.shape is Shape.I_PLUS_X:
        I = J.ideal
        c0 = f.constant_term
        if c0 not in I:
            return NotMember(x, f"constant term {c0} not in {I.label()}")
        cofactors = _const_combination(c0, I) + [(f - c0).shift_down(1)]
        return Member(x, Witness(f, J.generators(), tuple(cofactors), one))
    d = J.degree_bound if degree_bound is None else degree_bound
    w = membership_bounded(f, J.gens, d, multiplier=True)
    if isinstance(w, Witness):
        return Member(x, w)
    top = max([len(g) for g in J.gens] + [len(f)])
    obstruction = find_truncation_obstruction(f, J.gens, top + d + 1)
    if obstruction is not None:
        return NotMember(x, f"not in the ideal modulo X^{obstruction.order}", obstruction)
    return w


# --- oracle check of the two exact rules -------------------------------------------------


@dataclass
class OracleReport:
    ring: RingSpec
    trials: int
    brute_degree: int
    agreements: int
    disagreements: list = field(default_factory=list)

    def to_json(self):
        return {
            "agreements": self.agreements,
            "brute_degree": self.brute_degree,
            "disagreements": self.disagreements,
            "ring": str(self.ring),
            "trials": self.trials,
        }


def _polys_in_a(ring: RingSpec, degree: int):
    elems = list(ring.elements())
    for tail in itertools.product(elems, repeat=degree):
        yield Poly(ring, (ring.one,) + tail)


def exact_rule_oracle_check(ring: RingSpec, trials: int = 500, seed: int = 0, brute_degree: int = 3,
                            max_degree: int = 2, ideals: Sequence[IdealOfR] | None = None) -> OracleReport:
    """Compare both exact membership rules with a brute-force search over h in A.

    Extension shape: the rule says ``c(f) <= I``; the oracle looks for h in
    A with deg h <= ``brute_degree`` such that every coefficient of f*h
    lies in I. I+X shape: rule ``f(0) in I``; oracle looks for such h with
    ``(f*h)(0) in I``.
    """
    ring.check_cap()
    rng = random.Random(seed)
    lattice = list(ideals) if ideals is not None else ideal_lattice(ring)
    hs = list(_polys_in_a(ring, brute_degree))
    report = OracleReport(ring, trials, brute_degree, 0)
    for t in range(trials):
        I = rng.choice(lattice)
        x = random_fraction(ring, rng, max_degree, max_degree)
        f = x.num
        for J, brute in (
            (LocIdeal.extension(I), lambda fh: all(c in I for c in fh.coeffs)),
            (LocIdeal.i_plus_x(I), lambda fh: fh.constant_term in I),
        ):
            rule = isinstance(loc_membership(x, J), Member)
            oracle = any(brute(f * h) for h in hs)
            if rule == oracle:
                report.agreements += 1
            else:
                report.disagreements.append({"ideal": J.label(), "x": str(x), "rule": rule, "oracle": oracle})
    return report


# --- the spectrum ---------------------------------------------------------------------------


@dataclass
class SpectrumReport:
    ring: RingSpec
    extensions: list[LocIdeal]
    tops: list[LocIdeal]
    verified_chains: list[dict]
    proper: list[dict]
    maximality: list[dict]
    incomparable: list[dict]
    x_membership: list[dict]
    krull_dimension: int = 1

    @property
    def ok(self) -> bool:
        return (
            len(self.tops) == len(self.extensions)
            and all(p["proper"] for p in self.proper)
            and all(m["verified"] for m in self.maximality)
            and all(c["strict"] and c["contained"] for c in self.verified_chains)
            and all(i["verified"] for i in self.incomparable)
            and all(m["verified"] for m in self.x_membership)
        )

    def to_json(self):
        return {
            "chains": self.verified_chains,
            "extensions": [J.to_json() for J in self.extensions],
            "incomparable": self.incomparable,
            "krull_dimension": self.krull_dimension,
            "maximal_ideals": [J.to_json() for J in self.tops],
            "maximality": self.maximality,
            "minimal_primes": [J.to_json() for J in self.extensions],
            "num_maximal_ideals": len(self.tops),
            "ok": self.ok,
            "proper": self.proper,
            "ring": str(self.ring),
            "x_membership": self.x_membership,
        }


def unit_combination(x: LocElem, top: LocIdeal) -> dict:
    """Certificate that ``1`` lies in ``top + (x)`` for ``x`` outside ``top``.

    With ``x = f/g`` and ``f(0)`` outside M, pick ``m`` in M making
    ``u = f(0) + m`` a unit. Then ``1 == (g/u) * x + t`` where
    ``t = (m - (f - f(0))) / u`` has ``t(0) = m/u`` in M, so ``t`` is in top.
    """
    ring = x.ring
    M = top.ideal
    f, g = x.num, x.den
    c0 = f.constant_term
    m = next((m for m in M.elements if (c0 + m).is_unit()), None)
    if m is None:
        return {"x": str(x), "verified": False, "reason": "no m with f(0)+m a unit"}
    u_inv = (c0 + m).inverse()
    mult = g * u_inv
    t = LocElem((Poly.const(ring, m) - (f - c0)) * u_inv)
    combo = LocElem(mult) * x + t
    t_member = loc_membership(t, top)
    ok = combo == 1 and isinstance(t_member, Member) and t_member.check()
    return {
        "m": m.to_json(),
        "multiplier": str(mult),
        "t": str(t.num),
        "identity": f"1 = ({mult})*({f})/({g}) + ({t.num})",
        "verified": bool(ok),
        "x": str(x),
    }


def _outside_samples(top: LocIdeal, count: int, rng: random.Random) -> list[LocElem]:
    ring = top.ring
    M = top.ideal
    outside = [c for c in ring.elements() if c not in M]
    dens = [Poly.const(ring, 1), Poly.x(ring) + 1]
    pool = [(c0, c1, den) for c0 in outside for c1 in ring.elements() for den in dens]
    picks = pool if len(pool) <= count else rng.sample(pool, count)
    return [LocElem(Poly(ring, [c0, c1]), den) for c0, c1, den in picks]


def max_spectrum_A(ring: RingSpec, samples: int = 24, seed: int = 0) -> SpectrumReport:
    """Build and certify Max and the minimal primes of R[X]_A for a finite ring R."""
    ring.check_cap()
    rng = random.Random(seed)
    maxes = max_ideals(ring)
    mins = min_primes(ring)
    tops = [LocIdeal.i_plus_x(M) for M in maxes]
    exts = [LocIdeal.extension(P) for P in mins]
    one = LocElem(Poly.const(ring, 1))
    X = LocElem(Poly.x(ring))

    proper = []
    for J in tops + exts:
        verdict = loc_membership(one, J)
        proper.append({"ideal": J.label(), "proper": isinstance(verdict, NotMember), "reason": getattr(verdict, "reason", "")})

    maximality = []
    for T in tops:
        for x in _outside_samples(T, samples, rng):
            if isinstance(loc_membership(x, T), Member):
                maximality.append({"x": str(x), "verified": False, "reason": "sample lies in the ideal"})
                continue
            cert = unit_combination(x, T)
            cert["ideal"] = T.label()
            maximality.append(cert)

    chains = []
    for P, B in zip(mins, exts):
        for M, T in zip(maxes, tops):
            if not P <= M:
                continue
            contained = all(isinstance(loc_membership(LocElem(g), T), Member) for g in B.generators())
            sep_in_top = isinstance(loc_membership(X, T), Member)
            sep_out_bottom = isinstance(loc_membership(X, B), NotMember)
            chains.append({
                "bottom": B.label(),
                "contained": contained,
                "separating_witness": "X",
                "strict": sep_in_top and sep_out_bottom,
                "top": T.label(),
            })

    incomparable = []
    for layer in ((maxes, tops), (mins, exts)):
        ideals_r, ideals_a = layer
        for (I1, J1), (I2, J2) in itertools.permutations(zip(ideals_r, ideals_a), 2):
            w = next(c for c in I1.elements if c not in I2)
            wx = LocElem(Poly.const(ring, w))
            ok = isinstance(loc_membership(wx, J1), Member) and isinstance(loc_membership(wx, J2), NotMember)
            incomparable.append({"a": J1.label(), "b": J2.label(), "witness": w.to_json(), "verified": ok})

    x_membership = []
    for J in tops:
        x_membership.append({"ideal": J.label(), "expected": True, "verified": isinstance(loc_membership(X, J), Member)})
    for J in exts:
        x_membership.append({"ideal": J.label(), "expected": False, "verified": isinstance(loc_membership(X, J), NotMember)})

    return SpectrumReport(ring, exts, tops, chains, proper, maximality, incomparable, x_membership)


# --- residue fields --------------------------------------------------------------------------


@dataclass
class QuotientMap:
    """R[X]_A -> R/M, ``f/g -> f(0) * g(0)^-1`` read in the residue field Z_p."""

    ideal: LocIdeal
    field: RingSpec
    index: int

    def __call__(self, x: LocElem) -> RingElem:
        v = x.num.constant_term * x.den.constant_term.inverse()
        return self.field(v.coords[self.index])

    def verify(self, samples: int = 100, seed: int = 0, max_degree: int = 2) -> dict:
        ring = self.ideal.ring
        rng = random.Random(seed)
        laws = kernel = True
        one = LocElem(Poly.const(ring, 1))
        laws &= self(one) == self.field.one
        for _ in range(samples):
            x = random_fraction(ring, rng, max_degree, max_degree)
            y = random_fraction(ring, rng, max_degree, max_degree)
            laws &= self(x + y) == self(x) + self(y) and self(x * y) == self(x) * self(y)
            kernel &= (self(x).is_zero()) == isinstance(loc_membership(x, self.ideal), Member)
        hit = {self(LocElem(Poly.const(ring, c))) for c in ring.elements()}
        return {
            "field": str(self.field),
            "kernel_equals_ideal": bool(kernel),
            "ring_map": bool(laws),
            "surjective": len(hit) == self.field.cardinality,
        }


def quotient_by_top(J: LocIdeal) -> QuotientMap:
    """The residue field of a maximal ideal ``(M + XR[X])_A`` with its evaluation map."""
    if J.shape is not Shape.I_PLUS_X:
        raise ValueError("quotient_by_top needs an ideal of shape IPlusX")
    for factor in local_factors(J.ring):
        if factor.maximal_ideal() == J.ideal:
            return QuotientMap(J, RingSpec((factor.prime,)), factor.index)
    raise ValueError(f"{J.ideal.label()} is not a maximal ideal of {J.ring}")


def quotient_kernel_exhaustive(J: LocIdeal, degree: int = 2) -> bool:
    """Kernel of the residue map equals J on every fraction with num, den of degree <= ``degree``."""
    q = quotient_by_top(J)
    ring = J.ring
    elems = list(ring.elements())
    nums = [Poly(ring, c) for c in itertools.product(elems, repeat=degree + 1)]
    dens = [Poly(ring, (ring.one,) + c) for c in itertools.product(elems, repeat=degree)]
    for f in nums:
        for g in dens:
            x = LocElem(f, g)
            if q(x).is_zero() != isinstance(loc_membership(x, J), Member):
                return False
    return True


__all__ = [
    "LocIdeal", "Shape", "Member", "NotMember", "NotFoundUpTo", "loc_membership", "exact_rule_oracle_check",
    "OracleReport", "SpectrumReport", "max_spectrum_A", "unit_combination", "QuotientMap", "quotient_by_top",
    "quotient_kernel_exhaustive", "random_poly",
]
