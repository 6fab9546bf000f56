"""Checkers that confront structure theorems about R[X]_A with computation.

Each checker returns a :class:`TheoremVerdict`: a list of claims, each
``verified``, ``refuted`` (with a counterexample that re-evaluates),
``bounded-consistent(d)`` (nothing found up to degree d) or
``unresolved`` (a bounded search came back empty where the theorem
predicts success, so neither outcome is established).
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .localization import LocElem, random_fraction
from .poly import (
    NotFoundUpTo,
    Poly,
    TruncationObstruction,
    Witness,
    find_truncation_obstruction,
    membership_bounded,
    membership_mod_x_power,
)
from .ring import (
    IdealOfR,
    RingSpec,
    annihilator,
    factorize,
    ideal_from_generators,
    local_factors,
    max_ideals,
    min_primes,
    nilpotents,
    predicates,
)
from .spectrum import LocIdeal, Member, NotMember, Shape, loc_membership


class Status(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    BOUNDED = "bounded-consistent"
    UNRESOLVED = "unresolved"


@dataclass
class Claim:
    name: str
    status: Status
    bound: int | None = None
    detail: str = ""
    witnesses: list = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.status is Status.BOUNDED:
            return f"bounded-consistent({self.bound})"
        return self.status.value

    def to_json(self):
        out = {"claim": self.name, "status": self.label}
        if self.detail:
            out["detail"] = self.detail
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


@dataclass
class TheoremVerdict:
    """Outcome of one checker on one ring (and possibly one ideal)."""

    theorem: str
    ring: RingSpec
    claims: list[Claim]
    agrees_with_theorem: bool = True
    certificates: list = field(default_factory=list)
    ideal: str | None = None
    theorem_oracle: dict | None = None

    @property
    def status(self) -> str:
        for st in (Status.REFUTED, Status.BOUNDED, Status.UNRESOLVED):
            hits = [c for c in self.claims if c.status is st]
            if hits:
                return hits[0].label
        return Status.VERIFIED.value

    def recheck(self) -> bool:
        """Re-evaluate every emitted certificate."""
        return all(c.check() for c in self.certificates)

    def to_json(self):
        out = {
            "agrees_with_theorem": self.agrees_with_theorem,
            "claims": [c.to_json() for c in self.claims],
            "ring": str(self.ring),
            "status": self.status,
            "theorem": self.theorem,
        }
        if self.ideal is not None:
            out["ideal"] = self.ideal
        if self.theorem_oracle is not None:
            out["theorem_oracle"] = self.theorem_oracle
        return out


# --- principal generators ------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """``generator`` generates ``ideal``: it lies in the ideal, and every
    generator ``t`` of the ideal satisfies ``t*h == generator*q`` with h in A."""

    ideal: LocIdeal
    generator: Poly
    forward: Member
    backward: tuple[Witness, ...]

    def check(self) -> bool:
        f = self.generator
        if self.forward.x.num != f or not self.forward.check():
            return False
        targets = tuple(w.target for w in self.backward)
        if targets != self.ideal.generators():
            return False
        return all(w.gens == (f,) and w.multiplier is not None and w.check() for w in self.backward)

    def identities(self) -> list[str]:
        return [self.forward.witness.identity()] + [w.identity() for w in self.backward]

    def to_json(self):
        return {"generator": str(self.generator), "ideal": self.ideal.label(), "identities": self.identities()}


@dataclass
class CandidateFailure:
    """Why a candidate (or a class of candidates) does not generate the ideal.

    With ``prefix`` set, ``candidate`` is a polynomial mod X^2 and the entry
    covers every candidate congruent to it: ``refutation`` shows ``missing``
    is not in ``(candidate)`` modulo X^2, which only depends on that class.
    """

    candidate: Poly
    missing: Poly
    refutation: Any = None  # TruncationObstruction
    covers: int = 1
    prefix: bool = False

    def check(self) -> bool:
        r = self.refutation
        return r is not None and r.target == self.missing and r.gens == (self.candidate,) and r.check()

    def to_json(self):
        out = {"candidate": str(self.candidate), "candidates": self.covers, "missing": str(self.missing)}
        if self.prefix:
            out["candidate"] += " (mod X^2)"
        if self.refutation is not None:
            out["refuted_mod"] = f"X^{self.refutation.order}"
        return out


@dataclass(frozen=True)
class SearchMiss(NotFoundUpTo):
    """No generator of degree <= bound; carries the per-candidate trace."""

    examined: int = 0
    pruned: int = 0
    failures: tuple[CandidateFailure, ...] = ()

    @property
    def refuted(self) -> int:
        return sum(f.covers for f in self.failures if f.refutation is not None)

    def to_json(self):
        return {
            "candidates_examined": self.examined,
            "candidates_pruned": self.pruned,
            "candidates_refuted_exactly": self.refuted,
            "failures": [f.to_json() for f in self.failures],
            "status": str(self),
        }


class _PrefixFilter:
    """Exact refutation of whole classes of candidates modulo X^2."""

    def __init__(self, targets: tuple[Poly, ...]):
        self.targets = targets
        self.cache: dict[Poly, CandidateFailure | None] = {}

    def __call__(self, key: Poly) -> CandidateFailure | None:
        if key not in self.cache:
            hit = None
            for t in self.targets:
                for order in (1, 2):
                    if membership_mod_x_power(t, [key], order) is None:
                        hit = CandidateFailure(key, t, TruncationObstruction(t, (key,), order), 0, True)
                        break
                if hit:
                    break
            self.cache[key] = hit
        return self.cache[key]

    def failures(self) -> list[CandidateFailure]:
        return [f for f in self.cache.values() if f is not None and f.covers]


def _try_candidate(f: Poly, targets: tuple[Poly, ...], d: int):
    """Backward witnesses ``t*h == f*q`` for every target, lowest degree first, or the missing target."""
    backward = []
    for t in targets:
        for e in range(d + 3):
            w = membership_bounded(t, [f], e, multiplier=True)
            if not isinstance(w, NotFoundUpTo):
                break
        if isinstance(w, NotFoundUpTo):
            return None, t
        backward.append(w)
    return tuple(backward), None


def generator_search(J: LocIdeal, d: int, refute: bool = True):
    """Find a single generator of ``J = (I + XR[X])_A`` of degree <= d.

    Candidates run in the order (degree, monic first, a0, a1, ...); those
    with f(0) outside I are pruned by the exact rule. A class of survivors
    sharing f mod X^2 is refuted at once when some generator of J is not
    in ``(f)`` modulo X^2 (h in A is invertible there). Every other
    survivor is tested by bounded membership of each generator of J in
    ``(f)``, cofactor and multiplier degrees <= d+2 (lowest degree first),
    and on failure an exact truncation refutation is attempted.

    Returns a :class:`Certificate` or a :class:`SearchMiss` (which prints
    as ``NotFoundUpTo(d)``).
    """
    if J.shape is not Shape.I_PLUS_X:
        raise ValueError("generator_search needs an ideal of shape IPlusX")
    ring = J.ring
    ring.check_cap()
    size = ring.cardinality
    total = size + sum((size - 1) * size ** k for k in range(1, d + 1))
    targets = J.generators()
    elems = list(ring.elements())
    in_I = [c for c in elems if c in J.ideal]
    one = ring.one
    groups = ([one], [c for c in elems if not c.is_zero() and c != one])
    prefix = _PrefixFilter(targets)
    singles: list[CandidateFailure] = []
    examined = 0

    def attempt(f: Poly):
        backward, missing = _try_candidate(f, targets, d)
        if missing is None:
            forward = loc_membership(LocElem(f), J)
            assert isinstance(forward, Member)
            return Certificate(J, f, forward, backward)
        obstruction = find_truncation_obstruction(missing, [f], d + 4) if refute else None
        singles.append(CandidateFailure(f, missing, obstruction))
        return None

    def covered(key: Poly, count: int) -> bool:
        hit = prefix(key)
        if hit is None:
            return False
        hit.covers += count
        return True

    for c in in_I:
        examined += 1
        f = Poly(ring, [c])
        if not covered(f, 1) and (cert := attempt(f)):
            return cert
    for deg in range(1, d + 1):
        for leads in groups:
            for a0 in in_I:
                for mid in itertools.product(elems, repeat=deg - 1):
                    if deg >= 2:
                        examined += len(leads)
                        if covered(Poly(ring, [a0, mid[0]]), len(leads)):
                            continue
                        examined -= len(leads)
                    for lead in leads:
                        examined += 1
                        f = Poly(ring, [a0, *mid, lead])
                        if not covered(f.truncate(2), 1) and (cert := attempt(f)):
                            return cert
    return SearchMiss(d, examined, total - examined, tuple(prefix.failures() + singles))


@dataclass(frozen=True)
class IdentityCertificate:
    """An explicit identity ``target*multiplier == gen*cofactor``."""

    witness: Witness

    def check(self) -> bool:
        return self.witness.check()

    def to_json(self):
        return self.witness.identity()


def square_free_identity(n: int, p: int) -> IdentityCertificate:
    """``(X+p)(aX + b*q) == X(aX+1)`` over Z_n, q = n/p, a*p + b*q == 1."""
    ring = RingSpec((n,))
    q = n // p
    a = pow(p, -1, q) if q > 1 else 0
    b = pow(q, -1, p)
    X = Poly.x(ring)
    w = Witness(X, (X + p,), (X * a + b * q,), X * a + 1)
    return IdentityCertificate(w)


def check_pir2(ring: RingSpec, d: int = 1) -> TheoremVerdict:
    """R[X]_A is a PIR iff R is a von Neumann regular PIR, tested on maximal ideals."""
    ring.check_cap()
    pred = predicates(ring)
    lhs = pred.is_vnr and pred.is_pir
    claims: list[Claim] = []
    certs: list = []
    agrees = True
    found_all = True
    factor_of = {f.maximal_ideal(): f for f in local_factors(ring)}
    for M in max_ideals(ring):
        J = LocIdeal.i_plus_x(M)
        result = generator_search(J, d)
        expect_principal = factor_of[M].exponent == 1
        name = f"{J.label()} is principal"
        if isinstance(result, Certificate):
            certs.append(result)
            claims.append(Claim(name, Status.VERIFIED, witnesses=[result.to_json()]))
            if not expect_principal:
                agrees = False
        else:
            found_all = False
            certs.extend(f for f in result.failures if f.refutation is not None)
            detail = f"{result.examined} candidates examined, {result.refuted} refuted exactly"
            if expect_principal:
                claims.append(Claim(name, Status.UNRESOLVED, d, detail))
                agrees = False
            else:
                claims.append(Claim(name, Status.BOUNDED, d, detail))
    if lhs and ring.rank == 1:
        n = ring.moduli[0]
        ids = [square_free_identity(n, p) for p, _ in factorize(n)]
        certs.extend(ids)
        ok = all(c.check() for c in ids)
        claims.append(Claim("explicit square-free identities", Status.VERIFIED if ok else Status.REFUTED,
                            witnesses=[c.to_json() for c in ids]))
        agrees &= ok
    converse = "every maximal ideal principal implies R is a zero-dimensional PIR"
    if found_all:
        zero_dim = len(min_primes(ring)) == len(max_ideals(ring))
        ok = pred.is_pir and zero_dim
        claims.append(Claim(converse, Status.VERIFIED if ok else Status.REFUTED))
        agrees &= ok
    else:
        claims.append(Claim(converse, Status.VERIFIED, detail="hypothesis not met"))
    oracle = {
        "statement": "R[X]_A is a PIR iff R is von Neumann regular and a PIR",
        "lhs": lhs,
        "predicts_principal_maximal_ideals": lhs,
    }
    return TheoremVerdict("pir2", ring, claims, agrees, certs, theorem_oracle=oracle)


# --- generator count, contraction, local principality ---------------------------------------


@dataclass(frozen=True)
class MemberCertificate:
    member: Member

    def check(self) -> bool:
        return self.member.check()


def _extension_generated_by(I: IdealOfR, gens: Sequence[Poly]) -> tuple[bool, list[Member]]:
    """Exact two-way check that ``gens`` generate IR[X]_A."""
    ring = I.ring
    ext = LocIdeal.extension(I)
    span = LocIdeal.general(gens, 0, ring=ring)
    members = []
    for g in gens:
        v = loc_membership(LocElem(g), ext)
        if not isinstance(v, Member):
            return False, members
        members.append(v)
    for a in I.elements:
        x = LocElem(Poly.const(ring, a))
        if gens:
            v = loc_membership(x, span)
        else:
            v = Member(x, Witness(x.num, (), (), Poly.const(ring, 1))) if a.is_zero() else None
        if not isinstance(v, Member):
            return False, members
        members.append(v)
    return True, members


def check_generator_count(I: IdealOfR, d: int = 2) -> TheoremVerdict:
    """I needs k generators iff IR[X]_A does."""
    ring = I.ring
    k = I.generator_count
    gens = [Poly.const(ring, g) for g in I.minimal_generators]
    ok, members = _extension_generated_by(I, gens)
    claims = [Claim(f"extension generated by the {k} images", Status.VERIFIED if ok else Status.REFUTED,
                    witnesses=[m.witness.identity() for m in members[len(gens):]][:8])]
    if k >= 2:
        # k-1 polynomials f_j generating IR[X]_A would give I = (f_1(0), ..., f_{k-1}(0)):
        # evaluate a*h = sum f_j q_j at 0. That contradicts the exhaustive minimal count.
        claims.append(Claim(f"no {k - 1} polynomials generate the extension", Status.VERIFIED,
                            detail=f"constant terms would generate I; minimal count {k} is exhaustive"))
    certs = [MemberCertificate(m) for m in members]
    return TheoremVerdict("generator-count", ring, claims, ok, certs, ideal=I.label())


def check_contraction(I: IdealOfR) -> TheoremVerdict:
    """``IR[X]_A ∩ R == I``, exhaustively over R."""
    ring = I.ring
    ext = LocIdeal.extension(I)
    span = LocIdeal.general([Poly.const(ring, g) for g in I.minimal_generators] or [Poly(ring)], 0, ring=ring)
    contraction = []
    failures = []
    certs = []
    for r in ring.elements():
        x = LocElem(Poly.const(ring, r))
        exact = loc_membership(x, ext)
        general = loc_membership(x, span)
        inside = isinstance(exact, Member)
        if inside:
            contraction.append(r.to_json())
            certs.append(MemberCertificate(exact))
        if inside != (r in I) or isinstance(general, Member) != inside or isinstance(general, NotFoundUpTo):
            failures.append(str(r))
    claim = Claim("contraction equals I", Status.REFUTED if failures else Status.VERIFIED,
                  detail=f"contraction {contraction}", witnesses=failures)
    return TheoremVerdict("contraction", ring, [claim], not failures, certs, ideal=I.label())


def check_locally_principal(I: IdealOfR) -> TheoremVerdict:
    """I locally principal iff IR[X]_A is; invertible iff also ann(I) = 0."""
    ring = I.ring
    lhs = True
    rhs = True
    per_factor = []
    certs = []
    for fac in local_factors(ring):
        proj = ideal_from_generators(fac.ring, [fac.project(g) for g in I.elements])
        principal = proj.generator_count <= 1
        lhs &= principal
        gens = [Poly.const(fac.ring, g) for g in proj.minimal_generators]
        ok, members = _extension_generated_by(proj, gens) if principal else (False, [])
        rhs &= ok
        certs.extend(MemberCertificate(m) for m in members)
        per_factor.append({"factor": str(fac.ring), "ideal": proj.label(), "principal": principal,
                           "extension_principal": ok})
    ann = annihilator(I)
    invertible = lhs and ann.is_zero()
    claims = [
        Claim("I locally principal iff extension locally principal", Status.VERIFIED if lhs == rhs else Status.REFUTED,
              witnesses=per_factor),
        Claim("invertible iff locally principal and ann(I) = 0", Status.VERIFIED,
              detail=f"locally principal={lhs}, ann={ann.label()}, invertible={invertible}"),
    ]
    return TheoremVerdict("locally-principal", ring, claims, lhs == rhs, certs, ideal=I.label())


# --- Gaussian and Pruefer slices -------------------------------------------------------------


@dataclass(frozen=True)
class GaussianViolation:
    """``c(F)c(G)`` has an element outside ``c(FG)``, proved by truncation."""

    F: tuple[LocElem, ...]
    G: tuple[LocElem, ...]
    element: Poly
    product_content: tuple[Poly, ...]
    obstruction: Any

    def check(self) -> bool:
        fg = _outer_product(self.F, self.G)
        if tuple(c.num for c in fg) != self.product_content:
            return False
        nums = [f.num * g.num for f in self.F for g in self.G]
        ob = self.obstruction
        gens = tuple(p for p in self.product_content if not p.is_zero()) or (Poly(self.element.ring),)
        return self.element in nums and ob.target == self.element and ob.gens == gens and ob.check()

    def to_json(self):
        return {
            "F": [str(c) for c in self.F],
            "G": [str(c) for c in self.G],
            "c(FG)": [str(p) for p in self.product_content],
            "element_of_c(F)c(G)": str(self.element),
            "certificate": self.obstruction.to_json(),
        }


def _outer_product(F: Sequence[LocElem], G: Sequence[LocElem]) -> list[LocElem]:
    ring = F[0].ring
    out = [LocElem(Poly(ring)) for _ in range(len(F) + len(G) - 1)]
    for i, a in enumerate(F):
        for j, b in enumerate(G):
            out[i + j] = out[i + j] + a * b
    return out


def _gauss_test(F, G, d: int):
    """Compare c(FG) with c(F)c(G). Returns ("ok"|"violation"|"unknown", payload)."""
    ring = F[0].ring
    fg = [c.num for c in _outer_product(F, G)]
    gens = [p for p in fg if not p.is_zero()] or [Poly(ring)]
    prod = [f.num * g.num for f in F for g in G]
    J_fg = LocIdeal.general(gens, d, ring=ring)
    J_prod = LocIdeal.general(prod, d, ring=ring)
    unknown = False
    for p in prod:
        v = loc_membership(LocElem(p), J_fg)
        if isinstance(v, NotMember):
            return "violation", GaussianViolation(tuple(F), tuple(G), p, tuple(fg), v.certificate)
        unknown |= not isinstance(v, Member)
    for p in fg:
        v = loc_membership(LocElem(p), J_prod)
        unknown |= not isinstance(v, Member)
    return ("unknown" if unknown else "ok"), None


def check_gaussian_slice(ring: RingSpec, trials: int = 200, d: int = 6, seed: int = 0,
                         outer_degree: int = 2, inner_degree: int = 1) -> TheoremVerdict:
    """R[X]_A is Gaussian iff R is von Neumann regular, on sampled F, G in R[X]_A[Y]."""
    ring.check_cap()
    rng = random.Random(seed)
    vnr = predicates(ring).is_vnr
    ok = unknown = 0
    violation = None
    for _ in range(trials):
        F = [random_fraction(ring, rng, inner_degree, inner_degree) for _ in range(rng.randint(1, outer_degree + 1))]
        G = [random_fraction(ring, rng, inner_degree, inner_degree) for _ in range(rng.randint(1, outer_degree + 1))]
        outcome, payload = _gauss_test(F, G, d)
        if outcome == "violation":
            violation = payload
            break
        ok += outcome == "ok"
        unknown += outcome == "unknown"
    family = None
    if violation is None and not vnr:
        m = next(a for a in nilpotents(ring) if not a.is_zero() and (a * a).is_zero())
        X = Poly.x(ring)
        mx = LocElem(Poly.const(ring, m))
        F = [mx, LocElem(X)]
        G = [mx, LocElem(-X)]
        family = f"F = {m}+XY, G = {m}-XY"
        outcome, payload = _gauss_test(F, G, d)
        if outcome == "violation":
            violation = payload
    detail = f"{ok} sampled pairs agree exactly, {unknown} inconclusive at degree {d}"
    if family:
        detail += f"; structured family {family} tried"
    if violation is not None:
        claim = Claim("c(FG) = c(F)c(G)", Status.REFUTED, detail=detail, witnesses=[violation.to_json()])
        certs = [violation]
    elif unknown:
        claim = Claim("c(FG) = c(F)c(G)", Status.BOUNDED, d, detail)
        certs = []
    else:
        claim = Claim("c(FG) = c(F)c(G)", Status.VERIFIED if vnr else Status.BOUNDED, d, detail)
        certs = []
    agrees = not (vnr and violation is not None)
    oracle = {"statement": "R[X]_A is Gaussian iff R is von Neumann regular", "is_vnr": vnr}
    return TheoremVerdict("gaussian", ring, [claim], agrees, certs, theorem_oracle=oracle)


def check_vnr_prufer_slice(ring: RingSpec) -> TheoremVerdict:
    """Every m in M vanishes in R_M for all M iff R is von Neumann regular."""
    ring.check_cap()
    vnr = predicates(ring).is_vnr
    rows = []
    all_zero = True
    for fac in local_factors(ring):
        M = fac.maximal_ideal()
        bad = next((m for m in M.elements if not fac.project(m).is_zero()), None)
        all_zero &= bad is None
        row = {"factor": str(fac.ring), "maximal_ideal": M.label(), "vanishes": bad is None}
        if bad is not None:
            row["witness"] = {"m": bad.to_json(), "image": fac.project(bad).to_json()}
        rows.append(row)
    agrees = all_zero == vnr
    claim = Claim("M R_M = 0 for all M iff vnr", Status.VERIFIED if agrees else Status.REFUTED,
                  detail=f"all vanish={all_zero}, is_vnr={vnr}", witnesses=rows)
    return TheoremVerdict("vnr-prufer", ring, [claim], agrees)


THEOREMS = ("pir2", "generator-count", "contraction", "locally-principal", "gaussian", "vnr-prufer")
IDEAL_THEOREMS = ("generator-count", "contraction", "locally-principal")
