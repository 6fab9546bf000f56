"""Dense univariate polynomials over Z_{n_1} x ... x Z_{n_k}.

A polynomial is stored per coordinate ring: ``cols[j]`` holds the
coefficients mod ``n_j`` (lowest degree first), all columns of the same
length, trimmed so the top stored coefficient is nonzero in some
coordinate. The empty length is the zero polynomial.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .ring import IdealOfR, RingElem, RingMismatchError, RingSpec, ideal_from_generators, solve_components

NEG_INF = float("-inf")


def _trim(cols):
    length = max((len(c) for c in cols), default=0)
    cols = [tuple(c) + (0,) * (length - len(c)) for c in cols]
    while length and not any(c[length - 1] for c in cols):
        length -= 1
    return tuple(c[:length] for c in cols)


class Poly:
    __slots__ = ("ring", "cols")

    def __init__(self, ring: RingSpec, coeffs: Sequence = ()):
        coeffs = [ring(c) for c in coeffs]
        self.ring = ring
        self.cols = _trim([[c.coords[j] for c in coeffs] for j in range(ring.rank)])

    @classmethod
    def from_cols(cls, ring: RingSpec, cols) -> Poly:
        p = object.__new__(cls)
        p.ring = ring
        p.cols = _trim([[v % n for v in col] for col, n in zip(cols, ring.moduli)])
        return p

    @classmethod
    def x(cls, ring: RingSpec, power: int = 1) -> Poly:
        return cls(ring, [0] * power + [1])

    @classmethod
    def const(cls, ring: RingSpec, c) -> Poly:
        return cls(ring, [c])

    @classmethod
    def parse(cls, literal: str, ring: RingSpec) -> Poly:
        return parse_poly(literal, ring)

    def __len__(self):
        return len(self.cols[0])

    @property
    def degree(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self) - 1 if len(self) else NEG_INF

    def is_zero(self) -> bool:
        return len(self) == 0

    def coeff(self, i: int) -> RingElem:
        if i < 0 or i >= len(self):
            return self.ring.zero
        return RingElem(self.ring, tuple(c[i] for c in self.cols))

    @property
    def coeffs(self) -> tuple[RingElem, ...]:
        return tuple(self.coeff(i) for i in range(len(self)))

    @property
    def constant_term(self) -> RingElem:
        return self.coeff(0)

    @property
    def leading_coeff(self) -> RingElem:
        return self.coeff(len(self) - 1)

    def low_degree(self) -> int | None:
        """Index of the lowest nonzero coefficient, None for zero."""
        for i in range(len(self)):
            if any(c[i] for c in self.cols):
                return i
        return None

    def _check(self, other) -> Poly:
        if isinstance(other, (int, RingElem)):
            return Poly.const(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError()
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        length = max(len(self), len(other))
        cols = []
        for a, b, n in zip(self.cols, other.cols, self.ring.moduli):
            a = a + (0,) * (length - len(a))
            b = b + (0,) * (length - len(b))
            cols.append([(x + y) % n for x, y in zip(a, b)])
        return Poly.from_cols(self.ring, cols)

    __radd__ = __add__

    def __neg__(self):
        return Poly.from_cols(self.ring, [[-v for v in c] for c in self.cols])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        cols = [kernels.poly_mul(list(a), list(b), n) for a, b, n in zip(self.cols, other.cols, self.ring.moduli)]
        return Poly.from_cols(self.ring, cols)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, RingElem)):
            other = Poly.const(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.cols == other.cols

    def __hash__(self):
        return hash((self.ring.moduli, self.cols))

    def __call__(self, x) -> RingElem:
        """Evaluate at a ring element (Horner per coordinate)."""
        x = self.ring(x)
        out = []
        for col, xi, n in zip(self.cols, x.coords, self.ring.moduli):
            acc = 0
            for c in reversed(col):
                acc = (acc * xi + c) % n
            out.append(acc)
        return self.ring(tuple(out))

    def truncate(self, order: int) -> Poly:
        """Reduce modulo X^order."""
        return Poly.from_cols(self.ring, [c[:order] for c in self.cols])

    def shift_down(self, k: int) -> Poly:
        """Divide by X^k; the dropped coefficients must be zero."""
        if any(v for c in self.cols for v in c[:k]):
            raise ValueError(f"{self} is not divisible by X^{k}")
        return Poly.from_cols(self.ring, [c[k:] for c in self.cols])

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading_coeff == self.ring.one

    def content(self) -> IdealOfR:
        return content(self)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self}@{self.ring})"

    def to_json(self):
        return str(self)


def poly_ops(p: Poly, q: Poly) -> dict[str, Poly]:
    return {"add": p + q, "sub": p - q, "mul": p * q}


def degree(p: Poly):
    return p.degree


def evaluate(p: Poly, x) -> RingElem:
    return p(x)


def content(p: Poly) -> IdealOfR:
    """Ideal of R generated by the coefficients of ``p``."""
    return ideal_from_generators(p.ring, p.coeffs)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    one = p.ring.one
    terms = []
    for i in reversed(range(len(p))):
        c = p.coeff(i)
        if c.is_zero():
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = "X" if i == 1 else f"X^{i}"
        terms.append(mono if c == one else f"{c}{mono}")
    return "+".join(terms)


_TERM = re.compile(
    r"\s*([+-]?)\s*(\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)|\d+)?\s*(\*?\s*[Xx](?:\s*\^\s*(\d+))?)?\s*"
)


def strip_wrapping_parens(text: str) -> str:
    """Remove parentheses enclosing the whole string, unless they hold a coordinate tuple."""
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(text) - 1:
                return text
        inner = text[1:-1]
        depth = 0
        for ch in inner:
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return text
        text = inner.strip()
    return text


def parse_poly(literal: str, ring: RingSpec) -> Poly:
    """Parse ``"2X^2+X+3"``; tuple coefficients like ``"(1,0)X+(0,1)"`` for product rings."""
    text = strip_wrapping_parens(literal)
    if not text:
        raise ValueError(f"malformed polynomial {literal!r}")
    pos = 0
    total = Poly(ring)
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, coef, mono, power = m.groups()
        if m.end() == pos or (coef is None and mono is None) or (not first and not sign):
            raise ValueError(f"malformed polynomial {literal!r}")
        if coef is None:
            c = ring.one
        elif coef.startswith("("):
            c = ring(tuple(int(v) for v in coef.strip("() ").split(",")))
        else:
            c = ring(int(coef))
        if sign == "-":
            c = -c
        k = 0 if mono is None else (int(power) if power else 1)
        total = total + Poly(ring, [0] * k + [c])
        pos = m.end()
        first = False
    return total


class MultSetKind(str, enum.Enum):
    A = "A"
    A_SATURATED = "A_saturated"
    N = "N"
    U = "U"
    U_TILDE = "U_tilde"

    @classmethod
    def parse(cls, text: str) -> MultSetKind:
        aliases = {"a": cls.A, "abar": cls.A_SATURATED, "a_saturated": cls.A_SATURATED, "n": cls.N,
                   "u": cls.U, "utilde": cls.U_TILDE, "u_tilde": cls.U_TILDE}
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown multiplicative set {text!r}") from None


def in_multiplicative_set(p: Poly, kind: MultSetKind) -> bool:
    """Membership in A, its saturation, N, U or U-tilde. Zero is in none of them."""
    if p.is_zero():
        return False
    one = p.ring.one
    if kind is MultSetKind.A:
        return p.constant_term == one
    if kind is MultSetKind.A_SATURATED:
        return p.constant_term.is_unit()
    if kind is MultSetKind.N:
        return one in p.content()
    if kind is MultSetKind.U:
        return p.is_monic()
    if kind is MultSetKind.U_TILDE:
        return p.coeff(p.low_degree()) == one
    raise ValueError(kind)


@dataclass(frozen=True)
class Witness:
    """Certificate ``target * multiplier == sum(gens[i] * cofactors[i])``.

    ``multiplier`` is None for plain membership in the ideal of R[X]; when
    set it has constant term 1, certifying membership after localizing at A.
    """

    target: Poly
    gens: tuple[Poly, ...]
    cofactors: tuple[Poly, ...]
    multiplier: Poly | None = None

    def lhs(self) -> Poly:
        return self.target if self.multiplier is None else self.target * self.multiplier

    def rhs(self) -> Poly:
        total = Poly(self.target.ring)
        for g, q in zip(self.gens, self.cofactors):
            total = total + g * q
        return total

    def check(self) -> bool:
        if len(self.gens) != len(self.cofactors):
            return False
        if self.multiplier is not None and not in_multiplicative_set(self.multiplier, MultSetKind.A):
            return False
        return self.lhs() == self.rhs()

    def identity(self) -> str:
        left = str(self.target) if self.multiplier is None else f"({self.target})*({self.multiplier})"
        right = "+".join(f"({g})*({q})" for g, q in zip(self.gens, self.cofactors)) or "0"
        return f"{left} = {right}"

    def to_json(self):
        out = {
            "gens": [str(g) for g in self.gens],
            "cofactors": [str(q) for q in self.cofactors],
            "identity": self.identity(),
            "target": str(self.target),
        }
        if self.multiplier is not None:
            out["multiplier"] = str(self.multiplier)
        return out


@dataclass(frozen=True)
class NotFoundUpTo:
    bound: int

    def __str__(self):
        return f"NotFoundUpTo({self.bound})"

    def to_json(self):
        return {"status": str(self)}


def _check_same_ring(polys):
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise RingMismatchError()


def _assemble(target: Poly, gens: Sequence[Poly], d: int, multiplier: bool, rows_limit: int | None = None):
    """Per-coordinate linear systems for ``target*h == sum(g_i q_i)``.

    Unknowns: h_1..h_d (h_0 = 1) when ``multiplier``, then the d+1
    coefficients of each q_i. Moving the h_0 term across gives
    ``sum g_i q_i - sum_{l>=1} target h_l X^l == target``.
    """
    ring = target.ring
    nh = d if multiplier else 0
    ncols = nh + len(gens) * (d + 1)
    top = max([len(target) - 1 + nh] + [len(g) - 1 + d for g in gens] + [0])
    nrows = top + 1 if rows_limit is None else rows_limit
    rows_by, rhs_by = [], []
    for j in range(ring.rank):
        t = target.cols[j]
        rows = []
        for e in range(nrows):
            row = [0] * ncols
            for l in range(1, nh + 1):
                if 0 <= e - l < len(t):
                    row[l - 1] = -t[e - l]
            for i, g in enumerate(gens):
                gc = g.cols[j]
                base = nh + i * (d + 1)
                for l in range(d + 1):
                    if 0 <= e - l < len(gc):
                        row[base + l] = gc[e - l]
            rows.append(row)
        rows_by.append(rows)
        rhs_by.append([t[e] if e < len(t) else 0 for e in range(nrows)])
    return rows_by, rhs_by, ncols, nh


def membership_bounded(target: Poly, gens: Sequence[Poly], d: int, *, multiplier: bool = False):
    """Decide ``target in (gens)`` with cofactors of degree <= d.

    With ``multiplier=True`` the search is for ``target*h`` with ``h`` in A
    (constant term 1) of degree <= d, i.e. membership in the ideal of
    R[X]_A generated by ``gens``. Returns a checkable :class:`Witness`, or
    :class:`NotFoundUpTo` -- which is not a proof of non-membership.
    """
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    gens = tuple(gens)
    _check_same_ring((target,) + gens)
    ring = target.ring
    rows, rhs, ncols, nh = _assemble(target, gens, d, multiplier)
    sol = solve_components(ring.moduli, rows, rhs, ncols)
    if sol is None:
        return NotFoundUpTo(d)
    qs = tuple(
        Poly.from_cols(ring, [sol[j][nh + i * (d + 1):nh + (i + 1) * (d + 1)] for j in range(ring.rank)])
        for i in range(len(gens))
    )
    h = Poly.from_cols(ring, [[1] + sol[j][:nh] for j in range(ring.rank)]) if multiplier else None
    w = Witness(target, gens, qs, h)
    assert w.check(), "solver returned a non-solution"
    return w


def membership_mod_x_power(target: Poly, gens: Sequence[Poly], order: int) -> tuple[Poly, ...] | None:
    """Cofactors with ``target == sum(g_i q_i) (mod X^order)``, or None.

    Exact for the truncated ring R[X]/(X^order): cofactors of degree
    < order are without loss of generality.
    """
    gens = tuple(gens)
    _check_same_ring((target,) + gens)
    ring = target.ring
    d = max(order - 1, 0)
    rows, rhs, ncols, _ = _assemble(target, gens, d, False, rows_limit=order)
    sol = solve_components(ring.moduli, rows, rhs, ncols)
    if sol is None:
        return None
    return tuple(
        Poly.from_cols(ring, [sol[j][i * (d + 1):(i + 1) * (d + 1)] for j in range(ring.rank)])
        for i in range(len(gens))
    )


@dataclass(frozen=True)
class TruncationObstruction:
    """Proof that ``target`` is not in the ideal of R[X]_A generated by ``gens``.

    If ``target*h == sum(g_i q_i)`` with h(0) = 1, then h is invertible
    modulo X^order, so ``target`` would already lie in ``(gens)`` modulo
    X^order. That truncated question is a finite linear system over R.
    """

    target: Poly
    gens: tuple[Poly, ...]
    order: int

    def check(self) -> bool:
        return membership_mod_x_power(self.target, self.gens, self.order) is None

    def to_json(self):
        return {
            "gens": [str(g) for g in self.gens],
            "order": self.order,
            "target": str(self.target),
            "claim": f"{self.target} not in ({', '.join(map(str, self.gens))}) mod X^{self.order}",
        }


def find_truncation_obstruction(target: Poly, gens: Sequence[Poly], max_order: int) -> TruncationObstruction | None:
    gens = tuple(gens)
    for order in range(1, max_order + 1):
        if membership_mod_x_power(target, gens, order) is None:
            return TruncationObstruction(target, gens, order)
    return None


def saturation_zero_divisor(ring: RingSpec, sdeg: int, hdeg: int) -> tuple[Poly, Poly] | None:
    """Exhaustive search for s (unit constant term) and h != 0 with s*h == 0.

    A hit in one coordinate lifts to the product ring by padding s with 1
    and h with 0 elsewhere, so scanning coordinates separately is complete.
    """
    for j, n in enumerate(ring.moduli):
        hit = kernels.regular_scan(n, sdeg, hdeg)
        if hit is not None:
            s_c, h_c = hit
            s_cols = [list(s_c) if k == j else [1] for k in range(ring.rank)]
            h_cols = [list(h_c) if k == j else [] for k in range(ring.rank)]
            return Poly.from_cols(ring, s_cols), Poly.from_cols(ring, h_cols)
    return None
