"""Exact computer algebra for the Anderson ring R[X]_A over finite rings Z_n1 x ... x Z_nk."""
from .kernels import BACKEND
from .localization import LocElem, canonical_embeddings, is_unit_loc, loc_eq, parse_fraction
from .poly import MultSetKind, NotFoundUpTo, Poly, Witness, in_multiplicative_set, membership_bounded
from .ring import (
    IdealOfR,
    RingElem,
    RingSpec,
    ideal_from_generators,
    ideal_lattice,
    local_factors,
    max_ideals,
    min_primes,
    predicates,
    solve_linear,
)
from .spectrum import LocIdeal, Member, NotMember, exact_rule_oracle_check, loc_membership, max_spectrum_A, quotient_by_top
from .theorem_lab import (
    TheoremVerdict,
    check_contraction,
    check_gaussian_slice,
    check_generator_count,
    check_locally_principal,
    check_pir2,
    check_vnr_prufer_slice,
    generator_search,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "IdealOfR", "LocElem", "LocIdeal", "Member", "MultSetKind", "NotFoundUpTo", "NotMember", "Poly",
    "RingElem", "RingSpec", "TheoremVerdict", "Witness", "canonical_embeddings", "check_contraction",
    "check_gaussian_slice", "check_generator_count", "check_locally_principal", "check_pir2",
    "check_vnr_prufer_slice", "exact_rule_oracle_check", "generator_search", "ideal_from_generators",
    "ideal_lattice", "in_multiplicative_set", "is_unit_loc", "local_factors", "loc_eq", "loc_membership",
    "max_ideals", "max_spectrum_A", "membership_bounded", "min_primes", "parse_fraction", "predicates",
    "quotient_by_top", "solve_linear",
]
