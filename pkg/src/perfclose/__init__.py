"""Exact arithmetic in perfect-closure towers of function fields of
characteristic p, with prime-lifting certificates, a strictly-ascending
ideal witness for non-noetherianity, and a noetherianity classifier."""

from .errors import (
    AlgebraError,
    BoundsExceeded,
    InvalidDescriptor,
    MultivariateUnsupported,
    NotIrreducible,
    NotTranscendental,
    ParseError,
    PerfectCoefficients,
    UnknownVariable,
    WrongCoefficientField,
    ZeroDenominator,
)
from .fields import (
    FieldConfig,
    Fq,
    Polynomial,
    RationalField,
    RationalFunction,
    is_prime,
)
from .parser import parse_poly, parse_rational, parse_tower_element
from .poly import (
    FactorBounds,
    UPoly,
    certify_irreducible,
    factor_oracle,
    irreducible_fq,
    irreducible_transfer,
    poly_gcd,
    untwist,
)
from .primetower import (
    LiftCase,
    StabilizationReport,
    TowerPrime,
    basis_coords,
    contract_prime,
    extended_membership,
    lift_prime,
    localized_membership,
    report_from_dict,
    report_to_dict,
    stabilization_index,
    tower_prime,
    verify_extended_tower,
    verify_report,
)
from .tower import PerfectClosureField, TowerElement
from .witness import (
    RULE_FINITELY_GENERATED,
    RULE_LOCAL_ALGEBRAIC_RESIDUE,
    RULE_PERFECT_SUBFIELD_ALGEBRAIC,
    RULE_PERFECT_SUBFIELD_TRANSCENDENTAL,
    RULE_POWER_SERIES,
    AlgebraDescriptor,
    Verdict,
    WitnessChain,
    build_witness_chain,
    chain_from_dict,
    chain_to_dict,
    classify_algebra,
    reverify_verdict,
    verdict_to_dict,
    verify_chain_relation,
    verify_strict_ascent,
)

__version__ = "0.1.0"
