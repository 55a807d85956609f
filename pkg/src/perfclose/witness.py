"""Non-noetherianity witness chains and the tensor-with-perfect-closure classifier.

Over K = F_q(s)_per (or any field whose largest perfect subfield contains a
transcendental s), the linear generators alpha_m = t_m - s_m satisfy
alpha_m = alpha_{m+1}^p, and each alpha_{m+1} lies outside the localized
ideal generated by alpha_m: the chain of principal ideals ascends strictly
forever, so the union ideal is not finitely generated.  The classifier turns
symbolic algebra descriptors into verdicts with machine-checkable evidence
attached wherever the field is concrete.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidDescriptor, NotTranscendental
from .fields import FieldConfig, RationalField
from .poly import FactorBounds, UPoly, irreducible_fq, untwist
from .primetower import (
    StabilizationReport,
    field_descriptor,
    localized_membership,
    report_from_dict,
    report_to_dict,
    stabilization_index,
    verify_report,
)
from .tower import PerfectClosureField, TowerElement

TOWER_SYMBOL = "t"

RULE_FINITELY_GENERATED = "finitely-generated-base"
RULE_PERFECT_SUBFIELD_ALGEBRAIC = "perfect-subfield-algebraic"
RULE_PERFECT_SUBFIELD_TRANSCENDENTAL = "perfect-subfield-transcendental"
RULE_POWER_SERIES = "power-series-algebraic-coefficients"
RULE_LOCAL_ALGEBRAIC_RESIDUE = "local-algebraic-residue-field"


@dataclass(frozen=True)
class WitnessChain:
    """The chain alpha_0, ..., alpha_M with alpha_m = t_m - s_m.

    `element` is the transcendental s; alphas[m] is the degree-1 monic
    generator at tower level m over the perfect closure.
    """

    element: TowerElement
    alphas: tuple[UPoly, ...]

    @property
    def depth(self) -> int:
        return len(self.alphas) - 1


def build_witness_chain(
    field: PerfectClosureField,
    element: TowerElement,
    depth: int,
    require_transcendental: bool = True,
) -> WitnessChain:
    """Construct the chain to the given depth, checking alpha_m = alpha_{m+1}^p."""
    if depth < 1:
        raise ValueError("witness depth must be >= 1")
    if require_transcendental and element.is_constant:
        raise NotTranscendental(f"{field.format(element)} is algebraic over the base field")
    alphas: list[UPoly] = []
    s_m = element
    for m in range(depth + 1):
        alpha = UPoly(field, (-s_m, field.one()), TOWER_SYMBOL, m)
        if m > 0 and untwist(alpha) != alphas[m - 1]:
            raise AssertionError("chain relation alpha_m = alpha_{m+1}^p failed")
        alphas.append(alpha)
        s_m = s_m.pth_root(1)
    return WitnessChain(element, tuple(alphas))


def verify_chain_relation(chain: WitnessChain) -> bool:
    """Each alpha_{m+1}, raised to the p-th power, is alpha_m read one level down."""
    return all(
        untwist(chain.alphas[m + 1]) == chain.alphas[m] for m in range(chain.depth)
    )


def verify_strict_ascent(chain: WitnessChain, bounds: FactorBounds | None = None) -> tuple[bool, ...]:
    """Per-step verdicts: true when alpha_{m+1} stays outside the localized
    ideal generated by alpha_m one level up (where it reads alpha_{m+1}^p)."""
    p = chain.alphas[0].field.p
    verdicts = []
    for m in range(chain.depth):
        nxt = chain.alphas[m + 1]
        extended_generator = nxt ** p
        verdicts.append(not localized_membership(nxt, extended_generator, bounds))
    return tuple(verdicts)


# ---------------------------------------------------------------------------
# Algebra descriptors and the classifier
# ---------------------------------------------------------------------------

FAMILY_POLY_RING = "POLY_RING"
FAMILY_RATFUNC = "RATFUNC"
FAMILY_PERFECT_CLOSURE_RATFUNC = "PERFECT_CLOSURE_RATFUNC"
FAMILY_QUOT_POLY = "QUOT_POLY"
FAMILY_POWER_SERIES = "POWER_SERIES"
FAMILY_LOCAL_RESIDUE_ALGEBRAIC = "LOCAL_RESIDUE_ALGEBRAIC"

_FAMILIES = (
    FAMILY_POLY_RING,
    FAMILY_RATFUNC,
    FAMILY_PERFECT_CLOSURE_RATFUNC,
    FAMILY_QUOT_POLY,
    FAMILY_POWER_SERIES,
    FAMILY_LOCAL_RESIDUE_ALGEBRAIC,
)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Symbolic description of a k-algebra handed to the classifier.

    n counts polynomial or power-series indeterminates, r counts rational
    function variables, quotient is the monic irreducible modulus of a
    one-variable quotient algebra, residue_degree describes the coefficient
    field of a power-series ring as a finite extension of k.
    """

    family: str
    n: int = 0
    r: int = 0
    quotient: UPoly | None = None
    residue_degree: int = 1

    @classmethod
    def poly_ring(cls, n: int) -> AlgebraDescriptor:
        return cls(FAMILY_POLY_RING, n=n)

    @classmethod
    def ratfunc(cls, r: int) -> AlgebraDescriptor:
        return cls(FAMILY_RATFUNC, r=r)

    @classmethod
    def perfect_closure_ratfunc(cls, r: int) -> AlgebraDescriptor:
        return cls(FAMILY_PERFECT_CLOSURE_RATFUNC, r=r)

    @classmethod
    def quot_poly(cls, quotient: UPoly) -> AlgebraDescriptor:
        return cls(FAMILY_QUOT_POLY, quotient=quotient)

    @classmethod
    def power_series(cls, n: int, residue_degree: int = 1) -> AlgebraDescriptor:
        return cls(FAMILY_POWER_SERIES, n=n, residue_degree=residue_degree)

    @classmethod
    def local_algebraic_residue(cls) -> AlgebraDescriptor:
        return cls(FAMILY_LOCAL_RESIDUE_ALGEBRAIC)


@dataclass(frozen=True)
class Verdict:
    """Classifier output: noetherianity of the tensor with k(t)_per, the rule
    that decides it, and concrete evidence where computable."""

    descriptor: AlgebraDescriptor
    noetherian: bool
    rule: str
    depth: int
    witness: WitnessChain | None = None
    ascent: tuple[bool, ...] | None = None
    sample_report: StabilizationReport | None = None


def classify_algebra(
    descriptor: AlgebraDescriptor,
    config: FieldConfig,
    depth: int = 5,
    overhang: int = 3,
    bounds: FactorBounds | None = None,
) -> Verdict:
    """Decide whether the algebra tensored with k(t)_per stays noetherian.

    Negative verdicts over concrete fields carry a depth-checked witness
    chain; the concrete positive rational-function case attaches a sample
    stabilization report for the seed generator t + s.
    """
    family = descriptor.family
    if family not in _FAMILIES:
        raise InvalidDescriptor(f"unknown descriptor family {descriptor.family!r}")

    if family == FAMILY_POLY_RING:
        if descriptor.n < 0:
            raise InvalidDescriptor("indeterminate count must be >= 0")
        return Verdict(descriptor, True, RULE_FINITELY_GENERATED, depth)

    if family == FAMILY_QUOT_POLY:
        quotient = descriptor.quotient
        if quotient is None or quotient.degree < 1:
            raise InvalidDescriptor("quotient modulus must have degree >= 1")
        if any(not c.is_constant for c in quotient.coeffs):
            raise InvalidDescriptor("quotient modulus must have constant coefficients")
        if not irreducible_fq(quotient):
            raise InvalidDescriptor(f"quotient modulus {quotient} is reducible")
        return Verdict(descriptor, True, RULE_FINITELY_GENERATED, depth)

    if family == FAMILY_RATFUNC:
        if descriptor.r < 0:
            raise InvalidDescriptor("variable count must be >= 0")
        if descriptor.r > len(config.vars):
            raise InvalidDescriptor("not enough declared variables for this descriptor")
        sample = None
        if descriptor.r == 1:
            coeff_field = RationalField(FieldConfig(config.p, config.d, config.modulus, config.vars[:1]))
            seed = UPoly(
                coeff_field,
                (coeff_field.variable(config.vars[0]), coeff_field.one()),
                TOWER_SYMBOL,
                0,
            )
            sample = stabilization_index(seed, overhang, bounds)
        return Verdict(descriptor, True, RULE_PERFECT_SUBFIELD_ALGEBRAIC, depth, sample_report=sample)

    if family == FAMILY_PERFECT_CLOSURE_RATFUNC:
        if descriptor.r < 0:
            raise InvalidDescriptor("variable count must be >= 0")
        if descriptor.r == 0:
            return Verdict(descriptor, True, RULE_PERFECT_SUBFIELD_ALGEBRAIC, depth)
        if descriptor.r > len(config.vars):
            raise InvalidDescriptor("not enough declared variables for this descriptor")
        field = PerfectClosureField(FieldConfig(config.p, config.d, config.modulus, config.vars[:1]))
        chain = build_witness_chain(field, field.variable(config.vars[0]), depth)
        ascent = verify_strict_ascent(chain, bounds)
        if not all(ascent):
            raise AssertionError("witness chain failed to ascend strictly")
        return Verdict(
            descriptor, False, RULE_PERFECT_SUBFIELD_TRANSCENDENTAL, depth,
            witness=chain, ascent=ascent,
        )

    if family == FAMILY_POWER_SERIES:
        if descriptor.n < 0 or descriptor.residue_degree < 1:
            raise InvalidDescriptor("power series descriptor needs n >= 0 and residue degree >= 1")
        return Verdict(descriptor, True, RULE_POWER_SERIES, depth)

    return Verdict(descriptor, True, RULE_LOCAL_ALGEBRAIC_RESIDUE, depth)


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------

def chain_to_dict(chain: WitnessChain, ascent: tuple[bool, ...] | None = None) -> dict:
    field = chain.alphas[0].field
    if ascent is None:
        ascent = verify_strict_ascent(chain)
    return {
        "kind": "witness-chain",
        "p": field.config.p,
        "q": field.config.q,
        "field": field_descriptor(field),
        "element": field.format(chain.element),
        "depth": chain.depth,
        "alphas": [str(a) for a in chain.alphas],
        "ascent": list(ascent),
        "chain_consistent": verify_chain_relation(chain),
        "note": f"strict ascent verified to depth {chain.depth}; "
        "the p-th power relation extends it to every depth",
    }


def chain_from_dict(data: dict) -> tuple[WitnessChain, tuple[bool, ...]]:
    from .parser import parse_poly, parse_tower_element
    from .primetower import field_from_descriptor

    field = field_from_descriptor(data["field"])
    element = parse_tower_element(data["element"], field)
    alphas = tuple(
        parse_poly(text, field, symbol=TOWER_SYMBOL).lift_to_level(m)
        for m, text in enumerate(data["alphas"])
    )
    return WitnessChain(element, alphas), tuple(bool(b) for b in data["ascent"])


def descriptor_to_dict(descriptor: AlgebraDescriptor) -> dict:
    data: dict = {"family": descriptor.family}
    if descriptor.family in (FAMILY_POLY_RING, FAMILY_POWER_SERIES):
        data["n"] = descriptor.n
    if descriptor.family in (FAMILY_RATFUNC, FAMILY_PERFECT_CLOSURE_RATFUNC):
        data["r"] = descriptor.r
    if descriptor.family == FAMILY_QUOT_POLY:
        data["quotient"] = str(descriptor.quotient)
    if descriptor.family == FAMILY_POWER_SERIES:
        data["residue_degree"] = descriptor.residue_degree
    return data


def descriptor_from_dict(data: dict, config: FieldConfig) -> AlgebraDescriptor:
    family = data["family"]
    if family == FAMILY_QUOT_POLY:
        from .parser import parse_poly

        field = RationalField(FieldConfig(config.p, config.d, config.modulus, ()))
        quotient = parse_poly(data["quotient"], field, symbol="X")
        return AlgebraDescriptor.quot_poly(quotient)
    return AlgebraDescriptor(
        family,
        n=int(data.get("n", 0)),
        r=int(data.get("r", 0)),
        residue_degree=int(data.get("residue_degree", 1)),
    )


def verdict_to_dict(verdict: Verdict, config: FieldConfig) -> dict:
    data = {
        "kind": "classification-verdict",
        "descriptor": descriptor_to_dict(verdict.descriptor),
        "p": config.p,
        "q": config.q,
        "noetherian": verdict.noetherian,
        "rule": verdict.rule,
        "depth": verdict.depth,
        "witness": None,
        "sample_report": None,
    }
    if verdict.witness is not None:
        data["witness"] = chain_to_dict(verdict.witness, verdict.ascent)
    if verdict.sample_report is not None:
        data["sample_report"] = report_to_dict(verdict.sample_report)
    return data


def reverify_verdict(data: dict, config: FieldConfig, bounds: FactorBounds | None = None) -> bool:
    """Recompute the classification named in a serialized verdict and re-check
    every piece of attached evidence."""
    descriptor = descriptor_from_dict(data["descriptor"], config)
    fresh = classify_algebra(descriptor, config, depth=int(data["depth"]), bounds=bounds)
    if fresh.noetherian != bool(data["noetherian"]) or fresh.rule != data["rule"]:
        return False
    if data.get("witness"):
        chain, ascent = chain_from_dict(data["witness"])
        if not verify_chain_relation(chain):
            return False
        if verify_strict_ascent(chain, bounds) != ascent or not all(ascent):
            return False
    if data.get("sample_report"):
        report = report_from_dict(data["sample_report"])
        if not verify_report(report, bounds):
            return False
    return True
