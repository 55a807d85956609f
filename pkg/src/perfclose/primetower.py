"""Height-one primes along K[t] in K[t^(1/p)] in ...: lifting, contraction,
stabilization certificates, and extended-ideal membership.

A prime at tower level m is the principal ideal of K[t_m] cut out by a monic
irreducible generator, where t_m denotes the p^m-th root of t and K is either
a rational function field F_q(s, ...) or its perfect closure.  Lifting one
level is canonical: either every coefficient has a p-th root (then the
coefficient-wise roots generate the unique prime above, same degree) or the
generator is re-read at the deeper level (degree multiplied by p, irreducible
by the transfer criterion).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotIrreducible, PerfectCoefficients
from .poly import FactorBounds, UPoly, certify_irreducible, factor_oracle, untwist


class LiftCase(enum.Enum):
    ROOT_CASE = "root"      # generator has all coefficients in K^p
    EXTEND_CASE = "extend"  # lifted ideal is the extension of the one below


@dataclass(frozen=True)
class TowerPrime:
    """The prime of K[t_level] generated by the monic irreducible `gen`."""

    level: int
    gen: UPoly


def tower_prime(gen: UPoly, certify: bool = True, bounds: FactorBounds | None = None) -> TowerPrime:
    """Wrap a generator as a prime, certifying irreducibility unless disabled."""
    gen = gen.monic()
    if gen.degree < 1:
        raise NotIrreducible("a prime generator must have degree >= 1")
    if gen.symbol in gen.field.config.vars:
        raise ValueError("the tower indeterminate collides with a coefficient variable")
    if certify and not certify_irreducible(gen, bounds):
        raise NotIrreducible(f"{gen} is not irreducible over its coefficient field")
    return TowerPrime(gen.level, gen)


def lift_prime(prime: TowerPrime) -> tuple[LiftCase, TowerPrime]:
    """The unique prime one level up, together with which of the two shapes it has."""
    gen = prime.gen
    roots = [c.pth_root(1) for c in gen.coeffs]
    if all(r is not None for r in roots):
        lifted = UPoly(gen.field, roots, gen.symbol, gen.level + 1)
        return LiftCase.ROOT_CASE, TowerPrime(prime.level + 1, lifted)
    lifted = gen.compose_xpow(gen.field.p, level=gen.level + 1)
    return LiftCase.EXTEND_CASE, TowerPrime(prime.level + 1, lifted)


def contract_prime(prime: TowerPrime, bounds: FactorBounds | None = None) -> TowerPrime:
    """The prime one level down: the unique irreducible factor F of the
    untwisted generator with gen dividing F(t^p)."""
    if prime.level < 1:
        raise ValueError("cannot contract below level 0")
    gen = prime.gen
    descended = untwist(gen)
    matches = []
    for factor, _ in factor_oracle(descended, bounds):
        lifted = factor.compose_xpow(gen.field.p, level=gen.level)
        if (lifted % gen).is_zero:
            matches.append(factor)
    if len(matches) != 1:
        raise AssertionError("contraction did not isolate a unique factor")
    return TowerPrime(prime.level - 1, matches[0])


# ---------------------------------------------------------------------------
# Stabilization of the lifting chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizationReport:
    """Certificate that the lifting chain of gens[0] becomes pure extension
    after level m0.

    gens[m] generates the prime at level m; cert_in holds the p^m0-th roots of
    the non-leading coefficients of gens[0]; cert_out is the index of one
    coefficient with no p^(m0+1)-th root.
    """

    m0: int
    overhang: int
    gens: tuple[UPoly, ...]
    cert_in: tuple
    cert_out: int
    verified: bool


def stabilization_index(f0: UPoly, overhang: int = 3, bounds: FactorBounds | None = None) -> StabilizationReport:
    """Compute the largest e with all coefficients of f0 in K^(p^e), lift the
    prime through level m0 + overhang, and certify the resulting chain."""
    field = f0.field
    if getattr(field, "is_perfect_closure", False):
        raise PerfectCoefficients("every coefficient is a p-th power at all depths over a perfect field")
    f0 = f0.monic()
    if f0.level != 0:
        raise ValueError("stabilization starts from a level-0 generator")
    if all(c.is_constant for c in f0.coeffs):
        raise PerfectCoefficients("all coefficients lie in the largest perfect subfield")
    if not certify_irreducible(f0, bounds):
        raise NotIrreducible(f"{f0} is not irreducible over its coefficient field")

    m0 = None
    for c in f0.coeffs:
        if c.is_constant:
            continue
        depth = 0
        root = c.pth_root(1)
        while root is not None:
            depth += 1
            root = root.pth_root(1)
        m0 = depth if m0 is None else min(m0, depth)
    assert m0 is not None

    cert_in = tuple(c.pth_root(m0) for c in f0.coeffs[:-1])
    cert_out = next(i for i, c in enumerate(f0.coeffs) if c.pth_root(m0 + 1) is None)

    gens = [f0]
    prime = TowerPrime(0, f0)
    for m in range(1, m0 + overhang + 1):
        case, prime = lift_prime(prime)
        expected = LiftCase.ROOT_CASE if m <= m0 else LiftCase.EXTEND_CASE
        if case is not expected:
            raise AssertionError("lift case disagrees with the stabilization exponent")
        gens.append(prime.gen)

    report = StabilizationReport(m0, overhang, tuple(gens), cert_in, cert_out, False)
    verified = verify_extended_tower(report)
    return StabilizationReport(m0, overhang, tuple(gens), cert_in, cert_out, verified)


# ---------------------------------------------------------------------------
# Free-module coordinates and ideal membership
# ---------------------------------------------------------------------------

def basis_coords(f: UPoly, m0: int) -> list[UPoly]:
    """Coordinates of f in K[t_m] over K[t_m0] in the power basis
    {t_m^i : 0 <= i < p^(m-m0)}, using t_m^(p^(m-m0)) = t_m0."""
    if f.level < m0:
        raise ValueError("coordinates require level >= m0")
    rank = f.field.p ** (f.level - m0)
    zero = f.field.zero()
    cols: list[list] = [[] for _ in range(rank)]
    for j, c in enumerate(f.coeffs):
        q, i = divmod(j, rank)
        while len(cols[i]) < q:
            cols[i].append(zero)
        cols[i].append(c)
    return [UPoly(f.field, col, f.symbol, m0) for col in cols]


def extended_membership(f: UPoly, prime: TowerPrime) -> bool:
    """Membership of f in the ideal of K[t_m] extended from the prime at a
    shallower level: every free-basis coordinate must be divisible."""
    if f.level < prime.level:
        raise ValueError("membership requires the element at a level >= the prime")
    return all((b % prime.gen).is_zero for b in basis_coords(f, prime.level))


def localized_membership(f: UPoly, g: UPoly, bounds: FactorBounds | None = None) -> bool:
    """Membership of f in the ideal generated by g after inverting the
    nonzero polynomials of k[t].

    An irreducible factor of g divides some nonzero element of k[t] exactly
    when all its coefficients are algebraic over the base field, which for
    these coefficient fields means constant; such factors are absorbed by the
    localization.  Every other irreducible factor must divide f with full
    multiplicity.
    """
    if g.is_zero:
        return f.is_zero
    level = max(f.level, g.level)
    f = f.lift_to_level(level)
    g = g.lift_to_level(level)
    if f.is_zero:
        return True
    for factor, mult in factor_oracle(g, bounds):
        if all(c.is_constant for c in factor.coeffs):
            continue  # divides a unit of the localized ring
        rem = f
        seen = 0
        while seen < mult:
            q, r = rem.divrem(factor)
            if not r.is_zero:
                return False
            rem = q
            seen += 1
    return True


def verify_extended_tower(report: StabilizationReport, bounds: FactorBounds | None = None) -> bool:
    """Check the pure-extension window of the chain: for m0 < m <= m0 + overhang
    the generator must equal gens[m0] re-read at level m and must lie in the
    extended ideal."""
    gens = report.gens
    m0 = report.m0
    if len(gens) != m0 + report.overhang + 1:
        return False
    base = TowerPrime(m0, gens[m0])
    for m in range(m0 + 1, len(gens)):
        target = gens[m0].lift_to_level(m)
        if gens[m] != target:
            return False
        if not extended_membership(gens[m], base):
            return False
    return True


def verify_report(report: StabilizationReport, bounds: FactorBounds | None = None) -> bool:
    """Re-verify a full certificate: the root chain below m0, both coefficient
    membership certificates, irreducibility of the seed, and the extension window."""
    gens = report.gens
    if not gens or len(gens) != report.m0 + report.overhang + 1:
        return False
    f0 = gens[0]
    if f0.level != 0 or not f0.is_monic:
        return False
    if all(c.is_constant for c in f0.coeffs):
        return False
    if not certify_irreducible(f0, bounds):
        return False
    # coefficient-wise root chain through m0
    for m in range(1, report.m0 + 1):
        if gens[m].level != m or gens[m].degree != f0.degree:
            return False
        if untwist(gens[m]) != gens[m - 1]:
            return False
    # membership certificates
    if len(report.cert_in) != len(f0.coeffs) - 1:
        return False
    for root, coeff in zip(report.cert_in, f0.coeffs[:-1]):
        if root.frobenius(report.m0) != coeff:
            return False
    if not (0 <= report.cert_out < len(f0.coeffs)):
        return False
    if f0.coeffs[report.cert_out].pth_root(report.m0 + 1) is not None:
        return False
    return verify_extended_tower(report, bounds)


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------

def field_descriptor(field) -> dict:
    config = field.config
    return {
        "p": config.p,
        "degree": config.d,
        "modulus": list(config.modulus),
        "vars": list(config.vars),
        "perfect_closure": bool(getattr(field, "is_perfect_closure", False)),
    }


def field_from_descriptor(desc: dict):
    from .fields import FieldConfig, RationalField
    from .tower import PerfectClosureField

    config = FieldConfig(desc["p"], desc["degree"], tuple(desc["modulus"]), tuple(desc["vars"]))
    if desc.get("perfect_closure"):
        return PerfectClosureField(config)
    return RationalField(config)


def report_to_dict(report: StabilizationReport) -> dict:
    field = report.gens[0].field
    return {
        "kind": "stabilization-report",
        "p": field.config.p,
        "q": field.config.q,
        "field": field_descriptor(field),
        "f0": str(report.gens[0]),
        "m0": report.m0,
        "gens": [str(g) for g in report.gens],
        "cert_in": [field.format(c) for c in report.cert_in],
        "cert_out": report.cert_out,
        "verified": report.verified,
    }


def report_from_dict(data: dict) -> StabilizationReport:
    from .parser import parse_poly, parse_rational, parse_tower_element

    field = field_from_descriptor(data["field"])
    gens = tuple(
        parse_poly(text, field, symbol="t").lift_to_level(m)
        for m, text in enumerate(data["gens"])
    )
    if getattr(field, "is_perfect_closure", False):
        cert_in = tuple(parse_tower_element(text, field) for text in data["cert_in"])
    else:
        cert_in = tuple(parse_rational(text, field) for text in data["cert_in"])
    m0 = int(data["m0"])
    overhang = len(gens) - 1 - m0
    return StabilizationReport(m0, overhang, gens, cert_in, int(data["cert_out"]), bool(data["verified"]))
