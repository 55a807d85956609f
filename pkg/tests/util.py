"""Seeded random value generators shared by the test modules."""

from __future__ import annotations

import random

from perfclose import (
    FieldConfig,
    PerfectClosureField,
    Polynomial,
    RationalField,
    UPoly,
)

F2S = FieldConfig(2, vars=("s",))
F3S = FieldConfig(3, vars=("s",))
F7S = FieldConfig(7, vars=("s",))
F2ST = FieldConfig(2, vars=("s", "t"))
F3ST = FieldConfig(3, vars=("s", "t"))


def random_polynomial(field: RationalField, rng: random.Random, max_terms=3, max_exp=5) -> Polynomial:
    fq = field.fq
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        exp = tuple(rng.randint(0, max_exp) for _ in range(fq.config.nvars))
        coeff = tuple(rng.randrange(fq.p) for _ in range(fq.d))
        terms.append((exp, coeff))
    return Polynomial(fq, terms)


def random_nonzero_polynomial(field, rng, max_terms=3, max_exp=5) -> Polynomial:
    while True:
        poly = random_polynomial(field, rng, max_terms, max_exp)
        if not poly.is_zero:
            return poly


def random_rational(field: RationalField, rng, max_terms=3, max_exp=5):
    num = random_polynomial(field, rng, max_terms, max_exp)
    den = random_nonzero_polynomial(field, rng, max_terms, max_exp)
    return field.normalize(num, den)


def random_nonzero_rational(field, rng, max_terms=3, max_exp=5):
    while True:
        x = random_rational(field, rng, max_terms, max_exp)
        if not x.is_zero:
            return x


def random_tower(field: PerfectClosureField, rng, max_level=3, max_terms=3, max_exp=5):
    value = random_rational(field.base, rng, max_terms, max_exp)
    return field.normalize(rng.randint(0, max_level), value)


def random_monic(field: RationalField, rng, degree: int, coeff_deg: int, symbol="t", level=0) -> UPoly:
    """Monic polynomial with polynomial (denominator-free) coefficients."""
    coeffs = []
    for _ in range(degree):
        coeffs.append(field.from_polynomial(random_polynomial(field, rng, max_terms=coeff_deg + 1, max_exp=coeff_deg)))
    coeffs.append(field.one())
    return UPoly(field, coeffs, symbol, level)
