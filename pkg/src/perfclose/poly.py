"""Univariate polynomials over an exact coefficient field.

The same dense representation serves F_q, F_q(s) and perfect-closure
coefficients (any value type with +, -, *, inv, frobenius, pth_root and
is_zero/is_constant).  On top of it: long division, the Rabin irreducibility
test over F_q, an exhaustive trial-division factorization oracle over F_q(s),
the degree-p substitution transfer criterion, and the coefficient-untwisting
ring map that descends one tower level.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .errors import BoundsExceeded, MultivariateUnsupported, WrongCoefficientField
from .fields import Polynomial, reduce_level_fraction


class UPoly:
    """Dense univariate polynomial a_0 + a_1 X + ... over an exact field.

    `symbol` names the indeterminate and `level` its tower depth: at level m
    the indeterminate denotes the p^m-th root of the level-0 symbol.
    Arithmetic requires both operands to share field, symbol and level.
    """

    __slots__ = ("field", "coeffs", "symbol", "level")

    def __init__(self, field, coeffs, symbol: str = "X", level: int = 0):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self.symbol = symbol
        self.level = level

    # -- construction ------------------------------------------------------------

    @classmethod
    def zero(cls, field, symbol: str = "X", level: int = 0) -> UPoly:
        return cls(field, (), symbol, level)

    @classmethod
    def constant(cls, field, c, symbol: str = "X", level: int = 0) -> UPoly:
        return cls(field, (c,), symbol, level)

    @classmethod
    def gen(cls, field, symbol: str = "X", level: int = 0) -> UPoly:
        return cls(field, (field.zero(), field.one()), symbol, level)

    # -- queries -----------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == self.field.one()

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def _check(self, other: UPoly):
        if self.field != other.field or self.symbol != other.symbol or self.level != other.level:
            raise ValueError("polynomials live in different rings")

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other: UPoly) -> UPoly:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, (self.coeff(i) + other.coeff(i) for i in range(n)), self.symbol, self.level)

    def __neg__(self) -> UPoly:
        return UPoly(self.field, (-c for c in self.coeffs), self.symbol, self.level)

    def __sub__(self, other: UPoly) -> UPoly:
        return self + (-other)

    def __mul__(self, other: UPoly) -> UPoly:
        self._check(other)
        if self.is_zero or other.is_zero:
            return UPoly.zero(self.field, self.symbol, self.level)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out, self.symbol, self.level)

    def scale(self, c) -> UPoly:
        return UPoly(self.field, (a * c for a in self.coeffs), self.symbol, self.level)

    def __pow__(self, n: int) -> UPoly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = UPoly.constant(self.field, self.field.one(), self.symbol, self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divrem(self, other: UPoly) -> tuple[UPoly, UPoly]:
        """f = q*g + r with deg r < deg g, exact coefficient arithmetic."""
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        lc_inv = other.lc.inv()
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        quot = [self.field.zero()] * max(dq + 1, 0)
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * lc_inv
            k = len(rem) - len(other.coeffs)
            quot[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            while rem and rem[-1].is_zero:
                rem.pop()
            if rem and len(rem) > k + len(other.coeffs) - 1:
                # leading cancellation always strips at least one coefficient
                raise AssertionError("division failed to reduce the degree")
        return (
            UPoly(self.field, quot, self.symbol, self.level),
            UPoly(self.field, rem, self.symbol, self.level),
        )

    def __divmod__(self, other: UPoly):
        return self.divrem(other)

    def __mod__(self, other: UPoly) -> UPoly:
        return self.divrem(other)[1]

    def __floordiv__(self, other: UPoly) -> UPoly:
        return self.divrem(other)[0]

    def monic(self) -> UPoly:
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.lc.inv())

    def eval(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- structure maps -----------------------------------------------------------

    def compose_xpow(self, k: int, level: int | None = None) -> UPoly:
        """Substitute X -> X^k, optionally re-tagging the tower level."""
        if k < 1:
            raise ValueError("substitution power must be >= 1")
        zero = self.field.zero()
        out = [zero] * (k * self.degree + 1 if self.coeffs else 0)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return UPoly(self.field, out, self.symbol, self.level if level is None else level)

    def deflate(self, k: int, level: int | None = None) -> UPoly:
        """Inverse of compose_xpow; every nonzero exponent must divide k."""
        out = []
        for i, c in enumerate(self.coeffs):
            if i % k == 0:
                out.append(c)
            elif not c.is_zero:
                raise ValueError("polynomial is not a composition with X^k")
        return UPoly(self.field, out, self.symbol, self.level if level is None else level)

    def lift_to_level(self, level: int) -> UPoly:
        """Re-read in the ring at a deeper tower level (X_m = X_L^(p^(L-m)))."""
        if level == self.level:
            return self
        if level < self.level:
            raise ValueError("cannot lift to a shallower level")
        return self.compose_xpow(self.field.p ** (level - self.level), level=level)

    @property
    def min_level(self) -> int:
        """The shallowest level at which this polynomial can be rewritten."""
        g = 0
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                g = math.gcd(g, i)
        shrink = 0
        p = self.field.p
        while shrink < self.level and g % p == 0:
            g //= p
            shrink += 1
        return self.level - shrink

    def map_coeffs(self, fn, field=None, level: int | None = None, symbol: str | None = None) -> UPoly:
        return UPoly(
            field if field is not None else self.field,
            (fn(c) for c in self.coeffs),
            symbol if symbol is not None else self.symbol,
            self.level if level is None else level,
        )

    # -- plumbing -----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.symbol == other.symbol
            and self.level == other.level
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.symbol, self.level, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        p = self.field.p
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = self.field.format(c)
            if i == 0:
                parts.append(cs)
                continue
            a, lev = reduce_level_fraction(i, self.level, p)
            if lev == 0:
                xs = self.symbol if a == 1 else f"{self.symbol}^{a}"
            else:
                xs = f"{self.symbol}^({a}/{p ** lev})"
            if cs == "1":
                parts.append(xs)
            else:
                parts.append(f"{_wrap_coeff(cs)}*{xs}")
        return "+".join(parts)

    def __repr__(self):
        return f"UPoly({self})"


_ATOMIC_COEFF = re.compile(r"^(\d+|[A-Za-z_]\w*(\^(\d+|\(\d+/\d+\)))?)$")


def _wrap_coeff(s: str) -> str:
    if _ATOMIC_COEFF.match(s) or s.startswith("("):
        return s
    return f"({s})"


# ---------------------------------------------------------------------------
# gcd, modular powers, Rabin irreducibility
# ---------------------------------------------------------------------------

def poly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm."""
    while not g.is_zero:
        f, g = g, f % g
    if f.is_zero:
        return f
    return f.monic()


def poly_powmod(base: UPoly, n: int, mod: UPoly) -> UPoly:
    result = UPoly.constant(base.field, base.field.one(), base.symbol, base.level)
    base = base % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_fq(f: UPoly) -> bool:
    """Rabin test over F_q: f of degree n is irreducible iff X^(q^n) = X mod f
    and gcd(f, X^(q^(n/l)) - X) = 1 for every prime l dividing n."""
    field = f.field
    if getattr(field, "is_perfect_closure", False):
        raise WrongCoefficientField("Rabin test expects coefficients in F_q")
    if any(not c.is_constant for c in f.coeffs):
        raise WrongCoefficientField("Rabin test expects constant coefficients")
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    q = field.config.q
    x = UPoly.gen(field, f.symbol, f.level)
    for ell in _prime_factors(n):
        h = poly_powmod(x, q ** (n // ell), f) - (x % f)
        if poly_gcd(f, h).degree != 0:
            return False
    return poly_powmod(x, q ** n, f) == x % f


# ---------------------------------------------------------------------------
# The exhaustive trial-division factorization oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorBounds:
    """Degree caps on the trial-division workload (after p-th power stripping)."""

    max_x_degree: int = 8
    max_coeff_degree: int = 8


DEFAULT_BOUNDS = FactorBounds()


def factor_oracle(f: UPoly, bounds: FactorBounds | None = None) -> tuple[tuple[UPoly, int], ...]:
    """Complete factorization of f into monic irreducibles with multiplicities.

    Works over F_q(s) with at most one coefficient variable by exhaustive
    trial division: candidate monic factors of degree <= deg(f)/2 with
    coefficient degree bounded by the coefficient degree of the (integral,
    p-th-power-stripped) input are enumerated and divided out.  A factor is
    emitted as irreducible only after the full candidate range is exhausted,
    so the result is a certificate by construction.  Verified perfect p-th
    powers are stripped first, which only rewrites f as an explicit product.

    Over the perfect closure the input is descended to level 0 coefficients,
    factored there, and each factor is split into its inseparable power: an
    irreducible h over F_q(s) with exponent-gcd p-part p^c factors over the
    closure as (coefficient p^c-th roots of the deflation)^(p^c).
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    bounds = bounds or DEFAULT_BOUNDS
    field = f.field
    if getattr(field, "is_perfect_closure", False):
        return _factor_perfect_closure(f, bounds)
    if field.config.nvars > 1:
        raise MultivariateUnsupported("factorization supports at most one coefficient variable")
    f = f.monic()
    if f.degree == 0:
        return ()
    if any(not c.den.is_one for c in f.coeffs):
        return _factor_with_denominators(f, bounds)
    return _sorted_factors(_factor_integral(f, bounds))


def _sorted_factors(factors) -> tuple[tuple[UPoly, int], ...]:
    return tuple(sorted(factors, key=lambda fe: (fe[0].degree, str(fe[0]))))


def _factor_perfect_closure(f: UPoly, bounds: FactorBounds) -> tuple[tuple[UPoly, int], ...]:
    field = f.field
    f = f.monic()
    if f.degree == 0:
        return ()
    levels = [c.level for c in f.coeffs if not c.is_zero]
    depth = max(levels, default=0)
    base = field.base
    f0 = f.map_coeffs(lambda c: c.frobenius(depth).value, field=base)
    out = []
    for h, e in factor_oracle(f0, bounds):
        g = 0
        for i, c in enumerate(h.coeffs):
            if not c.is_zero:
                g = math.gcd(g, i)
        c_ins = 0
        p = field.p
        while g % p == 0:
            g //= p
            c_ins += 1
        h_sep = h.deflate(p ** c_ins)
        lifted = h_sep.map_coeffs(lambda rc: field.normalize(depth + c_ins, rc), field=field)
        out.append((lifted, e * p ** c_ins))
    return _sorted_factors(out)


def _factor_with_denominators(f: UPoly, bounds: FactorBounds) -> tuple[tuple[UPoly, int], ...]:
    # substitute X -> Y/D and rescale to reach the integral monic case
    field = f.field
    den = None
    for c in f.coeffs:
        if not c.den.is_one:
            den = c.den if den is None else den.exact_div(den.gcd(c.den)) * c.den
    d_rf = field.from_polynomial(den)
    d = f.degree
    powers = [field.one()]
    for _ in range(d):
        powers.append(powers[-1] * d_rf)
    integral = UPoly(
        field,
        [f.coeff(i) * powers[d - i] for i in range(d)] + [field.one()],
        f.symbol,
        f.level,
    )
    out = []
    for h, e in _factor_integral(integral, bounds):
        k = h.degree
        back = UPoly(
            field,
            [h.coeff(j) * powers[j] / powers[k] for j in range(k)] + [field.one()],
            f.symbol,
            f.level,
        )
        out.append((back, e))
    return _sorted_factors(out)


def _strip_p_power(f: UPoly) -> tuple[UPoly, int]:
    """Replace f by its verified p^a-th root while one exists; returns (root, p^a)."""
    p = f.field.p
    scale = 1
    while f.degree >= p:
        if any(i % p and not c.is_zero for i, c in enumerate(f.coeffs)):
            break
        needed = [f.coeffs[i].pth_root(1) for i in range(0, len(f.coeffs), p)]
        if any(r is None for r in needed):
            break
        root = UPoly(f.field, needed, f.symbol, f.level)
        if root ** p != f:
            raise AssertionError("p-th power extraction produced a non-root")
        f = root
        scale *= p
    return f, scale


def _coefficient_degree(f: UPoly) -> int:
    deg = 0
    for c in f.coeffs:
        if not c.is_zero:
            deg = max(deg, c.num.total_degree)
    return deg


def _candidate_scalars(field: RationalField):
    fq = field.fq
    for tup in itertools.product(range(fq.p), repeat=fq.d):
        yield field.from_scalar(tup)


def _candidate_coeffs(field: RationalField, max_deg: int):
    if field.config.nvars == 0:
        yield from _candidate_scalars(field)
        return
    fq = field.fq
    scalars = [tuple(t) for t in itertools.product(range(fq.p), repeat=fq.d)]
    for tup in itertools.product(scalars, repeat=max_deg + 1):
        terms = tuple(((i,), c) for i, c in enumerate(tup) if c != fq.zero)
        yield field.from_polynomial(Polynomial(fq, terms))


def _factor_integral(f: UPoly, bounds: FactorBounds) -> list[tuple[UPoly, int]]:
    """Recursive trial division of a monic polynomial with polynomial coefficients."""
    if f.degree == 0:
        return []
    f, scale = _strip_p_power(f)
    if f.degree > bounds.max_x_degree:
        raise BoundsExceeded(f"degree {f.degree} exceeds the bound {bounds.max_x_degree}")
    coeff_deg = _coefficient_degree(f)
    if coeff_deg > bounds.max_coeff_degree:
        raise BoundsExceeded(
            f"coefficient degree {coeff_deg} exceeds the bound {bounds.max_coeff_degree}"
        )
    field = f.field
    values = list(_candidate_coeffs(field, coeff_deg))
    one = field.one()
    for k in range(1, f.degree // 2 + 1):
        for tail in itertools.product(values, repeat=k):
            cand = UPoly(field, list(tail) + [one], f.symbol, f.level)
            q, r = f.divrem(cand)
            if not r.is_zero:
                continue
            # first divisor of minimal degree is irreducible
            mult = 1
            f = q
            while True:
                q, r = f.divrem(cand)
                if not r.is_zero:
                    break
                mult += 1
                f = q
            rest = [(g, e * scale) for g, e in _factor_integral(f, bounds)]
            return [(cand, mult * scale)] + rest
    return [(f, scale)]


# ---------------------------------------------------------------------------
# Irreducibility certification and the transfer criterion
# ---------------------------------------------------------------------------

def _exponent_p_part(f: UPoly) -> int:
    """Largest e with f in K[X^(p^e)]."""
    g = 0
    for i, c in enumerate(f.coeffs):
        if not c.is_zero:
            g = math.gcd(g, i)
    e = 0
    p = f.field.p
    while g and g % p == 0:
        g //= p
        e += 1
    return e


def _base_irreducible(g: UPoly, bounds: FactorBounds | None) -> bool:
    """Irreducibility with no use of the transfer criterion."""
    if g.degree < 1:
        return False
    if g.degree == 1:
        return True
    if not getattr(g.field, "is_perfect_closure", False) and all(c.is_constant for c in g.coeffs):
        return irreducible_fq(g)
    factors = factor_oracle(g, bounds)
    return len(factors) == 1 and factors[0][1] == 1


def irreducible_transfer(g: UPoly, steps: int = 1, bounds: FactorBounds | None = None) -> bool:
    """Irreducibility verdict for g(X^(p^steps)), decided without building it.

    The composition is irreducible exactly when g is irreducible and not all
    of its coefficients are p-th powers; iterating the substitution does not
    change the coefficient set, so one membership scan settles every step.
    With steps = 0 this is just the delegated verdict on g itself.
    """
    g = g.monic()
    verdict = _base_irreducible(g, bounds)
    if steps == 0 or not verdict:
        return verdict
    return any(c.pth_root(1) is None for c in g.coeffs)


def certify_irreducible(f: UPoly, bounds: FactorBounds | None = None) -> bool:
    """Production irreducibility check: Rabin over F_q, exponent deflation plus
    the transfer criterion over F_q(s), level descent over the closure."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    f = f.monic()
    field = f.field
    if getattr(field, "is_perfect_closure", False):
        depth = max((c.level for c in f.coeffs if not c.is_zero), default=0)
        f0 = f.map_coeffs(lambda c: c.frobenius(depth).value, field=field.base)
        if _exponent_p_part(f0) > 0:
            return False  # a perfect coefficient field makes it a proper p-th power
        return certify_irreducible(f0, bounds)
    if all(c.is_constant for c in f.coeffs):
        return irreducible_fq(f)
    e = _exponent_p_part(f)
    if e > 0:
        if all(c.pth_root(1) is not None for c in f.coeffs):
            return False
        return certify_irreducible(f.deflate(f.field.p), bounds)
    factors = factor_oracle(f, bounds)
    return len(factors) == 1 and factors[0][1] == 1


def untwist(g: UPoly) -> UPoly:
    """Raise every coefficient to the p-th power and re-read one level down.

    untwist(G)(X^p) == G(X)^p holds identically, so untwist maps the monic
    generator of a prime one tower level down onto a p-th power witness of
    its contraction.
    """
    level = g.level - 1 if g.level > 0 else 0
    return g.map_coeffs(lambda c: c.frobenius(1), level=level)
