"""Exact arithmetic in F_q (q = p^d) and in multivariate rational function fields F_q(V).

Every value is immutable and canonical: equal field elements compare equal
structurally, denominators are monic and coprime to numerators, and the term
order (graded lexicographic over the declared variable order) is fixed, so
equality is plain tuple comparison.  Exponents are Python ints throughout;
nothing overflows when p^e grows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ZeroDenominator

GENERATOR_SYMBOL = "w"  # power-basis generator of F_q when d > 1
TOWER_SYMBOL = "t"      # conventional tower indeterminate, see primetower


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def reduce_level_fraction(a: int, level: int, p: int) -> tuple[int, int]:
    """Reduce the formal exponent a / p^level to lowest terms."""
    while level > 0 and a % p == 0:
        a //= p
        level -= 1
    return a, level


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


@dataclass(frozen=True)
class FieldConfig:
    """F_q = F_p[w]/(modulus) together with the coefficient variables of F_q(V).

    `modulus` is the monic defining polynomial as coefficients a_0..a_d over
    F_p; for d = 1 it defaults to (0, 1), i.e. the identity quotient.  The
    primality of p is checked by trial division and the irreducibility of the
    modulus by the Rabin test at construction time.
    """

    p: int
    d: int = 1
    modulus: tuple[int, ...] = ()
    vars: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.d < 1:
            raise ValueError("extension degree must be >= 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if not mod and self.d == 1:
            mod = (0, 1)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.d + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree d over F_p")
        seen = set()
        for name in self.vars:
            if not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")
            if name == GENERATOR_SYMBOL:
                raise ValueError(f"variable name {name!r} collides with the F_q generator")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)
        if self.d > 1:
            from .poly import UPoly, irreducible_fq  # deferred, cycle on import only

            base = RationalField(FieldConfig(self.p))
            poly = UPoly(base, tuple(base.from_int(c) for c in mod), "X", 0)
            if not irreducible_fq(poly):
                raise ValueError("modulus is reducible over F_p")

    @property
    def q(self) -> int:
        return self.p ** self.d

    @property
    def nvars(self) -> int:
        return len(self.vars)


# ---------------------------------------------------------------------------
# F_q scalars: coefficient tuples of length d in the power basis of w.
# ---------------------------------------------------------------------------

def _zp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    binv = pow(b[-1], p - 2, p)
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = (r[-1] * binv) % p
        k = len(r) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] = (r[k + i] - c * bc) % p
        _zp_trim(r)
        if not r:
            break
    return q, r


class Fq:
    """Arithmetic in F_q in the power basis of the defining modulus."""

    def __init__(self, config: FieldConfig):
        self.config = config
        self.p = config.p
        self.d = config.d
        self.q = config.q
        self.zero = (0,) * self.d
        self.one = (1,) + (0,) * (self.d - 1)

    def from_int(self, n: int) -> tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.d - 1)

    def generator(self) -> tuple[int, ...]:
        if self.d < 2:
            raise ValueError("prime field has no extension generator")
        return (0, 1) + (0,) * (self.d - 2)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        p = self.p
        if self.d == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.config.modulus
        for k in range(len(prod) - 1, self.d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(self.d):
                    prod[k - self.d + i] = (prod[k - self.d + i] - c * mod[i]) % p
        return tuple(prod[: self.d])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in F_q")
        p = self.p
        if self.d == 1:
            return (pow(a[0], p - 2, p),)
        # extended Euclid in F_p[w] against the modulus
        r0, r1 = list(self.config.modulus), _zp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _zp_divmod(r0, r1, p)
            r0, r1 = r1, r
            # s0 - q*s1
            new = list(s0) + [0] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        new[i + j] = (new[i + j] - qc * sc) % p
            s0, s1 = s1, _zp_trim(new)
        # r0 is the gcd, a nonzero constant
        c = pow(r0[0], p - 2, p)
        out = [0] * self.d
        for i, sc in enumerate(s0):
            out[i] = (sc * c) % p
        return tuple(out)

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a, e: int = 1):
        """a^(p^e); the identity on prime fields."""
        if self.d == 1 or e == 0 or a == self.zero:
            return a
        return self.pow(a, pow(self.p, e, self.q - 1))

    def pth_root(self, a, e: int = 1):
        """The unique p^e-th root; total because F_q is perfect."""
        if self.d == 1 or e == 0:
            return a
        return self.frobenius(a, (-e) % self.d)

    def format(self, a) -> str:
        if self.d == 1:
            return str(a[0])
        parts = []
        for i in range(self.d - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(GENERATOR_SYMBOL if c == 1 else f"{c}*{GENERATOR_SYMBOL}")
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}{GENERATOR_SYMBOL}^{i}")
        return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Multivariate polynomials over F_q.
#
# Internal helpers work on dicts {exponent tuple: scalar}; the Polynomial
# class freezes them into a tuple sorted by descending graded-lex order.
# ---------------------------------------------------------------------------

def _t_add(fq: Fq, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = fq.add(out.get(e, fq.zero), c)
        if s == fq.zero:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _t_neg(fq: Fq, a: dict) -> dict:
    return {e: fq.neg(c) for e, c in a.items()}


def _t_sub(fq: Fq, a: dict, b: dict) -> dict:
    return _t_add(fq, a, _t_neg(fq, b))


def _t_mul(fq: Fq, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = fq.add(out.get(e, fq.zero), fq.mul(ca, cb))
            if s == fq.zero:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _t_scale(fq: Fq, a: dict, c) -> dict:
    if c == fq.zero:
        return {}
    return {e: fq.mul(x, c) for e, x in a.items()}


def _t_lt(a: dict) -> tuple:
    return max(a, key=_grlex_key)


def _t_norm(fq: Fq, a: dict) -> dict:
    """Scale so the graded-lex leading coefficient is 1."""
    if not a:
        return a
    lc = a[_t_lt(a)]
    if lc == fq.one:
        return a
    return _t_scale(fq, a, fq.inv(lc))


def _t_exact_div(fq: Fq, a: dict, b: dict) -> dict:
    """Exact quotient a / b; raises ArithmeticError when the division is not exact."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q: dict = {}
    r = dict(a)
    eb = _t_lt(b)
    cb_inv = fq.inv(b[eb])
    while r:
        er = _t_lt(r)
        diff = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in diff):
            raise ArithmeticError("polynomial division is not exact")
        c = fq.mul(r[er], cb_inv)
        q[diff] = c
        r = _t_sub(fq, r, _t_mul(fq, {diff: c}, b))
    return q


def _t_split_last(a: dict) -> dict[int, dict]:
    """View in the last variable: degree -> coefficient dict in the remaining variables."""
    out: dict[int, dict] = {}
    for e, c in a.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return out


def _t_join_last(m: dict[int, dict]) -> dict:
    out = {}
    for k, sub in m.items():
        for e, c in sub.items():
            out[e + (k,)] = c
    return out


def _univ_gcd(fq: Fq, a: dict, b: dict) -> dict:
    """Monic Euclid for single-variable term dicts."""

    def to_list(t: dict) -> list:
        n = max(e[0] for e in t)
        out = [fq.zero] * (n + 1)
        for e, c in t.items():
            out[e[0]] = c
        return out

    def rem(x: list, y: list) -> list:
        yinv = fq.inv(y[-1])
        r = list(x)
        while len(r) >= len(y):
            c = fq.mul(r[-1], yinv)
            k = len(r) - len(y)
            for i, yc in enumerate(y):
                r[k + i] = fq.sub(r[k + i], fq.mul(c, yc))
            while r and r[-1] == fq.zero:
                r.pop()
        return r

    x, y = to_list(a), to_list(b)
    while y:
        x, y = y, rem(x, y)
    lead_inv = fq.inv(x[-1])
    return {(i,): fq.mul(c, lead_inv) for i, c in enumerate(x) if c != fq.zero}


def _t_content(fq: Fq, split: dict[int, dict], nv: int) -> dict:
    g: dict = {}
    for c in split.values():
        g = _t_gcd(fq, g, c, nv)
        if len(g) == 1 and _t_lt(g) == ((0,) * nv):
            break
    return g


def _t_prem(fq: Fq, a: dict[int, dict], b: dict[int, dict]) -> dict[int, dict]:
    """Pseudo-remainder of recursive views; coefficients are term dicts."""
    db = max(b)
    lb = b[db]
    r = {k: dict(v) for k, v in a.items()}
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        new: dict[int, dict] = {}
        for i, c in r.items():
            prod = _t_mul(fq, lb, c)
            if prod:
                new[i] = prod
        for i, c in b.items():
            j = i + shift
            val = _t_sub(fq, new.get(j, {}), _t_mul(fq, lr, c))
            if val:
                new[j] = val
            else:
                new.pop(j, None)
        r = new
    return r


def _t_gcd(fq: Fq, a: dict, b: dict, nv: int) -> dict:
    """Monic gcd by primitive-part recursion on the last variable."""
    if not a:
        return _t_norm(fq, b)
    if not b:
        return _t_norm(fq, a)
    if nv == 0:
        return {(): fq.one}
    if nv == 1:
        return _univ_gcd(fq, a, b)
    sa, sb = _t_split_last(a), _t_split_last(b)
    ca = _t_content(fq, sa, nv - 1)
    cb = _t_content(fq, sb, nv - 1)
    ppa = {i: _t_exact_div(fq, c, ca) for i, c in sa.items()}
    ppb = {i: _t_exact_div(fq, c, cb) for i, c in sb.items()}
    cont = _t_gcd(fq, ca, cb, nv - 1)
    x, y = ppa, ppb
    while y:
        r = _t_prem(fq, x, y)
        if r:
            cr = _t_content(fq, r, nv - 1)
            r = {i: _t_exact_div(fq, c, cr) for i, c in r.items()}
        x, y = y, r
    lifted = {e + (k,): c for k, sub in x.items() for e, c in sub.items()}
    full = _t_mul(fq, lifted, {e + (0,): c for e, c in cont.items()})
    return _t_norm(fq, full)


class Polynomial:
    """Multivariate polynomial over F_q with a graded-lex canonical term order."""

    __slots__ = ("fq", "terms")

    def __init__(self, fq: Fq, terms, _canonical: bool = False):
        self.fq = fq
        if _canonical:
            self.terms = terms
            return
        acc: dict = {}
        pairs = terms.items() if isinstance(terms, dict) else terms
        for e, c in pairs:
            e = tuple(e)
            s = fq.add(acc.get(e, fq.zero), c)
            if s == fq.zero:
                acc.pop(e, None)
            else:
                acc[e] = s
        self.terms = tuple(sorted(acc.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, fq: Fq) -> Polynomial:
        return cls(fq, (), _canonical=True)

    @classmethod
    def const(cls, fq: Fq, c) -> Polynomial:
        nv = fq.config.nvars
        if c == fq.zero:
            return cls.zero(fq)
        return cls(fq, (((0,) * nv, c),), _canonical=True)

    @classmethod
    def variable(cls, fq: Fq, name: str) -> Polynomial:
        idx = fq.config.vars.index(name)
        exp = tuple(1 if i == idx else 0 for i in range(fq.config.nvars))
        return cls(fq, ((exp, fq.one),), _canonical=True)

    # -- queries ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and sum(self.terms[0][0]) == 0)

    @property
    def is_one(self) -> bool:
        return len(self.terms) == 1 and sum(self.terms[0][0]) == 0 and self.terms[0][1] == self.fq.one

    def constant_value(self):
        if self.is_zero:
            return self.fq.zero
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self.terms[0][1]

    @property
    def total_degree(self) -> int:
        return sum(self.terms[0][0]) if self.terms else -1

    @property
    def lc(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def _dict(self) -> dict:
        return dict(self.terms)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.fq, _t_add(self.fq, self._dict(), other._dict()))

    def __neg__(self) -> Polynomial:
        return Polynomial(self.fq, _t_neg(self.fq, self._dict()))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.fq, _t_sub(self.fq, self._dict(), other._dict()))

    def __mul__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.fq, _t_mul(self.fq, self._dict(), other._dict()))

    def scale(self, c) -> Polynomial:
        return Polynomial(self.fq, _t_scale(self.fq, self._dict(), c))

    def exact_div(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.fq, _t_exact_div(self.fq, self._dict(), other._dict()))

    def gcd(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.fq, _t_gcd(self.fq, self._dict(), other._dict(), self.fq.config.nvars))

    def frobenius(self, e: int = 1) -> Polynomial:
        if e == 0:
            return self
        q = self.fq.p ** e
        terms = tuple(
            (tuple(x * q for x in exp), self.fq.frobenius(c, e)) for exp, c in self.terms
        )
        return Polynomial(self.fq, terms, _canonical=True)

    def pth_root(self, e: int = 1) -> Polynomial | None:
        """The p^e-th root, or None when some exponent is not divisible by p^e."""
        if e == 0:
            return self
        q = self.fq.p ** e
        out = []
        for exp, c in self.terms:
            if any(x % q for x in exp):
                return None
            out.append((tuple(x // q for x in exp), self.fq.pth_root(c, e)))
        return Polynomial(self.fq, tuple(out), _canonical=True)

    # -- plumbing ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.fq.config == other.fq.config and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_polynomial(self, 0)

    def __repr__(self):
        return f"Polynomial({self})"


def format_polynomial(poly: Polynomial, level: int) -> str:
    """Render with per-variable exponents a/p^level reduced to lowest terms."""
    if poly.is_zero:
        return "0"
    fq = poly.fq
    names = fq.config.vars
    p = fq.p
    parts = []
    for exp, coeff in poly.terms:
        factors = []
        for name, a in zip(names, exp):
            if not a:
                continue
            a_red, lev = reduce_level_fraction(a, level, p)
            if lev == 0:
                factors.append(name if a_red == 1 else f"{name}^{a_red}")
            else:
                factors.append(f"{name}^({a_red}/{p ** lev})")
        cs = fq.format(coeff)
        if not factors:
            parts.append(cs if ("+" not in cs) else f"({cs})")
        elif coeff == fq.one:
            parts.append("*".join(factors))
        else:
            head = cs if "+" not in cs else f"({cs})"
            parts.append("*".join([head] + factors))
    return "+".join(parts)


# ---------------------------------------------------------------------------
# Rational functions and the field F_q(V).
# ---------------------------------------------------------------------------

class RationalFunction:
    """Canonical fraction num/den: den monic in graded-lex, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial, _canonical: bool = False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero:
            raise ZeroDenominator("rational function with zero denominator")
        fq = num.fq
        if num.is_zero:
            self.num = Polynomial.zero(fq)
            self.den = Polynomial.const(fq, fq.one)
            return
        if not den.is_constant:
            g = num.gcd(den)
            if not g.is_one:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != fq.one:
            c = fq.inv(lc)
            num = num.scale(c)
            den = den.scale(c)
        self.num = num
        self.den = den

    # -- queries ----------------------------------------------------------------

    @property
    def fq(self) -> Fq:
        return self.num.fq

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    @property
    def in_perfect_subfield(self) -> bool:
        """Membership in the largest perfect subfield, which is F_q here."""
        return self.is_constant

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + (-other)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inv(self) -> RationalFunction:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        return self * other.inv()

    def frobenius(self, e: int = 1) -> RationalFunction:
        """x^(p^e) by raising exponent vectors and coefficients; stays canonical."""
        if e == 0:
            return self
        return RationalFunction(self.num.frobenius(e), self.den.frobenius(e), _canonical=True)

    def pth_root(self, e: int = 1) -> RationalFunction | None:
        """y with y^(p^e) = x, present exactly when all exponents divide p^e."""
        if e == 0 or self.is_zero:
            return self
        num = self.num.pth_root(e)
        if num is None:
            return None
        den = self.den.pth_root(e)
        if den is None:
            return None
        return RationalFunction(num, den, _canonical=True)

    # -- plumbing ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        return format_rational(self, 0)

    def __repr__(self):
        return f"RationalFunction({self})"


def format_rational(x: RationalFunction, level: int) -> str:
    num = format_polynomial(x.num, level)
    if x.den.is_one:
        return num
    return f"({num})/({format_polynomial(x.den, level)})"


class RationalField:
    """The field K = F_q(V) of canonical rational functions."""

    is_perfect_closure = False

    def __init__(self, config: FieldConfig):
        self.config = config
        self.fq = Fq(config)
        self.p = config.p

    def normalize(self, num: Polynomial, den: Polynomial) -> RationalFunction:
        """The unique canonical representative of num/den; idempotent."""
        return RationalFunction(num, den)

    def zero(self) -> RationalFunction:
        return RationalFunction(Polynomial.zero(self.fq), Polynomial.const(self.fq, self.fq.one), _canonical=True)

    def one(self) -> RationalFunction:
        return self.from_scalar(self.fq.one)

    def from_scalar(self, c) -> RationalFunction:
        return RationalFunction(Polynomial.const(self.fq, c), Polynomial.const(self.fq, self.fq.one), _canonical=True)

    def from_int(self, n: int) -> RationalFunction:
        return self.from_scalar(self.fq.from_int(n))

    def from_polynomial(self, poly: Polynomial) -> RationalFunction:
        return RationalFunction(poly, Polynomial.const(self.fq, self.fq.one), _canonical=True)

    def variable(self, name: str) -> RationalFunction:
        return self.from_polynomial(Polynomial.variable(self.fq, name))

    def is_constant(self, x: RationalFunction) -> bool:
        return x.is_constant

    def format(self, x: RationalFunction) -> str:
        return format_rational(x, 0)

    def sort_key(self, x: RationalFunction):
        return (x.num.terms, x.den.terms)

    def __eq__(self, other):
        return type(other) is RationalField and other.config == self.config

    def __hash__(self):
        return hash((RationalField, self.config))

    def __repr__(self):
        vars_part = ",".join(self.config.vars)
        return f"RationalField(F_{self.config.q}({vars_part}))"
