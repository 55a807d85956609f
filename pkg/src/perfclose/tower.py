"""The perfect closure F_q(V)_per as a union of leveled rational functions.

A TowerElement (m, x) denotes the p^m-th root of the rational function x, so
level-m elements are exactly the rational functions in the p^m-th roots of
the variables.  The canonical form keeps the level minimal: either m = 0 or
x has no p-th root (some exponent is prime to p).
"""

from __future__ import annotations

from .fields import FieldConfig, RationalField, RationalFunction, format_rational


class TowerElement:
    """An element of F_q(V)_per; build through PerfectClosureField.normalize."""

    __slots__ = ("level", "value")

    def __init__(self, level: int, value: RationalFunction, _canonical: bool = False):
        if not _canonical:
            while level > 0:
                root = value.pth_root(1)
                if root is None:
                    break
                value = root
                level -= 1
            if level < 0:
                raise ValueError("negative tower level")
        self.level = level
        self.value = value

    # -- queries -----------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.value.fq.p

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    @property
    def is_constant(self) -> bool:
        return self.level == 0 and self.value.is_constant

    def lifted_value(self, level: int) -> RationalFunction:
        """The stored rational function of this element re-read at a higher level."""
        if level < self.level:
            raise ValueError("cannot lower the level of a canonical element")
        return self.value.frobenius(level - self.level)

    # -- arithmetic -----------------------------------------------------------------

    def _binary(self, other: TowerElement, op) -> TowerElement:
        m = max(self.level, other.level)
        return TowerElement(m, op(self.lifted_value(m), other.lifted_value(m)))

    def __add__(self, other: TowerElement) -> TowerElement:
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: TowerElement) -> TowerElement:
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, other: TowerElement) -> TowerElement:
        return self._binary(other, lambda a, b: a * b)

    def __truediv__(self, other: TowerElement) -> TowerElement:
        return self._binary(other, lambda a, b: a / b)

    def __neg__(self) -> TowerElement:
        return TowerElement(self.level, -self.value, _canonical=True)

    def inv(self) -> TowerElement:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return TowerElement(self.level, self.value.inv())

    def pth_root(self, e: int = 1) -> TowerElement:
        """Total: the ambient field is perfect."""
        if e == 0:
            return self
        return TowerElement(self.level + e, self.value)

    def frobenius(self, e: int = 1) -> TowerElement:
        if e == 0:
            return self
        if e <= self.level:
            return TowerElement(self.level - e, self.value, _canonical=True)
        return TowerElement(0, self.value.frobenius(e - self.level))

    def power(self, n: int) -> TowerElement:
        if n < 0:
            return self.inv().power(-n)
        result = TowerElement(0, _one(self.value), _canonical=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def in_subfield_power(self, j: int, e: int) -> bool:
        """Membership in (F_q(V^(1/p^j)))^(p^e)."""
        if self.level > j:
            return False
        return self.lifted_value(j).pth_root(e) is not None

    # -- plumbing -----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TowerElement):
            return NotImplemented
        return self.level == other.level and self.value == other.value

    def __hash__(self):
        return hash((self.level, self.value))

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        if self.level == 0:
            return format_rational(self.value, 0)
        if self.value.fq.d > 1:
            # coefficients of non-prime F_q are rooted too; render the whole group
            return f"({format_rational(self.value, 0)})^(1/{self.p ** self.level})"
        return format_rational(self.value, self.level)

    def __repr__(self):
        return f"TowerElement({self})"


def _one(like: RationalFunction) -> RationalFunction:
    from .fields import Polynomial

    fq = like.fq
    return RationalFunction(Polynomial.const(fq, fq.one), Polynomial.const(fq, fq.one), _canonical=True)


class PerfectClosureField:
    """F_q(V)_per: every operation returns a minimal-level canonical element."""

    is_perfect_closure = True

    def __init__(self, config: FieldConfig):
        self.config = config
        self.base = RationalField(config)
        self.p = config.p

    def normalize(self, level: int, value: RationalFunction) -> TowerElement:
        return TowerElement(level, value)

    def zero(self) -> TowerElement:
        return TowerElement(0, self.base.zero(), _canonical=True)

    def one(self) -> TowerElement:
        return TowerElement(0, self.base.one(), _canonical=True)

    def from_int(self, n: int) -> TowerElement:
        return TowerElement(0, self.base.from_int(n), _canonical=True)

    def from_rational(self, x: RationalFunction) -> TowerElement:
        return TowerElement(0, x, _canonical=True)

    def variable(self, name: str, level: int = 0) -> TowerElement:
        return TowerElement(level, self.base.variable(name))

    def is_constant(self, x: TowerElement) -> bool:
        return x.is_constant

    def format(self, x: TowerElement) -> str:
        return str(x)

    def sort_key(self, x: TowerElement):
        return (x.level, self.base.sort_key(x.value))

    def __eq__(self, other):
        return type(other) is PerfectClosureField and other.config == self.config

    def __hash__(self):
        return hash((PerfectClosureField, self.config))

    def __repr__(self):
        vars_part = ",".join(self.config.vars)
        return f"PerfectClosureField(F_{self.config.q}({vars_part})_per)"
