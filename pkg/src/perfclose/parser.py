"""Recursive-descent parser for the element and polynomial grammar.

Tokens: decimal integers, identifiers, and the operators + - * / ^ ( ).
Exponents are nonnegative integers or parenthesized fractions `(a/P)` where
P is a power of p; `v^(a/P)` denotes a tower root of the variable v and may
also follow a parenthesized subexpression or the polynomial indeterminate.
Fractional exponents are normalized on input, so any representation of a
tower level is accepted; formatting always emits the reduced form.

Everything is evaluated over the perfect closure of F_q(vars); polynomial
mode additionally tracks one distinguished indeterminate symbol.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownVariable
from .fields import GENERATOR_SYMBOL, RationalField, RationalFunction
from .poly import UPoly
from .tower import PerfectClosureField, TowerElement

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[where]!r}", where)
        if m.lastgroup == "num":
            out.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            out.append(("ident", m.group("ident"), m.start("ident")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """Evaluates the expression as a univariate polynomial over F_q(vars)_per."""

    def __init__(self, text: str, field: PerfectClosureField, symbol: str | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field
        self.symbol = symbol

    # -- token plumbing ------------------------------------------------------

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, text, pos = self.take()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}", pos)

    # -- value helpers ---------------------------------------------------------

    def _poly_symbol(self) -> str:
        return self.symbol if self.symbol is not None else "X"

    def _const(self, c: TowerElement) -> UPoly:
        return UPoly.constant(self.field, c, self._poly_symbol(), 0)

    def _unify(self, a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
        level = max(a.level, b.level)
        return a.lift_to_level(level), b.lift_to_level(level)

    # -- grammar ------------------------------------------------------------------

    def parse(self) -> UPoly:
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {text!r}", pos)
        return value

    def expr(self) -> UPoly:
        kind, text, _ = self.peek()
        negate = False
        if kind == "op" and text in "+-":
            self.take()
            negate = text == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                a, b = self._unify(value, rhs)
                value = a + b if text == "+" else a - b
            else:
                return value

    def term(self) -> UPoly:
        value = self.factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                self.take()
                a, b = self._unify(value, self.factor())
                value = a * b
            elif kind == "op" and text == "/":
                self.take()
                rhs = self.factor()
                if rhs.degree > 0:
                    raise ParseError("division by a polynomial is not supported", pos)
                if rhs.is_zero:
                    raise ParseError("division by zero", pos)
                value = value.scale(rhs.coeff(0).inv())
            else:
                return value

    def factor(self) -> UPoly:
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> UPoly:
        base, plain_symbol = self.atom()
        kind, text, pos = self.peek()
        if not (kind == "op" and text == "^"):
            return base
        self.take()
        exp = self.exponent()
        if isinstance(exp, int):
            return base ** exp
        a, denom_level = exp
        if plain_symbol:
            # v^(a/p^m): a tower root of the bare indeterminate
            gen = UPoly.gen(self.field, self._poly_symbol(), denom_level)
            return _reduce_gen_power(gen, a)
        if base.degree > 0:
            raise ParseError("fractional exponent on a polynomial expression", pos)
        c = base.coeff(0)
        return self._const(c.power(a).pth_root(denom_level))

    def exponent(self):
        kind, text, pos = self.take()
        if kind == "num":
            return int(text)
        if kind == "op" and text == "(":
            kind, text, pos = self.take()
            if kind != "num":
                raise ParseError("expected an integer exponent numerator", pos)
            a = int(text)
            self.expect("/")
            kind, text, pos = self.take()
            if kind != "num":
                raise ParseError("expected an exponent denominator", pos)
            denom = int(text)
            self.expect(")")
            level = 0
            p = self.field.p
            while denom > 1 and denom % p == 0:
                denom //= p
                level += 1
            if denom != 1:
                raise ParseError("exponent denominator must be a power of the characteristic", pos)
            return (a, level)
        raise ParseError("malformed exponent", pos)

    def atom(self) -> tuple[UPoly, bool]:
        """Returns (value, is_the_bare_indeterminate)."""
        kind, text, pos = self.take()
        if kind == "num":
            return self._const(self.field.from_int(int(text))), False
        if kind == "ident":
            if self.symbol is not None and text == self.symbol:
                return UPoly.gen(self.field, self.symbol, 0), True
            if text in self.field.config.vars:
                return self._const(self.field.variable(text)), False
            if text == GENERATOR_SYMBOL and self.field.config.d > 1:
                gen = self.field.base.from_scalar(self.field.base.fq.generator())
                return self._const(self.field.from_rational(gen)), False
            raise UnknownVariable(f"unknown variable {text!r}", pos)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value, False
        raise ParseError(f"unexpected token {text!r}" if text else "unexpected end of input", pos)


def _reduce_gen_power(gen: UPoly, a: int) -> UPoly:
    """t^(a/p^m) as a polynomial at its minimal level."""
    powed = gen ** a
    m = powed.min_level
    if m == powed.level:
        return powed
    p = gen.field.p
    return powed.deflate(p ** (powed.level - m), level=m)


def parse_tower_element(text: str, field: PerfectClosureField) -> TowerElement:
    """Evaluate to an element of F_q(vars)_per; every identifier must be a variable."""
    poly = _Parser(text, field, None).parse()
    if poly.degree > 0:
        raise ParseError("expected an element, found a polynomial")
    return poly.coeff(0)


def parse_rational(text: str, field: RationalField) -> RationalFunction:
    """Evaluate to an element of F_q(vars); tower roots are rejected."""
    element = parse_tower_element(text, PerfectClosureField(field.config))
    if element.level != 0:
        raise ParseError("element does not lie in the rational function field")
    return element.value


def parse_poly(text: str, coeff_field, symbol: str = "t") -> UPoly:
    """Parse a univariate polynomial in `symbol` over the given coefficient field.

    The coefficient field may be a RationalField or a PerfectClosureField;
    the returned polynomial sits at the minimal tower level consistent with
    the fractional exponents appearing in the input.
    """
    if getattr(coeff_field, "is_perfect_closure", False):
        tower_field = coeff_field
    else:
        tower_field = PerfectClosureField(coeff_field.config)
    poly = _Parser(text, tower_field, symbol).parse()
    if getattr(coeff_field, "is_perfect_closure", False):
        return poly
    demoted = []
    for c in poly.coeffs:
        if c.level != 0:
            raise ParseError("coefficients must lie in the rational function field")
        demoted.append(c.value)
    return UPoly(coeff_field, demoted, symbol, poly.level)
