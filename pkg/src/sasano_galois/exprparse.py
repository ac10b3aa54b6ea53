"""Tiny expression parser producing exact Puiseux polynomials.

The frozen reference matrices ship as human-readable strings such as
``"112/5*al^(5/4)*tau^(-2)"``.  This module parses them into
:class:`~sasano_galois.puiseux.PuiseuxPoly` values over an algebraic
tower, resolving named constants through a caller-supplied symbol table.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-')* power
    power  := atom ('^' exponent)?
    atom   := INT | NAME | '(' expr ')'
    exponent := INT | '-' INT | '(' ('+'|'-')? INT ('/' INT)? ')'

Division and negative powers apply only to single-term operands (constants
and monomials), which keeps every operation exact; the reference data never
needs more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algnum import AlgNum, ChainConstants, TowerError, TowerSpec
from .puiseux import PuiseuxPoly

SymbolResolver = Callable[[str, Fraction], AlgNum]


class ExprError(ValueError):
    """Raised for malformed expression text or unresolvable symbols."""


def chain_symbols(constants: ChainConstants) -> SymbolResolver:
    """Symbol resolver for the constants a reduction run carries.

    Known names: ``al`` (the time-rescaling constant, quarter powers
    allowed), ``i``, ``sqrt5``, ``rm`` = sqrt(6*sqrt5 - 10), ``rp`` =
    sqrt(6*sqrt5 + 10), and ``lam1`` .. ``lam4`` (leading eigenvalues).
    """
    plain = {
        "i": constants.imag_unit,
        "sqrt5": constants.sqrt5,
        "rm": constants.sqrt_minus,
        "rp": constants.sqrt_plus,
        "lam1": constants.eigenvalues[0],
        "lam2": constants.eigenvalues[1],
        "lam3": constants.eigenvalues[2],
        "lam4": constants.eigenvalues[3],
    }

    def resolve(name: str, exp: Fraction) -> AlgNum:
        if name == "al":
            scaled = exp * 4
            if scaled.denominator != 1:
                raise ExprError(f"exponent {exp} of 'al' is not a quarter integer")
            return constants.alpha_quarter_root ** int(scaled)
        value = plain.get(name)
        if value is None:
            raise ExprError(f"unknown symbol {name!r}")
        if exp.denominator != 1:
            raise ExprError(f"symbol {name!r} does not support exponent {exp}")
        return value ** int(exp)

    return resolve


@dataclass(frozen=True)
class _Token:
    kind: str  # int | name | op | end
    text: str


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("name", text[i:j]))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append(_Token("op", ch))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r} in {text!r}")
    toks.append(_Token("end", ""))
    return toks


class _Parser:
    def __init__(self, text: str, tower: TowerSpec, var: str, resolve: SymbolResolver | None):
        self.text = text
        self.tower = tower
        self.var = var
        self.resolve = resolve
        self.toks = _tokenize(text)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, ch: str) -> None:
        t = self.take()
        if t.kind != "op" or t.text != ch:
            raise ExprError(f"expected {ch!r} near token {t.text!r} in {self.text!r}")

    # -- grammar -------------------------------------------------------------

    def parse(self) -> PuiseuxPoly:
        value = self.expr()
        if self.peek().kind != "end":
            raise ExprError(f"trailing input at {self.peek().text!r} in {self.text!r}")
        return value

    def expr(self) -> PuiseuxPoly:
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> PuiseuxPoly:
        value = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            rhs = self.factor()
            value = value * rhs if op == "*" else self._divide(value, rhs)
        return value

    def factor(self) -> PuiseuxPoly:
        sign = 1
        while self.peek().kind == "op" and self.peek().text in "+-":
            if self.take().text == "-":
                sign = -sign
        value = self.power()
        return value if sign == 1 else -value

    def power(self) -> PuiseuxPoly:
        base = self.atom()
        exp = Fraction(1)
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            exp = self.exponent()
        kind, payload = base
        if kind == "var":
            return PuiseuxPoly.monomial(self.tower, 1, exp)
        if kind == "sym":
            if self.resolve is None:
                raise ExprError(f"no symbol table supplied, cannot resolve {payload!r}")
            return PuiseuxPoly.const(self.tower, self.resolve(payload, exp))
        return self._poly_power(payload, exp)

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return "poly", PuiseuxPoly.const(self.tower, Fraction(t.text))
        if t.kind == "name":
            if t.text == self.var:
                return "var", None
            return "sym", t.text
        if t.kind == "op" and t.text == "(":
            value = self.expr()
            self.expect_op(")")
            return "poly", value
        raise ExprError(f"unexpected token {t.text!r} in {self.text!r}")

    def exponent(self) -> Fraction:
        t = self.peek()
        if t.kind == "int":
            self.take()
            return Fraction(t.text)
        if t.kind == "op" and t.text == "-":
            self.take()
            num = self.take()
            if num.kind != "int":
                raise ExprError(f"malformed exponent in {self.text!r}")
            return -Fraction(num.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().text in "+-":
                if self.take().text == "-":
                    sign = -1
            num = self.take()
            if num.kind != "int":
                raise ExprError(f"malformed exponent in {self.text!r}")
            value = Fraction(num.text)
            if self.peek().kind == "op" and self.peek().text == "/":
                self.take()
                den = self.take()
                if den.kind != "int":
                    raise ExprError(f"malformed exponent in {self.text!r}")
                value = value / Fraction(den.text)
            self.expect_op(")")
            return sign * value
        raise ExprError(f"malformed exponent in {self.text!r}")

    # -- exact helpers -------------------------------------------------------

    def _divide(self, num: PuiseuxPoly, den: PuiseuxPoly) -> PuiseuxPoly:
        inv = self._invert(den)
        return num * inv

    def _invert(self, p: PuiseuxPoly) -> PuiseuxPoly:
        if p.is_zero():
            raise ExprError(f"division by zero in {self.text!r}")
        if p.term_count() != 1:
            raise ExprError(
                f"can only divide by single-term values, got {p.render()!r} in {self.text!r}"
            )
        ((k, c),) = p.terms
        return PuiseuxPoly.from_terms(self.tower, p.ram, [(-k, c.inverse())])

    def _poly_power(self, p: PuiseuxPoly, exp: Fraction) -> PuiseuxPoly:
        if exp.denominator != 1:
            raise ExprError(f"fractional power of a compound expression in {self.text!r}")
        e = int(exp)
        if e < 0:
            return self._poly_power(self._invert(p), Fraction(-e))
        out = PuiseuxPoly.const(self.tower, 1)
        for _ in range(e):
            out = out * p
        return out


def parse_puiseux(
    text: str,
    tower: TowerSpec,
    var: str = "t",
    symbols: SymbolResolver | None = None,
) -> PuiseuxPoly:
    """Parse ``text`` into an exact Puiseux polynomial in ``var``."""
    try:
        return _Parser(text, tower, var, symbols).parse()
    except (TowerError, ZeroDivisionError) as exc:
        raise ExprError(f"cannot evaluate {text!r}: {exc}") from exc


def parse_matrix(
    rows: list[list[str]],
    tower: TowerSpec,
    var: str = "t",
    symbols: SymbolResolver | None = None,
):
    """Parse a nested list of entry strings into a tuple-of-tuples matrix."""
    return tuple(
        tuple(parse_puiseux(entry, tower, var, symbols) for entry in row) for row in rows
    )
