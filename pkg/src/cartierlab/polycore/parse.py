"""Recursive-descent parser for the shared polynomial expression grammar.

    expr    := '-'? term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' exponent)?
    base    := identifier | rational | '(' expr ')'
    rational:= integer ('/' positive-integer)?

Whitespace is insignificant; implicit multiplication is rejected. Division
appears only inside rational literals. Exponents are nonnegative integers
except where an evaluator explicitly permits negative ones (Laurent input).
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .rings import Polynomial, PolyRing


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
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
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    tokens.append(_Token("end", "", n))
    return tokens


class Evaluator:
    """What the parser needs to build values during the descent."""

    allow_negative_exponents = False

    def from_fraction(self, q: Fraction, text: str, pos: int):
        raise NotImplementedError

    def variable(self, name: str, text: str, pos: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def pow(self, a, n: int, text: str, pos: int):
        raise NotImplementedError


class _Parser:
    def __init__(self, text: str, evaluator: Evaluator):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.ev = evaluator

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", self.text, tok.pos)
        return self.advance()

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind == "/":
                raise ParseError(
                    "division is allowed only between integer literals",
                    self.text,
                    tok.pos,
                )
            raise ParseError(f"unexpected {tok.text!r}", self.text, tok.pos)
        return value

    def expr(self):
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        value = self.term()
        if negate:
            value = self.ev.neg(value)
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            value = self.ev.add(value, rhs) if op.kind == "+" else self.ev.sub(value, rhs)
        return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                value = self.ev.mul(value, self.factor())
            elif tok.kind == "/":
                raise ParseError(
                    "division is allowed only between integer literals",
                    self.text,
                    tok.pos,
                )
            elif tok.kind in ("ident", "int", "("):
                raise ParseError(
                    "implicit multiplication is not allowed", self.text, tok.pos
                )
            else:
                return value

    def factor(self):
        value, _ = self.base()
        if self.peek().kind == "^":
            self.advance()
            sign = 1
            if self.peek().kind == "-" and self.ev.allow_negative_exponents:
                self.advance()
                sign = -1
            tok = self.expect("int")
            value = self.ev.pow(value, sign * int(tok.text), self.text, tok.pos)
        return value

    def base(self):
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value, False
        if tok.kind == "int":
            self.advance()
            numerator = int(tok.text)
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("int")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", self.text, den.pos)
                return (
                    self.ev.from_fraction(
                        Fraction(numerator, int(den.text)), self.text, tok.pos
                    ),
                    True,
                )
            return self.ev.from_fraction(Fraction(numerator), self.text, tok.pos), True
        if tok.kind == "ident":
            self.advance()
            return self.ev.variable(tok.text, self.text, tok.pos), False
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", self.text, tok.pos)


def parse_with_evaluator(text: str, evaluator: Evaluator):
    return _Parser(text, evaluator).parse()


class PolynomialEvaluator(Evaluator):
    def __init__(self, ring: PolyRing):
        self.ring = ring

    def from_fraction(self, q, text, pos):
        try:
            return self.ring.constant(self.ring.field.from_fraction(q))
        except ZeroDivisionError as exc:
            raise ParseError(str(exc), text, pos) from None

    def variable(self, name, text, pos):
        if name in self.ring.variables:
            return self.ring.variable(name)
        elem = self.ring.field.symbol_element(name)
        if elem is not None:
            return self.ring.constant(elem)
        raise ParseError(f"unknown variable {name!r}", text, pos)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n, text, pos):
        if n < 0:
            raise ParseError("negative exponents are not allowed here", text, pos)
        return a**n


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse an expression into the given ring.

    Identifiers resolve to ring variables first, then to coefficient-field
    symbols (extension generators, function-field variables).
    """
    return parse_with_evaluator(text, PolynomialEvaluator(ring))
