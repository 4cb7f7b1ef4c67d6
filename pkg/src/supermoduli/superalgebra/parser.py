"""Text grammar for SuperPoly fixtures.

    fixture := header* expr
    header  := ('odd' | 'even' | 'laurent') ':' ident*      (one per line)
    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := [coef ['*']] factor (['*'] factor)* | coef
    factor  := ident ['^' ['('] ['-'] int [')']]
    coef    := int ['/' int]

Identifiers not declared odd are even. Without a ``laurent:`` header every even
identifier may carry negative exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from supermoduli.errors import ParseError
from supermoduli.logging import get_logger
from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly
from supermoduli.superalgebra.ring import RingContext

logger = get_logger(__name__)

_HEADER = re.compile(r"^[ \t]*(odd|even|laurent)[ \t]*:(.*)$", re.MULTILINE)
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


@dataclass
class Fixture:
    """Parsed header declarations plus the expression body, with offsets preserved."""

    odd: list[str]
    even: list[str]
    laurent: list[str] | None
    body: str


def split_headers(text: str) -> Fixture:
    """Separate header lines from the expression, blanking headers so positions stay valid."""
    odd: list[str] = []
    even: list[str] = []
    laurent: list[str] | None = None
    body = list(text)
    for match in _HEADER.finditer(text):
        kind, names = match.group(1), match.group(2).split()
        if kind == "odd":
            odd.extend(names)
        elif kind == "even":
            even.extend(names)
        else:
            laurent = [*(laurent or []), *names]
        for i in range(match.start(), match.end()):
            body[i] = " "
    return Fixture(odd=odd, even=even, laurent=laurent, body="".join(body))


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup or "op"
        start = match.start(kind)
        tokens.append(_Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: RingContext | None, fixture: Fixture) -> None:
        self.tokens = _tokenize(text)
        self.index = 0
        self.ctx = ctx
        self.fixture = fixture
        # raw terms: (coefficient, [(name, exponent)])
        self.terms: list[tuple[object, list[tuple[str, int, int]]]] = []

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def expect_int(self) -> int:
        negative = False
        if self.current.text == "-":
            self.advance()
            negative = True
        token = self.current
        if token.kind != "num" or "/" in token.text:
            raise ParseError("expected an integer exponent", token.pos)
        self.advance()
        return -int(token.text) if negative else int(token.text)

    def parse(self) -> None:
        sign = 1
        if self.current.text in "+-" and self.current.kind == "op":
            sign = -1 if self.advance().text == "-" else 1
        self.parse_term(sign)
        while self.current.kind != "end":
            token = self.current
            if token.text not in ("+", "-"):
                raise ParseError(f"expected '+' or '-', got {token.text!r}", token.pos)
            self.advance()
            self.parse_term(-1 if token.text == "-" else 1)

    def parse_term(self, sign: int) -> None:
        from fractions import Fraction

        coeff = Fraction(sign)
        factors: list[tuple[str, int, int]] = []
        token = self.current
        if token.kind == "num":
            self.advance()
            coeff *= Fraction(token.text)
            if self.current.text == "*":
                self.advance()
                if self.current.kind != "ident":
                    raise ParseError("expected a factor after '*'", self.current.pos)
        elif token.kind != "ident":
            raise ParseError(f"expected a term, got {token.text or 'end of input'!r}", token.pos)
        while self.current.kind == "ident":
            ident = self.advance()
            exponent = 1
            if self.current.text == "^":
                self.advance()
                if self.current.text == "(":
                    self.advance()
                    exponent = self.expect_int()
                    if self.current.text != ")":
                        raise ParseError("expected ')'", self.current.pos)
                    self.advance()
                else:
                    exponent = self.expect_int()
            factors.append((ident.text, exponent, ident.pos))
            if self.current.text == "*":
                self.advance()
                if self.current.kind != "ident":
                    raise ParseError("expected a factor after '*'", self.current.pos)
        self.terms.append((coeff, factors))

    def build_context(self) -> RingContext:
        if self.ctx is not None:
            return self.ctx
        odd = list(dict.fromkeys(self.fixture.odd))
        even = list(dict.fromkeys(self.fixture.even))
        for _, factors in self.terms:
            for name, _, _ in factors:
                if name not in odd and name not in even:
                    even.append(name)
        laurent = even if self.fixture.laurent is None else self.fixture.laurent
        return RingContext(even=tuple(even), odd=tuple(odd), laurent=frozenset(laurent))

    def result(self) -> SuperPoly:
        ctx = self.build_context()
        total = ctx.zero()
        for coeff, factors in self.terms:
            exps = [0] * len(ctx.even)
            term = ctx.const(coeff)
            for name, exponent, pos in factors:
                if name in ctx.even_index:
                    if exponent < 0 and name not in ctx.laurent:
                        raise ParseError(f"negative exponent on non-Laurent generator {name!r}", pos)
                    exps[ctx.even_index[name]] += exponent
                elif name in ctx.odd_index:
                    if exponent < 0:
                        raise ParseError(f"negative exponent on odd generator {name!r}", pos)
                    term = term * (ctx.gen(name) ** exponent)
                else:
                    raise ParseError(f"unknown generator {name!r}", pos)
            # even generators are central, so they can be collected in front
            shift = SuperPoly(ctx, {SuperMonomial(tuple(exps), ()): 1})
            total = total + shift * term
        return total


def parse_poly(text: str, ctx: RingContext | None = None) -> SuperPoly:
    """Parse fixture text into a SuperPoly.

    Args:
        text: Optional header lines followed by an expression
        ctx: Ring context to parse into; built from the headers when omitted

    Returns:
        The canonical polynomial
    """
    fixture = split_headers(text)
    if ctx is not None and (fixture.odd or fixture.even or fixture.laurent):
        declared = set(fixture.odd) | set(fixture.even)
        missing = declared - set(ctx.names)
        if missing:
            raise ParseError(f"headers declare generators outside the context: {sorted(missing)}", 0)
    parser = _Parser(fixture.body, ctx, fixture)
    if parser.current.kind == "end":
        raise ParseError("empty expression", parser.current.pos)
    parser.parse()
    poly = parser.result()
    logger.debug("parsed fixture", terms=len(poly))
    return poly


def format_poly(poly: SuperPoly) -> str:
    """Canonical text form; ``parse_poly(format_poly(p), p.ctx) == p``."""
    from sympy.polys.domains import QQ

    from supermoduli.superalgebra.poly import _mono_key

    if not poly.terms:
        return "0"
    pieces: list[str] = []
    for mono in sorted(poly.terms, key=_mono_key):
        coeff = poly.terms[mono]
        factors = [name if exp == 1 else f"{name}^{exp}" for name, exp in zip(poly.ctx.even, mono.even, strict=True) if exp]
        factors += [poly.ctx.odd[i] for i in mono.odd]
        text = str(QQ.to_sympy(coeff))
        if factors:
            body = "*".join(factors)
            if coeff == 1:
                text = body
            elif coeff == -1:
                text = f"-{body}"
            else:
                text = f"{text}*{body}"
        pieces.append(text)
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out
