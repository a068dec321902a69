# ladderkit/parser/parser.py
"""
LL(1) recursive-descent parser.

    expr   = term { ("+" | "-") term }
    term   = unary { "*" unary }
    unary  = "-" unary | power
    power  = atom [ "^" NUMBER ]
    atom   = NUMBER | SYMBOL | "(" expr ")"

Chains of the same operator flatten into one n-ary node; a parenthesized
group stays a separate node.
"""

from __future__ import annotations

from typing import List

from ladderkit.core.errors import ExponentError, ExprSyntaxError, UnknownSymbolError
from ladderkit.parser import lexer
from ladderkit.parser.lexer import Token, tokenize
from ladderkit.parser.nodes import SYMBOL_NAMES, ExprAst, Neg, Num, Power, Prod, Sum, Sym

_ATOM_START = [lexer.NUMBER, lexer.SYMBOL, lexer.LPAREN]
_UNARY_START = _ATOM_START + [lexer.MINUS]


class Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != lexer.EOF:
            self.pos += 1
        return tok

    def _fail(self, expected: List[str]) -> ExprSyntaxError:
        tok = self.current
        return ExprSyntaxError(f"unexpected {tok.describe()}", tok.offset, expected)

    def _expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise self._fail([kind])
        return self._advance()

    # ----- grammar ---------------------------------------------------------------
    def parse(self) -> ExprAst:
        node = self.expr()
        if self.current.kind != lexer.EOF:
            raise self._fail([lexer.PLUS, lexer.MINUS, lexer.STAR, lexer.CARET, lexer.EOF])
        return node

    def expr(self) -> ExprAst:
        terms = [self.term()]
        while self.current.kind in (lexer.PLUS, lexer.MINUS):
            op = self._advance()
            operand = self.term()
            terms.append(Neg(operand) if op.kind == lexer.MINUS else operand)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> ExprAst:
        factors = [self.unary()]
        while self.current.kind == lexer.STAR:
            self._advance()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def unary(self) -> ExprAst:
        if self.current.kind == lexer.MINUS:
            self._advance()
            return Neg(self.unary())
        if self.current.kind not in _ATOM_START:
            raise self._fail(_UNARY_START)
        return self.power()

    def power(self) -> ExprAst:
        base = self.atom()
        if self.current.kind != lexer.CARET:
            return base
        self._advance()
        tok = self.current
        if tok.kind != lexer.NUMBER:
            raise ExponentError(
                f"exponent must be a non-negative integer literal, got {tok.describe()}",
                tok.offset,
                [lexer.NUMBER],
            )
        if tok.value is None or tok.value.denominator != 1:
            raise ExponentError(f"exponent must be an integer, got {tok.text}", tok.offset, [lexer.NUMBER])
        self._advance()
        return Power(base, int(tok.value))

    def atom(self) -> ExprAst:
        tok = self.current
        if tok.kind == lexer.NUMBER:
            self._advance()
            return Num(tok.value)
        if tok.kind == lexer.SYMBOL:
            if tok.text not in SYMBOL_NAMES:
                raise UnknownSymbolError(tok.text, tok.offset, SYMBOL_NAMES)
            self._advance()
            return Sym(tok.text)
        if tok.kind == lexer.LPAREN:
            self._advance()
            inner = self.expr()
            self._expect(lexer.RPAREN)
            return inner
        raise self._fail(_ATOM_START)


def parse(src: str) -> ExprAst:
    """Text -> ExprAst; raises ExprSyntaxError (offset + expected set) on bad input."""
    return Parser(tokenize(src)).parse()
