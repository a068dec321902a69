# ladderkit/parser/lexer.py
"""Tokenizer for operator expressions. Offsets are UTF-8 byte offsets into the source."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ladderkit.core.errors import ExprSyntaxError

NUMBER = "NUMBER"
SYMBOL = "SYMBOL"
PLUS = "+"
MINUS = "-"
STAR = "*"
CARET = "^"
LPAREN = "("
RPAREN = ")"
EOF = "EOF"

_PUNCT = {"+": PLUS, "-": MINUS, "*": STAR, "^": CARET, "(": LPAREN, ")": RPAREN}
_NUMBER_RE = re.compile(r"(\d+)(?:/(\d+))?")
_DECIMAL_RE = re.compile(r"\d*\.\d+|\d+\.\d*|\d+[eE][+-]?\d+")
_SYMBOL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int
    value: Optional[Fraction] = None

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of input"
        return repr(self.text)


def tokenize(src: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    byte = 0

    def advance(text: str) -> None:
        nonlocal pos, byte
        pos += len(text)
        byte += len(text.encode("utf-8"))

    while pos < len(src):
        ch = src[pos]
        if ch.isspace():
            advance(ch)
            continue

        decimal = _DECIMAL_RE.match(src, pos)
        if decimal:
            raise ExprSyntaxError(
                f"decimal literal {decimal.group(0)!r} is not allowed; write a rational such as 1/2",
                byte,
                [NUMBER],
            )

        number = _NUMBER_RE.match(src, pos)
        if number:
            num, den = number.group(1), number.group(2)
            if den is not None and int(den) == 0:
                raise ExprSyntaxError("zero denominator in rational literal", byte, [NUMBER])
            value = Fraction(int(num), int(den) if den is not None else 1)
            tokens.append(Token(NUMBER, number.group(0), byte, value))
            advance(number.group(0))
            continue

        symbol = _SYMBOL_RE.match(src, pos)
        if symbol:
            tokens.append(Token(SYMBOL, symbol.group(0), byte))
            advance(symbol.group(0))
            continue

        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, byte))
            advance(ch)
            continue

        raise ExprSyntaxError(f"unexpected character {ch!r}", byte)

    tokens.append(Token(EOF, "", byte))
    return tokens
