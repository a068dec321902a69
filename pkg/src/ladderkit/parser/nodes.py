# ladderkit/parser/nodes.py
"""Expression tree. Sum and Prod are n-ary; subtraction is Sum(x, Neg(y))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Sum:
    terms: Tuple["ExprAst", ...]


@dataclass(frozen=True)
class Prod:
    factors: Tuple["ExprAst", ...]


@dataclass(frozen=True)
class Power:
    base: "ExprAst"
    exponent: int


ExprAst = Union[Num, Sym, Neg, Sum, Prod, Power]

# every identifier the language knows; lower() gives each its operator
SYMBOL_NAMES = ("q", "p", "a", "ad", "N", "i", "sqrt2", "hbar", "m", "omega")
