from ladderkit.algebra.operator_poly import OperatorPoly, require_hermitian

from .emit import emit
from .lexer import tokenize
from .lower import SYMBOLS, lower
from .nodes import SYMBOL_NAMES, ExprAst, Neg, Num, Power, Prod, Sum, Sym
from .parser import parse


def parse_operator(src: str) -> OperatorPoly:
    """parse + lower: the canonical normal-ordered operator for `src`."""
    return lower(parse(src))


__all__ = [
    "ExprAst",
    "Neg",
    "Num",
    "Power",
    "Prod",
    "Sum",
    "Sym",
    "SYMBOLS",
    "SYMBOL_NAMES",
    "emit",
    "lower",
    "parse",
    "parse_operator",
    "require_hermitian",
    "tokenize",
]
