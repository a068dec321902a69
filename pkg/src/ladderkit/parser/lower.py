# ladderkit/parser/lower.py
"""ExprAst -> OperatorPoly, with q and p replaced by their ladder expansions."""

from __future__ import annotations

from typing import Callable, Dict

from ladderkit.algebra.operator_poly import OperatorPoly
from ladderkit.algebra.scalar import HBAR, MASS, OMEGA, Scalar
from ladderkit.core.errors import UnknownSymbolError
from ladderkit.parser.nodes import ExprAst, Neg, Num, Power, Prod, Sum, Sym

SYMBOLS: Dict[str, Callable[[], OperatorPoly]] = {
    "q": OperatorPoly.position,
    "p": OperatorPoly.momentum,
    "a": OperatorPoly.annihilator,
    "ad": OperatorPoly.creator,
    "N": OperatorPoly.number,
    "i": lambda: OperatorPoly.scalar(Scalar.i()),
    "sqrt2": lambda: OperatorPoly.scalar(Scalar.sqrt2()),
    "hbar": lambda: OperatorPoly.scalar(Scalar.unit(HBAR)),
    "m": lambda: OperatorPoly.scalar(Scalar.unit(MASS)),
    "omega": lambda: OperatorPoly.scalar(Scalar.unit(OMEGA)),
}


def lower(node: ExprAst) -> OperatorPoly:
    if isinstance(node, Num):
        return OperatorPoly.scalar(node.value)
    if isinstance(node, Sym):
        factory = SYMBOLS.get(node.name)
        if factory is None:
            raise UnknownSymbolError(node.name, -1, SYMBOLS)
        return factory()
    if isinstance(node, Neg):
        return -lower(node.operand)
    if isinstance(node, Sum):
        total = OperatorPoly.zero()
        for term in node.terms:
            total = total + lower(term)
        return total
    if isinstance(node, Prod):
        product = OperatorPoly.identity()
        for factor in node.factors:
            product = product * lower(factor)
        return product
    if isinstance(node, Power):
        return lower(node.base) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")
