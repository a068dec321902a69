# ladderkit/parser/emit.py
"""Canonical text for an ExprAst; parse(emit(t)) == t."""

from __future__ import annotations

from ladderkit.parser.nodes import ExprAst, Neg, Num, Power, Prod, Sum, Sym


def _num(value) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _atomic(node: ExprAst) -> bool:
    return isinstance(node, Sym) or (isinstance(node, Num) and node.value.denominator == 1)


def emit(node: ExprAst) -> str:
    if isinstance(node, Num):
        return _num(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Power):
        base = emit(node.base)
        if not _atomic(node.base):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Neg):
        inner = emit(node.operand)
        if isinstance(node.operand, (Sum, Prod, Neg)):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Prod):
        parts = []
        for factor in node.factors:
            text = emit(factor)
            if isinstance(factor, (Sum, Prod)):
                text = f"({text})"
            parts.append(text)
        return "*".join(parts)
    if isinstance(node, Sum):
        out = ""
        for index, term in enumerate(node.terms):
            if index and isinstance(term, Neg):
                text = emit(term.operand)
                if isinstance(term.operand, Sum):
                    text = f"({text})"
                out += f" - {text}"
                continue
            text = emit(term)
            if isinstance(term, Sum):
                text = f"({text})"
            out += f" + {text}" if index else text
        return out
    raise TypeError(f"not an expression node: {node!r}")
