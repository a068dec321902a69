# ladderkit/core/errors.py
"""
Domain errors. Everything derives from ValueError so callers that only
know the builtin keep working; `to_dict()` feeds --json-diagnostics.
"""

from __future__ import annotations

from typing import Any, Dict, Iterable, Optional


class LadderKitError(ValueError):
    """Base class for all LadderKit errors."""

    kind = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind, "message": self.message}
        data.update(self.details)
        return data


# ----- expression front end -------------------------------------------------
class ExprSyntaxError(LadderKitError):
    kind = "syntax"

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = sorted(set(expected))
        super().__init__(message, offset=offset, expected=self.expected)

    def __str__(self) -> str:
        text = f"{self.message} at offset {self.offset}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        return text


class UnknownSymbolError(ExprSyntaxError):
    kind = "unknown_symbol"

    def __init__(self, symbol: str, offset: int, known: Iterable[str] = ()):
        self.symbol = symbol
        super().__init__(f"unknown symbol {symbol!r}", offset, known)
        self.details["symbol"] = symbol


class ExponentError(ExprSyntaxError):
    kind = "exponent"


# ----- algebra ----------------------------------------------------------------
class UnitMismatchError(LadderKitError):
    kind = "units"


class HermiticityError(LadderKitError):
    """Raised when an operator that must be self-adjoint is not; carries x - dagger(x)."""

    kind = "hermiticity"

    def __init__(self, message: str, residue: Any = None):
        self.residue = residue
        residue_json: Optional[Dict[str, Any]] = None
        if residue is not None and hasattr(residue, "to_dict"):
            residue_json = residue.to_dict()
        super().__init__(message, residue=residue_json)


class SeriesError(LadderKitError):
    kind = "series"


class OrderCapError(LadderKitError):
    kind = "order_cap"


# ----- numeric oracle ----------------------------------------------------------
class CutoffMarginError(LadderKitError):
    kind = "cutoff_margin"


class NonHermitianMatrixError(LadderKitError):
    kind = "non_hermitian_matrix"


class VerificationError(LadderKitError):
    kind = "verification"
