# ladderkit/algebra/diagonal.py
"""
Polynomials in the level index n (equivalently in N = a†a).

Energy corrections, norms and expectation values are all DiagonalPolys.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, prod, sqrt
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from ladderkit.algebra.operator_poly import OperatorPoly
from ladderkit.algebra.scalar import ScalarSum


@lru_cache(maxsize=None)
def stirling2(p: int, k: int) -> int:
    if p == k:
        return 1
    if k == 0 or k > p:
        return 0
    return k * stirling2(p - 1, k) + stirling2(p - 1, k - 1)


def falling_factorial(x: int, k: int) -> int:
    """x(x−1)…(x−k+1); zero once a factor hits zero."""
    return prod(x - i for i in range(k)) if k > 0 else 1


def rising_factorial(x: int, k: int) -> int:
    """x(x+1)…(x+k−1)"""
    return prod(x + i for i in range(k)) if k > 0 else 1


class DiagonalPoly:
    """Σ_p c_p n^p with ScalarSum coefficients, stored by ascending power."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        values = [ScalarSum.of(c) for c in coeffs]
        while values and values[-1].is_zero:
            values.pop()
        self._coeffs: Tuple[ScalarSum, ...] = tuple(values)

    # ----- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "DiagonalPoly":
        return cls()

    @classmethod
    def constant(cls, c: Any) -> "DiagonalPoly":
        return cls([c])

    @classmethod
    def n(cls) -> "DiagonalPoly":
        return cls([0, 1])

    @classmethod
    def falling(cls, k: int, offset: int = 0) -> "DiagonalPoly":
        """(n+offset)(n+offset−1)…(n+offset−k+1)"""
        result = cls.constant(1)
        for i in range(k):
            result = result * cls([offset - i, 1])
        return result

    @classmethod
    def rising(cls, k: int, offset: int = 1) -> "DiagonalPoly":
        """(n+offset)(n+offset+1)…(n+offset+k−1)"""
        result = cls.constant(1)
        for i in range(k):
            result = result * cls([offset + i, 1])
        return result

    # ----- access -------------------------------------------------------------
    @property
    def coeffs(self) -> Tuple[ScalarSum, ...]:
        return self._coeffs

    def coefficient(self, power: int) -> ScalarSum:
        return self._coeffs[power] if power < len(self._coeffs) else ScalarSum.zero()

    @property
    def degree(self) -> int:
        return max(len(self._coeffs) - 1, 0)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self._coeffs)

    # ----- arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other: Any) -> "DiagonalPoly":
        return other if isinstance(other, DiagonalPoly) else DiagonalPoly.constant(other)

    def __add__(self, other: Any) -> "DiagonalPoly":
        other = self._coerce(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return DiagonalPoly(self.coefficient(i) + other.coefficient(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "DiagonalPoly":
        return DiagonalPoly(-c for c in self._coeffs)

    def __sub__(self, other: Any) -> "DiagonalPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "DiagonalPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "DiagonalPoly":
        if not isinstance(other, DiagonalPoly):
            factor = ScalarSum.of(other)
            return DiagonalPoly(c * factor for c in self._coeffs)
        if self.is_zero or other.is_zero:
            return DiagonalPoly()
        out = [ScalarSum.zero()] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, x in enumerate(self._coeffs):
            for j, y in enumerate(other._coeffs):
                out[i + j] = out[i + j] + x * y
        return DiagonalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "DiagonalPoly":
        return DiagonalPoly(c / other for c in self._coeffs)

    def shift(self, k: int) -> "DiagonalPoly":
        """p(n + k)"""
        if k == 0 or self.is_zero:
            return self
        out = [ScalarSum.zero()] * len(self._coeffs)
        for power, c in enumerate(self._coeffs):
            for i in range(power + 1):
                weight = comb(power, i) * k ** (power - i)
                if weight:
                    out[i] = out[i] + c * weight
        return DiagonalPoly(out)

    def conj(self) -> "DiagonalPoly":
        return DiagonalPoly(c.conj() for c in self._coeffs)

    def natural(self) -> "DiagonalPoly":
        return DiagonalPoly(c.natural() for c in self._coeffs)

    # ----- evaluation -----------------------------------------------------------
    def evaluate(self, n: int) -> ScalarSum:
        total = ScalarSum.zero()
        for power, c in enumerate(self._coeffs):
            total = total + c * (Fraction(n) ** power)
        return total

    def evaluate_complex(self, n: float, hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0) -> complex:
        return sum((c.to_complex(hbar, mass, omega) * n ** p for p, c in enumerate(self._coeffs)), 0j)

    def to_operator(self) -> OperatorPoly:
        """p(N) in normal order: N^p = Σ_k S(p,k) a†^k a^k."""
        terms: Dict[Tuple[int, int], ScalarSum] = {}
        for power, c in enumerate(self._coeffs):
            for k in range(power + 1):
                s = stirling2(power, k)
                if s:
                    terms[(k, k)] = terms.get((k, k), ScalarSum.zero()) + c * s
        return OperatorPoly(terms)

    # ----- identity / IO ------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DiagonalPoly.constant(other)
        if not isinstance(other, DiagonalPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def to_dict(self) -> Dict[str, Any]:
        return {"coeffs": [c.to_dict() for c in self._coeffs]}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "DiagonalPoly":
        return DiagonalPoly(ScalarSum.from_dict(c) for c in data.get("coeffs", []))

    def __repr__(self) -> str:
        return f"DiagonalPoly({self})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces: List[str] = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c.is_zero:
                continue
            coeff = str(c)
            if (" + " in coeff or " - " in coeff) and not coeff.startswith("("):
                coeff = f"({coeff})"
            var = "" if power == 0 else ("n" if power == 1 else f"n^{power}")
            if not var:
                body = coeff
            elif coeff == "1":
                body = var
            elif coeff == "-1":
                body = f"-{var}"
            else:
                body = f"{coeff}·{var}"
            if pieces and body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            elif pieces:
                pieces.append(f" + {body}")
            else:
                pieces.append(body)
        return "".join(pieces)


def diagonal_as_npoly(x: OperatorPoly) -> DiagonalPoly:
    """Σ_k c_kk a†^k a^k -> Σ_k c_kk n(n−1)…(n−k+1); off-diagonal terms are ignored."""
    total = DiagonalPoly()
    for (j, k), c in x.items():
        if j == k:
            total = total + DiagonalPoly.falling(k) * c
    return total


# ---------------------------------------------------------------------------
# Level amplitudes
# ---------------------------------------------------------------------------
def amplitude_prefactor(n: int, e: int) -> float:
    """√(n(n−1)…(n+e+1)) for e < 0, √((n+1)…(n+e)) for e ≥ 0."""
    if e < 0:
        return sqrt(max(falling_factorial(n, -e), 0))
    return sqrt(rising_factorial(n + 1, e))


def level_amplitudes(x: OperatorPoly) -> Dict[int, DiagonalPoly]:
    """
    x|n⟩ = Σ_e amplitude_prefactor(n, e)·P_e(n)|n+e⟩.

    For a term a†^j a^k with e = j − k:
      e < 0:  a†^j a^k|n⟩ = √(n^(|e|, falling))·(n−|e|)^(j, falling)|n+e⟩
      e ≥ 0:  a†^j a^k|n⟩ = √((n+1)^(e, rising))·n^(k, falling)|n+e⟩
    """
    out: Dict[int, DiagonalPoly] = {}
    for (j, k), c in x.items():
        e = j - k
        poly = DiagonalPoly.falling(j, offset=e) if e < 0 else DiagonalPoly.falling(k)
        out[e] = out.get(e, DiagonalPoly()) + poly * c
    return {e: p for e, p in sorted(out.items()) if not p.is_zero}


def amplitude_value(poly: DiagonalPoly, n: int, e: int, units: Sequence[float] = (1.0, 1.0, 1.0)) -> complex:
    return amplitude_prefactor(n, e) * poly.evaluate_complex(n, *units)
