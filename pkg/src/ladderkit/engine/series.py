# ladderkit/engine/series.py
"""
Truncated λ-series of operators. Index m holds the λ^m coefficient; every
operation truncates hard at the smaller of the operand orders.
"""

from __future__ import annotations

from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence

from ladderkit.algebra.operator_poly import OperatorPoly, commutator, dagger


class OperatorSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[OperatorPoly]):
        if not coeffs:
            raise ValueError("a series needs at least the zeroth-order coefficient")
        self._coeffs = tuple(coeffs)

    # ----- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, poly: OperatorPoly, order: int) -> "OperatorSeries":
        return cls([poly] + [OperatorPoly.zero()] * order)

    @classmethod
    def zero(cls, order: int) -> "OperatorSeries":
        return cls([OperatorPoly.zero()] * (order + 1))

    @classmethod
    def identity(cls, order: int) -> "OperatorSeries":
        return cls.constant(OperatorPoly.identity(), order)

    # ----- access -------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __getitem__(self, m: int) -> OperatorPoly:
        if 0 <= m < len(self._coeffs):
            return self._coeffs[m]
        return OperatorPoly.zero()

    def __iter__(self) -> Iterator[OperatorPoly]:
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def truncate(self, order: int) -> "OperatorSeries":
        if order >= self.order:
            return self
        return OperatorSeries(self._coeffs[: order + 1])

    def shifted(self, by: int, order: int) -> "OperatorSeries":
        """λ^by · self, truncated at `order`."""
        coeffs = [OperatorPoly.zero()] * by + list(self._coeffs)
        coeffs = coeffs[: order + 1]
        coeffs += [OperatorPoly.zero()] * (order + 1 - len(coeffs))
        return OperatorSeries(coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self._coeffs)

    def first_nonzero_order(self, start: int = 0) -> Optional[int]:
        for m in range(start, len(self._coeffs)):
            if not self._coeffs[m].is_zero:
                return m
        return None

    # ----- arithmetic -----------------------------------------------------------
    def _pair(self, other: "OperatorSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: Any) -> "OperatorSeries":
        if isinstance(other, OperatorPoly):
            other = OperatorSeries.constant(other, self.order)
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        order = self._pair(other)
        return OperatorSeries([self[m] + other[m] for m in range(order + 1)])

    __radd__ = __add__

    def __neg__(self) -> "OperatorSeries":
        return OperatorSeries([-c for c in self._coeffs])

    def __sub__(self, other: Any) -> "OperatorSeries":
        if isinstance(other, OperatorPoly):
            other = OperatorSeries.constant(other, self.order)
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Any) -> "OperatorSeries":
        if isinstance(other, OperatorSeries):
            order = self._pair(other)
            out: List[OperatorPoly] = []
            for m in range(order + 1):
                total = OperatorPoly.zero()
                for i in range(m + 1):
                    left, right = self[i], other[m - i]
                    if left.is_zero or right.is_zero:
                        continue
                    total = total + left * right
                out.append(total)
            return OperatorSeries(out)
        if isinstance(other, OperatorPoly):
            return OperatorSeries([c * other for c in self._coeffs])
        try:
            return OperatorSeries([c.scale(other) for c in self._coeffs])
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: Any) -> "OperatorSeries":
        if isinstance(other, OperatorPoly):
            return OperatorSeries([other * c for c in self._coeffs])
        try:
            return OperatorSeries([c.scale(other) for c in self._coeffs])
        except TypeError:
            return NotImplemented

    def dagger(self) -> "OperatorSeries":
        return OperatorSeries([dagger(c) for c in self._coeffs])

    def commutator(self, other: "OperatorSeries") -> "OperatorSeries":
        order = self._pair(other)
        out = []
        for m in range(order + 1):
            total = OperatorPoly.zero()
            for i in range(m + 1):
                total = total + commutator(self[i], other[m - i])
            out.append(total)
        return OperatorSeries(out)

    def natural(self) -> "OperatorSeries":
        return OperatorSeries([c.natural() for c in self._coeffs])

    # ----- composition ----------------------------------------------------------
    @staticmethod
    def substitute(poly: OperatorPoly, a_series: "OperatorSeries", adag_series: "OperatorSeries") -> "OperatorSeries":
        """Σ c·(adag)^j (a)^k for the terms c·a†^j a^k of `poly`, truncated."""
        order = min(a_series.order, adag_series.order)
        a_powers: Dict[int, OperatorSeries] = {0: OperatorSeries.identity(order)}
        d_powers: Dict[int, OperatorSeries] = {0: OperatorSeries.identity(order)}

        def power(cache: Dict[int, OperatorSeries], base: OperatorSeries, k: int) -> OperatorSeries:
            if k not in cache:
                cache[k] = power(cache, base, k - 1) * base
            return cache[k]

        total = OperatorSeries.zero(order)
        for (j, k), c in poly.items():
            term = power(d_powers, adag_series, j) * power(a_powers, a_series, k)
            total = total + term * c
        return total

    # ----- identity / IO ------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def to_dict(self) -> List[Dict[str, Any]]:
        return [c.to_dict() for c in self._coeffs]

    @staticmethod
    def from_dict(data: Sequence[Mapping[str, Any]]) -> "OperatorSeries":
        return OperatorSeries([OperatorPoly.from_dict(item) for item in data])

    def __repr__(self) -> str:
        return "OperatorSeries(" + ", ".join(f"λ^{m}: {c}" for m, c in enumerate(self._coeffs)) + ")"
