# ladderkit/algebra/operator_poly.py
"""
Normal-ordered boson operator polynomials.

An OperatorPoly is a finite map (j, k) -> ScalarSum standing for
Σ c_jk a†^j a^k. Zero coefficients are never stored, so map equality is
operator equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any, Dict, Iterator, List, Mapping, Tuple

from ladderkit.algebra.scalar import ScalarSum, momentum_scale, position_scale
from ladderkit.core.errors import HermiticityError

Key = Tuple[int, int]


@lru_cache(maxsize=4096)
def _reorder(k: int, j: int) -> Tuple[Tuple[int, int, int], ...]:
    """a^k a†^j = Σ_s s!·C(k,s)·C(j,s)·a†^(j−s) a^(k−s), as (j−s, k−s, weight)."""
    return tuple((j - s, k - s, factorial(s) * comb(k, s) * comb(j, s)) for s in range(min(j, k) + 1))


@dataclass(frozen=True)
class TermExcess:
    """Level shift e = j − k induced by a†^j a^k."""

    e: int

    @classmethod
    def of(cls, key: Key) -> "TermExcess":
        return cls(key[0] - key[1])

    @property
    def balanced(self) -> bool:
        return self.e == 0

    @property
    def bar_divisor(self) -> int:
        """k − j: the factor bar divides by."""
        return -self.e


class OperatorPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Any] | None = None):
        clean: Dict[Key, ScalarSum] = {}
        for key, coeff in (terms or {}).items():
            j, k = int(key[0]), int(key[1])
            if j < 0 or k < 0:
                raise ValueError(f"negative ladder power in term {key}")
            value = ScalarSum.of(coeff)
            if not value.is_zero:
                clean[(j, k)] = value
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: Dict[Key, ScalarSum]) -> "OperatorPoly":
        poly = cls.__new__(cls)
        poly._terms = {key: c for key, c in terms.items() if not c.is_zero}
        poly._hash = None
        return poly

    # ----- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "OperatorPoly":
        return cls()

    @classmethod
    def identity(cls) -> "OperatorPoly":
        return cls({(0, 0): 1})

    @classmethod
    def scalar(cls, coeff: Any) -> "OperatorPoly":
        return cls({(0, 0): coeff})

    @classmethod
    def monomial(cls, j: int, k: int, coeff: Any = 1) -> "OperatorPoly":
        return cls({(j, k): coeff})

    @classmethod
    def annihilator(cls) -> "OperatorPoly":
        return cls({(0, 1): 1})

    @classmethod
    def creator(cls) -> "OperatorPoly":
        return cls({(1, 0): 1})

    @classmethod
    def number(cls) -> "OperatorPoly":
        return cls({(1, 1): 1})

    @classmethod
    def position(cls) -> "OperatorPoly":
        """q = √(ħ/2mω)(a + a†)"""
        c = position_scale()
        return cls({(0, 1): c, (1, 0): c})

    @classmethod
    def momentum(cls) -> "OperatorPoly":
        """p = i√(ħmω/2)(a† − a)"""
        c = momentum_scale()
        return cls({(1, 0): c, (0, 1): -c})

    # ----- access -------------------------------------------------------------
    @property
    def terms(self) -> Dict[Key, ScalarSum]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Key, ScalarSum]]:
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[Tuple[Key, ScalarSum]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, j: int, k: int) -> ScalarSum:
        return self._terms.get((j, k), ScalarSum.zero())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self._terms.values())

    @property
    def degree(self) -> int:
        return max((j + k for j, k in self._terms), default=0)

    def excesses(self) -> List[int]:
        return sorted({j - k for j, k in self._terms})

    def excess_parts(self) -> Dict[int, "OperatorPoly"]:
        parts: Dict[int, Dict[Key, ScalarSum]] = {}
        for key, c in self._terms.items():
            parts.setdefault(TermExcess.of(key).e, {})[key] = c
        return {e: OperatorPoly._raw(t) for e, t in sorted(parts.items())}

    # ----- linear structure -------------------------------------------------
    def __add__(self, other: Any) -> "OperatorPoly":
        if not isinstance(other, OperatorPoly):
            try:
                other = OperatorPoly.scalar(other)
            except TypeError:
                return NotImplemented
        acc = dict(self._terms)
        for key, c in other._terms.items():
            prev = acc.get(key)
            acc[key] = c if prev is None else prev + c
        return OperatorPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "OperatorPoly":
        return OperatorPoly._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: Any) -> "OperatorPoly":
        if not isinstance(other, OperatorPoly):
            try:
                other = OperatorPoly.scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "OperatorPoly":
        return (-self) + other

    def scale(self, coeff: Any) -> "OperatorPoly":
        factor = ScalarSum.of(coeff)
        if factor.is_zero:
            return OperatorPoly()
        return OperatorPoly._raw({key: c * factor for key, c in self._terms.items()})

    def __mul__(self, other: Any) -> "OperatorPoly":
        if isinstance(other, OperatorPoly):
            return normal_order_product(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: Any) -> "OperatorPoly":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other: Any) -> "OperatorPoly":
        return OperatorPoly._raw({key: c / other for key, c in self._terms.items()})

    def __pow__(self, exponent: int) -> "OperatorPoly":
        if exponent < 0:
            raise ValueError("operator powers must be non-negative")
        result = OperatorPoly.identity()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # ----- transforms (delegating to the module functions) ------------------
    def dagger(self) -> "OperatorPoly":
        return dagger(self)

    def bar(self) -> "OperatorPoly":
        return bar(self)

    def check(self) -> "OperatorPoly":
        return check(self)

    def commutator(self, other: "OperatorPoly") -> "OperatorPoly":
        return commutator(self, other)

    def is_hermitian(self) -> bool:
        return dagger(self) == self

    def natural(self) -> "OperatorPoly":
        """Same operator with ħ = m = ω = 1 folded into the coefficients."""
        return OperatorPoly._raw({key: c.natural() for key, c in self._terms.items()})

    # ----- identity -----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = OperatorPoly.scalar(other)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ----- IO -----------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return {
            "terms": [
                {"dag": j, "ann": k, "coeff": c.to_dict()}
                for (j, k), c in self.items()
            ]
        }

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "OperatorPoly":
        terms: Dict[Key, ScalarSum] = {}
        for item in data.get("terms", []):
            key = (int(item["dag"]), int(item["ann"]))
            terms[key] = terms.get(key, ScalarSum.zero()) + ScalarSum.from_dict(item["coeff"])
        return OperatorPoly(terms)

    def __repr__(self) -> str:
        return f"OperatorPoly({self})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces: List[str] = []
        for (j, k), c in self.items():
            word = ladder_word(j, k)
            coeff = str(c)
            if (" + " in coeff or " - " in coeff) and not coeff.startswith("("):
                coeff = f"({coeff})"
            if not word:
                body = coeff
            elif coeff == "1":
                body = word
            elif coeff == "-1":
                body = f"-{word}"
            else:
                body = f"{coeff}·{word}"
            if pieces and body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            elif pieces:
                pieces.append(f" + {body}")
            else:
                pieces.append(body)
        return "".join(pieces)


def ladder_word(j: int, k: int, dagger_glyph: str = "a†", ann_glyph: str = "a") -> str:
    def power(glyph: str, n: int) -> str:
        if n == 0:
            return ""
        return glyph if n == 1 else f"{glyph}^{n}"

    return power(dagger_glyph, j) + power(ann_glyph, k)


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------
def normal_order_product(x: OperatorPoly, y: OperatorPoly) -> OperatorPoly:
    """Canonical form of x·y."""
    if x.is_zero or y.is_zero:
        return OperatorPoly()
    acc: Dict[Key, ScalarSum] = {}
    for (j1, k1), c1 in x._terms.items():
        for (j2, k2), c2 in y._terms.items():
            c = c1 * c2
            for dj, dk, weight in _reorder(k1, j2):
                key = (j1 + dj, dk + k2)
                term = c if weight == 1 else c * weight
                prev = acc.get(key)
                acc[key] = term if prev is None else prev + term
    return OperatorPoly._raw(acc)


def commutator(x: OperatorPoly, y: OperatorPoly) -> OperatorPoly:
    return normal_order_product(x, y) - normal_order_product(y, x)


def dagger(x: OperatorPoly) -> OperatorPoly:
    return OperatorPoly._raw({(k, j): c.conj() for (j, k), c in x._terms.items()})


def bar(x: OperatorPoly) -> OperatorPoly:
    """Term-wise division by k − j; balanced terms are dropped."""
    out: Dict[Key, ScalarSum] = {}
    for key, c in x._terms.items():
        divisor = TermExcess.of(key).bar_divisor
        if divisor:
            out[key] = c / divisor
    return OperatorPoly._raw(out)


def check(x: OperatorPoly) -> OperatorPoly:
    """Balanced (j = k) part."""
    return OperatorPoly._raw({(j, k): c for (j, k), c in x._terms.items() if j == k})


def double_bar(x: OperatorPoly) -> OperatorPoly:
    return bar(bar(x))


def require_hermitian(x: OperatorPoly, what: str = "operator") -> OperatorPoly:
    """Return x when dagger(x) == x; otherwise raise with the residue x − dagger(x)."""
    residue = x - dagger(x)
    if not residue.is_zero:
        raise HermiticityError(f"{what} is not self-adjoint; residue x - x† = {residue}", residue=residue)
    return x
