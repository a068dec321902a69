# ladderkit/algebra/scalar.py
"""
Exact coefficient ring: elements of Q(i, sqrt2) carrying a dimensional
monomial hbar^(h/2) m^(m/2) omega^(w/2).

`Scalar` is the exact element, `FloatScalar` the complex-float extension used
only by the squeeze/coherent constructors, and `ScalarSum` a sum of
unit-distinct terms (needed as soon as a perturbation mixes dimensions,
e.g. q + p^4).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from ladderkit.core.errors import UnitMismatchError

Rational = Union[int, Fraction]


def _frac(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    return Fraction(value)


def _frac_pair(value: Fraction) -> List[int]:
    return [value.numerator, value.denominator]


def _format_exponent(doubled: int) -> str:
    value = Fraction(doubled, 2)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Units
# ---------------------------------------------------------------------------
@dataclass(frozen=True, order=True)
class UnitMonomial:
    """hbar^(hbar2/2) * m^(mass2/2) * omega^(omega2/2)"""

    hbar2: int = 0
    mass2: int = 0
    omega2: int = 0

    def __mul__(self, other: "UnitMonomial") -> "UnitMonomial":
        return UnitMonomial(self.hbar2 + other.hbar2, self.mass2 + other.mass2, self.omega2 + other.omega2)

    def __truediv__(self, other: "UnitMonomial") -> "UnitMonomial":
        return self * other.inverse()

    def inverse(self) -> "UnitMonomial":
        return UnitMonomial(-self.hbar2, -self.mass2, -self.omega2)

    @property
    def is_dimensionless(self) -> bool:
        return self.hbar2 == 0 and self.mass2 == 0 and self.omega2 == 0

    def value(self, hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0) -> float:
        return hbar ** (self.hbar2 / 2) * mass ** (self.mass2 / 2) * omega ** (self.omega2 / 2)

    def to_dict(self) -> Dict[str, int]:
        return {"hbar2": self.hbar2, "m2": self.mass2, "w2": self.omega2}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "UnitMonomial":
        return UnitMonomial(int(data.get("hbar2", 0)), int(data.get("m2", 0)), int(data.get("w2", 0)))

    def symbols(self) -> List[Tuple[str, str]]:
        """[(symbol, exponent text)] for the nonzero exponents, in hbar, m, omega order."""
        out = []
        for name, doubled in (("hbar", self.hbar2), ("m", self.mass2), ("omega", self.omega2)):
            if doubled:
                out.append((name, _format_exponent(doubled)))
        return out

    def __str__(self) -> str:
        glyphs = {"hbar": "ħ", "m": "m", "omega": "ω"}
        parts = []
        for name, exp in self.symbols():
            if exp == "1":
                parts.append(glyphs[name])
            elif "/" in exp or exp.startswith("-"):
                parts.append(f"{glyphs[name]}^({exp})")
            else:
                parts.append(f"{glyphs[name]}^{exp}")
        return " ".join(parts)


DIMENSIONLESS = UnitMonomial()
HBAR = UnitMonomial(2, 0, 0)
MASS = UnitMonomial(0, 2, 0)
OMEGA = UnitMonomial(0, 0, 2)


# ---------------------------------------------------------------------------
# Exact scalars
# ---------------------------------------------------------------------------
def _mul_s2(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> Tuple[Fraction, Fraction]:
    """(a + b√2)(c + d√2) in Q(√2)."""
    return a * c + 2 * b * d, a * d + b * c


@dataclass(frozen=True)
class Scalar:
    """re + re_s2·√2 + i·(im + im_s2·√2), times a UnitMonomial."""

    re: Fraction = Fraction(0)
    re_s2: Fraction = Fraction(0)
    im: Fraction = Fraction(0)
    im_s2: Fraction = Fraction(0)
    units: UnitMonomial = field(default=DIMENSIONLESS)

    def __post_init__(self) -> None:
        for name in ("re", "re_s2", "im", "im_s2"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    # ----- constructors -----------------------------------------------------
    @classmethod
    def of(cls, value: Rational, units: UnitMonomial = DIMENSIONLESS) -> "Scalar":
        return cls(re=_frac(value), units=units)

    @classmethod
    def zero(cls) -> "Scalar":
        return cls()

    @classmethod
    def one(cls) -> "Scalar":
        return cls(re=Fraction(1))

    @classmethod
    def i(cls) -> "Scalar":
        return cls(im=Fraction(1))

    @classmethod
    def sqrt2(cls) -> "Scalar":
        return cls(re_s2=Fraction(1))

    @classmethod
    def unit(cls, units: UnitMonomial) -> "Scalar":
        return cls(re=Fraction(1), units=units)

    # ----- predicates -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not (self.re or self.re_s2 or self.im or self.im_s2)

    @property
    def is_real(self) -> bool:
        return not (self.im or self.im_s2)

    @property
    def is_exact(self) -> bool:
        return True

    def parts(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.re, self.re_s2, self.im, self.im_s2

    def with_units(self, units: UnitMonomial) -> "Scalar":
        return Scalar(self.re, self.re_s2, self.im, self.im_s2, units)

    # ----- ring operations ----------------------------------------------------
    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.re_s2, -self.im, -self.im_s2, self.units)

    def __add__(self, other: Any) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.units != other.units:
            raise UnitMismatchError(
                f"cannot add scalars with units {self.units} and {other.units}",
                left=self.units.to_dict(),
                right=other.units.to_dict(),
            )
        return Scalar(
            self.re + other.re,
            self.re_s2 + other.re_s2,
            self.im + other.im,
            self.im_s2 + other.im_s2,
            self.units,
        )

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: Any) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            k = _frac(other)
            return Scalar(self.re * k, self.re_s2 * k, self.im * k, self.im_s2 * k, self.units)
        if not isinstance(other, Scalar):
            return NotImplemented
        uu = _mul_s2(self.re, self.re_s2, other.re, other.re_s2)
        vv = _mul_s2(self.im, self.im_s2, other.im, other.im_s2)
        uv = _mul_s2(self.re, self.re_s2, other.im, other.im_s2)
        vu = _mul_s2(self.im, self.im_s2, other.re, other.re_s2)
        return Scalar(
            uu[0] - vv[0],
            uu[1] - vv[1],
            uv[0] + vu[0],
            uv[1] + vu[1],
            self.units * other.units,
        )

    __rmul__ = __mul__

    def conj(self) -> "Scalar":
        return Scalar(self.re, self.re_s2, -self.im, -self.im_s2, self.units)

    def inverse(self) -> "Scalar":
        """1/z; z = u + iv with u, v in Q(√2), 1/z = (u - iv)/(u² + v²)."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero scalar")
        u2 = _mul_s2(self.re, self.re_s2, self.re, self.re_s2)
        v2 = _mul_s2(self.im, self.im_s2, self.im, self.im_s2)
        p, q = u2[0] + v2[0], u2[1] + v2[1]
        norm = p * p - 2 * q * q
        # 1/(p + q√2) = (p - q√2)/(p² - 2q²)
        wp, wq = p / norm, -q / norm
        re = _mul_s2(self.re, self.re_s2, wp, wq)
        im = _mul_s2(-self.im, -self.im_s2, wp, wq)
        return Scalar(re[0], re[1], im[0], im[1], self.units.inverse())

    def __truediv__(self, other: Any) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            k = _frac(other)
            if k == 0:
                raise ZeroDivisionError("scalar division by zero")
            return self * (1 / k)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    # ----- evaluation / IO --------------------------------------------------
    def to_complex(self, hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0) -> complex:
        s2 = 2 ** 0.5
        value = complex(float(self.re) + float(self.re_s2) * s2, float(self.im) + float(self.im_s2) * s2)
        if self.units.is_dimensionless:
            return value
        return value * self.units.value(hbar, mass, omega)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "re": _frac_pair(self.re),
            "re_s2": _frac_pair(self.re_s2),
            "im": _frac_pair(self.im),
            "im_s2": _frac_pair(self.im_s2),
            "units": self.units.to_dict(),
        }

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "Scalar":
        return Scalar(
            _frac(data.get("re", 0)),
            _frac(data.get("re_s2", 0)),
            _frac(data.get("im", 0)),
            _frac(data.get("im_s2", 0)),
            UnitMonomial.from_dict(data.get("units", {})),
        )

    def value_terms(self) -> List[Tuple[Fraction, str]]:
        """Nonzero (coefficient, basis) pairs with basis in '', 'sqrt2', 'i', 'i sqrt2'."""
        out = []
        for coef, basis in ((self.re, ""), (self.re_s2, "sqrt2"), (self.im, "i"), (self.im_s2, "i sqrt2")):
            if coef:
                out.append((coef, basis))
        return out

    def __str__(self) -> str:
        return format_value(self.value_terms(), str(self.units))


def format_value(terms: List[Tuple[Fraction, str]], unit_text: str = "") -> str:
    """Plain-text rendering shared by Scalar and the report formatters."""
    glyph = {"": "", "sqrt2": "√2", "i": "i", "i sqrt2": "i√2"}
    if not terms:
        return "0"
    pieces = []
    for index, (coef, basis) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if basis and mag == 1:
            body = glyph[basis]
        elif basis:
            body = f"({mag}){glyph[basis]}" if mag.denominator != 1 else f"{mag}{glyph[basis]}"
        else:
            body = str(mag)
        if index == 0:
            pieces.append(f"-{body}" if sign == "-" else body)
        else:
            pieces.append(f" {sign} {body}")
    value = "".join(pieces)
    if not unit_text:
        return value
    if len(terms) > 1:
        value = f"({value})"
    if value in ("1", "-1"):
        return unit_text if value == "1" else f"-{unit_text}"
    return f"{value} {unit_text}"


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_conj(x: Scalar) -> Scalar:
    return x.conj()


# ---------------------------------------------------------------------------
# Float extension (squeeze / coherent constructors only)
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FloatScalar:
    value: complex = 0j
    units: UnitMonomial = field(default=DIMENSIONLESS)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))

    @classmethod
    def promote(cls, x: Any) -> "FloatScalar":
        if isinstance(x, FloatScalar):
            return x
        if isinstance(x, Scalar):
            return cls(x.to_complex(), x.units)
        if isinstance(x, (int, float, complex, Fraction)):
            return cls(complex(x))
        raise TypeError(f"cannot promote {type(x).__name__} to FloatScalar")

    @classmethod
    def polar(cls, modulus: float, phase: float) -> "FloatScalar":
        return cls(cmath.rect(modulus, phase))

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0

    @property
    def is_exact(self) -> bool:
        return False

    def with_units(self, units: UnitMonomial) -> "FloatScalar":
        return FloatScalar(self.value, units)

    def __neg__(self) -> "FloatScalar":
        return FloatScalar(-self.value, self.units)

    def __add__(self, other: Any) -> "FloatScalar":
        other = FloatScalar.promote(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.units != other.units:
            raise UnitMismatchError(f"cannot add scalars with units {self.units} and {other.units}")
        return FloatScalar(self.value + other.value, self.units)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FloatScalar":
        return self + (-FloatScalar.promote(other))

    def __rsub__(self, other: Any) -> "FloatScalar":
        return FloatScalar.promote(other) - self

    def __mul__(self, other: Any) -> "FloatScalar":
        other = FloatScalar.promote(other)
        return FloatScalar(self.value * other.value, self.units * other.units)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FloatScalar":
        other = FloatScalar.promote(other)
        return FloatScalar(self.value / other.value, self.units / other.units)

    def conj(self) -> "FloatScalar":
        return FloatScalar(self.value.conjugate(), self.units)

    def to_complex(self, hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0) -> complex:
        if self.units.is_dimensionless:
            return self.value
        return self.value * self.units.value(hbar, mass, omega)

    def to_dict(self) -> Dict[str, Any]:
        return {"float": [self.value.real, self.value.imag], "units": self.units.to_dict()}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "FloatScalar":
        re, im = data["float"]
        return FloatScalar(complex(re, im), UnitMonomial.from_dict(data.get("units", {})))

    def __str__(self) -> str:
        v = self.value
        text = f"{v.real:.12g}" if v.imag == 0 else f"({v.real:.12g}{v.imag:+.12g}i)"
        units = str(self.units)
        return f"{text} {units}" if units else text


AnyScalar = Union[Scalar, FloatScalar]


def scalar_from_dict(data: Mapping[str, Any]) -> AnyScalar:
    if "float" in data:
        return FloatScalar.from_dict(data)
    return Scalar.from_dict(data)


# ---------------------------------------------------------------------------
# Unit-distinct sums
# ---------------------------------------------------------------------------
class ScalarSum:
    """
    Immutable sum of scalars with pairwise distinct units.

    This is the coefficient type of OperatorPoly; in the common case it holds
    a single Scalar.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[AnyScalar] | Mapping[UnitMonomial, AnyScalar] = ()):
        if isinstance(terms, Mapping):
            terms = terms.values()
        acc: Dict[UnitMonomial, AnyScalar] = {}
        for term in terms:
            if term.is_zero:
                continue
            prev = acc.get(term.units)
            acc[term.units] = term if prev is None else prev + term
        self._terms: Dict[UnitMonomial, AnyScalar] = {u: s for u, s in acc.items() if not s.is_zero}
        self._hash: int | None = None

    # ----- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "ScalarSum":
        return cls()

    @classmethod
    def one(cls) -> "ScalarSum":
        return cls((Scalar.one(),))

    @classmethod
    def of(cls, value: Any) -> "ScalarSum":
        if isinstance(value, ScalarSum):
            return value
        if isinstance(value, (Scalar, FloatScalar)):
            return cls((value,))
        if isinstance(value, (int, Fraction)):
            return cls((Scalar.of(value),))
        if isinstance(value, (float, complex)):
            return cls((FloatScalar(complex(value)),))
        raise TypeError(f"cannot use {type(value).__name__} as an operator coefficient")

    # ----- access -------------------------------------------------------------
    def __iter__(self) -> Iterator[AnyScalar]:
        for units in sorted(self._terms):
            yield self._terms[units]

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_real(self) -> bool:
        return all(s.is_real for s in self._terms.values())

    @property
    def is_exact(self) -> bool:
        return all(s.is_exact for s in self._terms.values())

    def units(self) -> List[UnitMonomial]:
        return sorted(self._terms)

    def single(self) -> AnyScalar:
        """The only term (zero Scalar when empty); raises when units are mixed."""
        if not self._terms:
            return Scalar.zero()
        if len(self._terms) > 1:
            raise UnitMismatchError("coefficient mixes several unit monomials")
        return next(iter(self._terms.values()))

    def term(self, units: UnitMonomial) -> AnyScalar:
        return self._terms.get(units, Scalar.zero())

    # ----- ring operations ----------------------------------------------------
    def __add__(self, other: Any) -> "ScalarSum":
        try:
            other = ScalarSum.of(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        return ScalarSum(list(self._terms.values()) + list(other._terms.values()))

    __radd__ = __add__

    def __neg__(self) -> "ScalarSum":
        return ScalarSum([-s for s in self._terms.values()])

    def __sub__(self, other: Any) -> "ScalarSum":
        try:
            other = ScalarSum.of(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "ScalarSum":
        return ScalarSum.of(other) - self

    def __mul__(self, other: Any) -> "ScalarSum":
        try:
            other = ScalarSum.of(other)
        except TypeError:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ScalarSum()
        return ScalarSum([x * y for x in self._terms.values() for y in other._terms.values()])

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ScalarSum":
        if isinstance(other, ScalarSum):
            other = other.single()
        if isinstance(other, (int, Fraction, Scalar, FloatScalar)):
            return ScalarSum([s / other for s in self._terms.values()])
        return NotImplemented

    def conj(self) -> "ScalarSum":
        return ScalarSum([s.conj() for s in self._terms.values()])

    def natural(self) -> "ScalarSum":
        """Collapse the unit monomials (hbar = m = omega = 1)."""
        return ScalarSum([s.with_units(DIMENSIONLESS) for s in self._terms.values()])

    def to_complex(self, hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0) -> complex:
        return sum((s.to_complex(hbar, mass, omega) for s in self._terms.values()), 0j)

    # ----- identity -----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Scalar, FloatScalar)):
            other = ScalarSum.of(other)
        if not isinstance(other, ScalarSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_dict(self) -> List[Dict[str, Any]]:
        return [s.to_dict() for s in self]

    @staticmethod
    def from_dict(data: Iterable[Mapping[str, Any]]) -> "ScalarSum":
        return ScalarSum([scalar_from_dict(item) for item in data])

    def __repr__(self) -> str:
        return f"ScalarSum({list(self)!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        texts = [str(s) for s in self]
        return texts[0] if len(texts) == 1 else "(" + " + ".join(texts) + ")"


# ---------------------------------------------------------------------------
# Frequently used constants
# ---------------------------------------------------------------------------
def hbar_omega() -> Scalar:
    return Scalar.unit(HBAR * OMEGA)


def position_scale() -> Scalar:
    """√(ħ/2mω) = (√2/2) ħ^(1/2) m^(-1/2) ω^(-1/2)"""
    return Scalar(re_s2=Fraction(1, 2), units=UnitMonomial(1, -1, -1))


def momentum_scale() -> Scalar:
    """i√(ħmω/2) = (i√2/2) ħ^(1/2) m^(1/2) ω^(1/2)"""
    return Scalar(im_s2=Fraction(1, 2), units=UnitMonomial(1, 1, 1))
