"""Integer Laurent polynomials, their quotients, and directed expansion.

A :class:`LaurentPolynomial` is a finite integer combination of powers of
a single variable (written ``w`` by default, negative powers allowed).
A :class:`RationalFunction` is a quotient of two of them, always kept in
lowest terms so that structurally equal values are equal.  Expansion into
coefficient tables can run in either direction: as a power series at
``w = 0`` or as a series in ``w^{-1}`` at infinity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Union

from . import kernels

__all__ = [
    "LaurentPolynomial",
    "RationalFunction",
    "Direction",
    "CoefficientTable",
    "NonUnitLeadingTerm",
    "W",
    "rf_add",
    "rf_mul",
    "rf_eq",
    "rf_inverse_variable",
    "expand",
    "geometric_sum",
]


class NonUnitLeadingTerm(ValueError):
    """The denominator's extreme coefficient is not +-1 in the requested direction."""


def _strip(low: int, c: list) -> tuple[int, tuple]:
    lo, hi = 0, len(c)
    while lo < hi and c[lo] == 0:
        lo += 1
    while hi > lo and c[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return low + lo, tuple(c[lo:hi])


class LaurentPolynomial:
    """Immutable integer Laurent polynomial in one variable.

    Build one from a ``{degree: coefficient}`` mapping, an ``int``, or
    through the module constant :data:`W`::

        >>> (1 - W**2) * W**-1
        LaurentPolynomial({-1: 1, 1: -1})
    """

    __slots__ = ("_low", "_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], int, None] = None):
        if coeffs is None or isinstance(coeffs, int):
            low, c = _strip(0, [coeffs or 0])
        else:
            items = {int(k): int(v) for k, v in coeffs.items() if v}
            if items:
                lo = min(items)
                dense = [0] * (max(items) - lo + 1)
                for k, v in items.items():
                    dense[k - lo] = v
                low, c = _strip(lo, dense)
            else:
                low, c = 0, ()
        self._low = low
        self._c = c
        self._hash = None

    @classmethod
    def from_dense(cls, low: int, coeffs: Iterable[int]) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj._low, obj._c = _strip(low, list(coeffs))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls.from_dense(degree, [coeff])

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._c

    @property
    def low(self) -> int | None:
        """Lowest degree with a nonzero coefficient (``None`` for zero)."""
        return self._low if self._c else None

    @property
    def high(self) -> int | None:
        return self._low + len(self._c) - 1 if self._c else None

    @property
    def coeffs(self) -> dict[int, int]:
        return {self._low + i: v for i, v in enumerate(self._c) if v}

    def dense(self) -> tuple[int, list[int]]:
        return self._low, list(self._c)

    def __getitem__(self, degree: int) -> int:
        i = degree - self._low
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def is_monomial(self) -> bool:
        return sum(1 for v in self._c if v) == 1

    def content(self) -> int:
        g = 0
        for v in self._c:
            g = gcd(g, v)
        return g

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for i, v in enumerate(self._c):
            if v:
                yield self._low + i, v

    def __len__(self) -> int:
        return sum(1 for v in self._c if v)

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        low = min(self._low, other._low)
        top = max(self._low + len(self._c), other._low + len(other._c))
        out = [0] * (top - low)
        for i, v in enumerate(self._c):
            out[self._low - low + i] += v
        for i, v in enumerate(other._c):
            out[other._low - low + i] += v
        return LaurentPolynomial.from_dense(low, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial.from_dense(self._low, [-v for v in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._c or not other._c:
            return ZERO_POLY
        return LaurentPolynomial.from_dense(
            self._low + other._low, kernels.poly_mul(list(self._c), list(other._c))
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if self.is_monomial():
                (d, c), = self
                if c in (1, -1):
                    return LaurentPolynomial.monomial(d * e, c ** (-e))
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = ONE_POLY
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return RationalFunction(self, other)

    def __rtruediv__(self, other):
        return RationalFunction(other, self)

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``w**k``."""
        if not self._c:
            return self
        return LaurentPolynomial.from_dense(self._low + k, self._c)

    def substitute(self, power: int, sign: int = 1) -> "LaurentPolynomial":
        """Return ``f(sign * w**power)``."""
        if power == 0:
            raise ValueError("power must be nonzero")
        out = {}
        for d, v in self:
            if sign == -1 and d % 2:
                v = -v
            out[d * power] = out.get(d * power, 0) + v
        return LaurentPolynomial(out)

    def inverse_variable(self) -> "LaurentPolynomial":
        """Return ``f(w**-1)``."""
        if not self._c:
            return self
        top = self._low + len(self._c) - 1
        return LaurentPolynomial.from_dense(-top, self._c[::-1])

    def __call__(self, value):
        """Evaluate exactly at an int or Fraction."""
        if not isinstance(value, (int, Fraction)):
            value = Fraction(value)
        total = Fraction(0)
        for d, v in self:
            total += v * Fraction(value) ** d
        return total

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._low == other._low and self._c == other._c if self._c else not other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low, self._c) if self._c else ())
        return self._hash

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"LaurentPolynomial({self.coeffs!r})"

    def format(self, var: str = "w") -> str:
        if not self._c:
            return "0"
        parts = []
        for d, v in self:
            mag = abs(v)
            if d == 0:
                body = str(mag)
            else:
                mono = var if d == 1 else f"{var}^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = format

    def to_json(self) -> dict[str, int]:
        return {str(d): v for d, v in self}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPolynomial":
        return cls({int(k): int(v) for k, v in data.items()})


ZERO_POLY = LaurentPolynomial()
ONE_POLY = LaurentPolynomial(1)
#: The variable ``w``.
W = LaurentPolynomial.monomial(1)


def geometric_sum(step: int, terms: int) -> LaurentPolynomial:
    """``1 + w**step + ... + w**(step*(terms-1))``."""
    return LaurentPolynomial({step * j: 1 for j in range(terms)})


def _split_monomial(p: LaurentPolynomial) -> tuple[int, list[int]]:
    low, c = p.dense()
    return low, c


def _to_poly(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


class RationalFunction:
    """Quotient of integer Laurent polynomials, held in lowest terms.

    Canonical form: numerator and denominator are coprime in
    ``Z[w, w^-1]``, the denominator has lowest degree 0, and its constant
    coefficient is positive.  Zero is ``0/1``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
            q = _as_rf(num) / _as_rf(den)
            self.num, self.den, self._hash = q.num, q.den, None
            return
        n = _to_poly(num)
        d = _to_poly(den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _canonical(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den ** (-e), self.num ** (-e))
        return RationalFunction._raw(*_canonical(self.num**e, self.den**e))

    def shift(self, k: int) -> "RationalFunction":
        return RationalFunction._raw(self.num.shift(k), self.den)

    def substitute(self, power: int, sign: int = 1) -> "RationalFunction":
        """Return ``f(sign * w**power)``."""
        return RationalFunction(
            self.num.substitute(power, sign), self.den.substitute(power, sign)
        )

    def inverse_variable(self) -> "RationalFunction":
        return RationalFunction(self.num.inverse_variable(), self.den.inverse_variable())

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the value is a Laurent polynomial."""
        return self.den == ONE_POLY

    def as_laurent(self) -> LaurentPolynomial:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return rf_eq(self, other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, value):
        return self.num(value) / self.den(value)

    # -- expansion --------------------------------------------------------
    def expand(self, direction: "Direction", lo: int, hi: int) -> "CoefficientTable":
        return expand(self, direction, lo, hi)

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def format(self, var: str = "w") -> str:
        if self.is_laurent():
            return self.num.format(var)
        return f"({self.num.format(var)}) / ({self.den.format(var)})"

    __str__ = format

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalFunction":
        return cls(
            LaurentPolynomial.from_json(data["num"]), LaurentPolynomial.from_json(data["den"])
        )


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPolynomial, int)):
        return RationalFunction._raw(_to_poly(x), ONE_POLY)
    return NotImplemented


def _canonical(n: LaurentPolynomial, d: LaurentPolynomial):
    if n.is_zero():
        return ZERO_POLY, ONE_POLY
    nlow, nc = n.dense()
    dlow, dc = d.dense()
    if len(dc) > 1 and len(nc) > 1:
        g = kernels.poly_gcd(nc, dc)
        if len(g) > 1:
            nc = kernels.poly_divexact(nc, g)
            dc = kernels.poly_divexact(dc, g)
    c = gcd(gcd(*nc) if len(nc) > 1 else nc[0], gcd(*dc) if len(dc) > 1 else dc[0])
    c = abs(c)
    if dc[0] < 0:
        c = -c
    if c != 1:
        nc = [v // c for v in nc]
        dc = [v // c for v in dc]
    return (
        LaurentPolynomial.from_dense(nlow - dlow, nc),
        LaurentPolynomial.from_dense(0, dc),
    )


RF_ZERO = RationalFunction._raw(ZERO_POLY, ONE_POLY)
RF_ONE = RationalFunction._raw(ONE_POLY, ONE_POLY)


def rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return _as_rf(a) + _as_rf(b)


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return _as_rf(a) * _as_rf(b)


def rf_eq(a: RationalFunction, b: RationalFunction) -> bool:
    """Exact equality by cross-multiplication, no truncation involved."""
    a, b = _as_rf(a), _as_rf(b)
    return a.num * b.den == b.num * a.den


def rf_inverse_variable(a: RationalFunction) -> RationalFunction:
    return _as_rf(a).inverse_variable()


class Direction(enum.Enum):
    """Which formal series a rational function is expanded into."""

    AT_ZERO = "zero"
    AT_INFINITY = "infinity"


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients for degrees ``lo..hi`` inclusive."""

    lo: int
    hi: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")
        if len(self.values) != self.hi - self.lo + 1:
            raise ValueError("values length does not match the window")

    def __getitem__(self, degree: int) -> int:
        if not self.lo <= degree <= self.hi:
            raise KeyError(degree)
        return self.values[degree - self.lo]

    def get(self, degree: int, default: int = 0) -> int:
        if self.lo <= degree <= self.hi:
            return self.values[degree - self.lo]
        return default

    def items(self):
        return zip(range(self.lo, self.hi + 1), self.values)

    def __add__(self, other: "CoefficientTable") -> "CoefficientTable":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("tables cover different windows")
        return CoefficientTable(self.lo, self.hi, tuple(a + b for a, b in zip(self.values, other.values)))


def _series(num: list, den: list, count: int) -> list:
    if count <= 0:
        return []
    if den[0] not in (1, -1):
        raise NonUnitLeadingTerm(f"denominator starts with {den[0]}, not +-1")
    return kernels.series_div(num, den, count)


def expand(a: RationalFunction, direction: Direction, lo: int, hi: int) -> CoefficientTable:
    """Coefficients of ``a`` as a formal series, restricted to degrees ``lo..hi``.

    ``AT_ZERO`` expands in nonnegative powers of ``w`` past the lowest
    term; ``AT_INFINITY`` in powers of ``w^-1``.  The denominator's
    extreme coefficient in that direction has to be a unit.
    """
    a = _as_rf(a)
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    values = [0] * (hi - lo + 1)
    if a.num.is_zero():
        return CoefficientTable(lo, hi, tuple(values))
    nlow, nc = a.num.dense()
    dlow, dc = a.den.dense()
    if direction is Direction.AT_ZERO:
        start = nlow - dlow
        coeffs = _series(nc, dc, hi - start + 1)
        if not coeffs and dc[0] not in (1, -1):
            raise NonUnitLeadingTerm(f"denominator starts with {dc[0]}, not +-1")
        for k, v in enumerate(coeffs):
            d = start + k
            if d >= lo:
                values[d - lo] = v
    elif direction is Direction.AT_INFINITY:
        # in v = 1/w the value is v**e * rev(num) / rev(den)
        e = -((nlow + len(nc) - 1) - (dlow + len(dc) - 1))
        rn, rd = nc[::-1], dc[::-1]
        coeffs = _series(rn, rd, -lo - e + 1)
        if not coeffs and rd[0] not in (1, -1):
            raise NonUnitLeadingTerm(f"denominator ends with {rd[0]}, not +-1")
        for k, v in enumerate(coeffs):
            d = -(e + k)
            if d <= hi:
                values[d - lo] = v
    else:
        raise TypeError(f"unknown direction {direction!r}")
    return CoefficientTable(lo, hi, tuple(values))
