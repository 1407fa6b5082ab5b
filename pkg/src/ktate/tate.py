"""Tate cohomology of elementary abelian p-groups with coefficients in k.

The Tate spectrum splits as copies of the block ``Q_n`` plus copies of H.
The H multiplicity ``f`` has two halves that expand in opposite
directions, so it is kept as the pair ``(f_hom, f_coh)`` and never added
into a single rational function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .borel import borel_cohomology_recursive, borel_homology_recursive
from .grmod import H, check_prime, internal_poincare
from .laurent import Direction, LaurentPolynomial, RationalFunction, W, expand, rf_eq
from .resolve import GradedAbelianGroup

__all__ = [
    "TateResult",
    "QnCoefficients",
    "tate_decomposition",
    "f_p2",
    "f_general",
    "consistency_check",
    "tate_homotopy",
    "qn_postnikov_profile",
    "qn_min_valuation",
]


@dataclass(frozen=True)
class TateResult:
    prime: int
    n: int
    q_multiplicity: RationalFunction
    f_hom: RationalFunction  # expanded at zero
    f_coh: RationalFunction  # expanded at infinity

    def f_coefficients(self, lo: int, hi: int):
        """Coefficients of ``f`` on ``lo..hi``, each half in its own direction."""
        return expand(self.f_hom, Direction.AT_ZERO, lo, hi) + expand(
            self.f_coh, Direction.AT_INFINITY, lo, hi
        )

    def is_zero(self) -> bool:
        return self.q_multiplicity.is_zero() and self.f_hom.is_zero() and self.f_coh.is_zero()

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "n": self.n,
            "q_multiplicity": self.q_multiplicity.to_json(),
            "f_hom": self.f_hom.to_json(),
            "f_coh": self.f_coh.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TateResult":
        return cls(
            int(data["prime"]),
            int(data["n"]),
            RationalFunction.from_json(data["q_multiplicity"]),
            RationalFunction.from_json(data["f_hom"]),
            RationalFunction.from_json(data["f_coh"]),
        )


def _check(p: int, n: int) -> None:
    check_prime(p)
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"rank n must be a nonnegative integer, got {n!r}")


def _rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def _half(x: LaurentPolynomial, T: LaurentPolynomial, D: LaurentPolynomial, n: int) -> RationalFunction:
    # 1/(D (1-x)^(n-1)) * [ (1 - T^n (1-x)^n)/(1 - T(1-x)) - (1 - (1-x)^n)/(1 - (1-x)) ]
    b = 1 - x
    inner = _rf(1 - T**n * b**n) / (1 - T * b) - _rf(1 - b**n) / (1 - b)
    return inner / (_rf(D) * _rf(b) ** (n - 1))


def f_p2(n: int) -> tuple[RationalFunction, RationalFunction]:
    """The two halves of ``f`` in the rank-``n`` theorem at ``p = 2``."""
    wi = W**-1
    f_hom = W * _half(W, 1 + W**2, (1 - W**2) ** 2, n)
    f_coh = _half(wi, 1 + wi**2, (1 - wi**2) ** 2, n)
    return f_hom, f_coh


def f_general(p: int, n: int) -> tuple[RationalFunction, RationalFunction]:
    """The two halves of ``f`` in the rank-``n`` theorem for any prime."""
    wi = W**-1
    T = LaurentPolynomial({2 * j: 1 for j in range(p)})
    Ti = T.inverse_variable()
    f_hom = W * _half(W, T, (1 - W ** (2 * (p - 1))) * (1 - W**2), n)
    f_coh = _half(wi, Ti, (1 - wi ** (2 * (p - 1))) * (1 - wi**2), n)
    return f_hom, f_coh


def _q_multiplicity(p: int, n: int) -> RationalFunction:
    Ti = LaurentPolynomial({-2 * j: 1 for j in range(p)})
    return _rf(Ti**n - W ** (-2 * n * (p - 1)))


def tate_decomposition(p: int, n: int) -> TateResult:
    """Multiplicities of ``Q_n`` and of H in the Tate spectrum of ``(Z/p)^n``."""
    _check(p, n)
    f_hom, f_coh = f_p2(n) if p == 2 else f_general(p, n)
    return TateResult(p, n, _q_multiplicity(p, n), f_hom, f_coh)


def consistency_check(p: int, n: int) -> bool:
    """``f == w * q_hom + q_coh`` with the H multiplicities of the Borel recursion."""
    _check(p, n)
    t = tate_decomposition(p, n)
    q_hom = borel_homology_recursive(p, n).multiplicity(H)
    q_coh = borel_cohomology_recursive(p, n).multiplicity(H)
    f = t.f_hom + t.f_coh
    return rf_eq(f, W * q_hom + q_coh) and rf_eq(t.f_hom, W * q_hom) and rf_eq(t.f_coh, q_coh)


def tate_homotopy(p: int, n: int, lo: int, hi: int) -> GradedAbelianGroup:
    """Homotopy groups of the Tate spectrum on ``lo..hi``.

    ``free`` counts copies of the p-adic integers.  Every copy of ``Q_n``
    has one in each even degree.  ``torsion`` lists one ``p`` per copy of Z/p.
    """
    _check(p, n)
    if lo > hi:
        raise ValueError(f"reversed window [{lo}, {hi}]")
    t = tate_decomposition(p, n)
    q = t.q_multiplicity.as_laurent()
    even = sum(c for _, c in q)
    odd = 0  # every shift of Q_n is even
    width = 2 * (p - 2)
    f = t.f_coefficients(lo - width, hi)
    poincare = internal_poincare(p)

    def group(d: int):
        free = even if d % 2 == 0 else odd
        count = sum(c * f[d - s] for s, c in poincare)
        if count < 0:
            raise ArithmeticError(f"negative H count {count} in degree {d}")
        return free, [p] * count

    return GradedAbelianGroup.from_function(lo, hi, group)


# ---------------------------------------------------------------------------
# coefficients of Q_n


def _q_generators(p: int, n: int, top: int) -> list[tuple[int, int]]:
    # (valuation, beta-degree) for 1 and beta^((p-1)(n-1)) (beta^(p-1)/p)^i
    gens = [(0, 0)]
    i = 0
    while True:
        m = (p - 1) * (n - 1 + i)
        if m > top:
            break
        gens.append((-i, m))
        i += 1
    return gens


def qn_min_valuation(p: int, n: int, m: int) -> int:
    """Smallest p-adic valuation of ``c`` with ``c * beta^m`` in ``Q_n``.

    Brute force: enumerate products of the generators with monomials
    ``beta^a (p / beta^(p-1))^b`` landing in degree ``2m``.
    """
    check_prime(p)
    if n < 1:
        raise ValueError("Q_n needs n >= 1")
    best = None
    bmax = max(0, -m) + 1
    for v0, m0 in _q_generators(p, n, max(m, 0) + (p - 1) * (n + bmax)):
        for b in range(0, bmax + (m0 // (p - 1)) + 1):
            a = m - m0 + b * (p - 1)
            if a < 0:
                continue
            v = v0 + b
            if best is None or v < best:
                best = v
    if best is None:
        raise ArithmeticError(f"no element of Q_{n} in degree {2 * m}")
    return best


def _qn_valuation_formula(p: int, n: int, m: int) -> int:
    return min(max(0, math.ceil(-m / (p - 1))), math.ceil(n - 1 - m / (p - 1)))


@dataclass(frozen=True)
class QnCoefficients:
    """Coefficient groups of ``Q_n`` with their Postnikov band labels."""

    p: int
    n: int

    @property
    def middle_top(self) -> int:
        return 2 * (self.p - 1) * (self.n - 1)

    @property
    def upper_start(self) -> int:
        return 2 * (self.p - 1) * self.n

    def group(self, degree: int) -> tuple[int, tuple[int, ...]]:
        """``(1, ())`` (one p-adic integer) in even degrees, ``(0, ())`` in odd ones."""
        if degree % 2:
            return 0, ()
        qn_min_valuation(self.p, self.n, degree // 2)  # raises if the lattice is empty
        return 1, ()

    def band(self, degree: int) -> str:
        """``lower``, ``middle``, ``upper``; ``unassigned`` for the odd-p degrees between."""
        if degree % 2:
            return "none"
        if degree < 0:
            return "lower"
        if degree <= self.middle_top:
            return "middle"
        if degree >= self.upper_start:
            return "upper"
        return "unassigned"

    def middle_band(self) -> list[int]:
        return list(range(0, self.middle_top + 1, 2))

    def profile(self, lo: int, hi: int) -> list[dict]:
        return [
            {"d": d, "free": self.group(d)[0], "band": self.band(d)} for d in range(lo, hi + 1)
        ]


def qn_postnikov_profile(p: int, n: int) -> QnCoefficients:
    check_prime(p)
    if not isinstance(n, int) or n < 1:
        raise ValueError("Q_n needs n >= 1")
    return QnCoefficients(p, n)
