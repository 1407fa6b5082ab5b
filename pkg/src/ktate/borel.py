"""Borel homology and cohomology of elementary abelian p-groups.

Both sides are computed two ways: by iterating the smash product of
``grmod`` against the rank-one answer, and from the closed formulas.
The two must agree exactly; the test suite checks this over ranges of
``(p, n)``.

Notation: ``T = 1 + w^2 + ... + w^(2(p-1))`` and
``D = (1 - w^(2(p-1))) (1 - w^2)``, which is ``(1 - w^2)^2`` at ``p = 2``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .grmod import H, K, M, P, Decomposition, SmashKind, check_prime, internal_poincare, smash
from .laurent import ONE_POLY, RF_ONE, RationalFunction, W, geometric_sum
from .resolve import GradedAbelianGroup, coefficient_groups, decomposition_groups

__all__ = [
    "Method",
    "Side",
    "BorelResult",
    "borel_homology_recursive",
    "borel_homology_closed",
    "borel_cohomology_closed",
    "borel_cohomology_recursive",
    "homology_h_multiplicity",
    "cohomology_h_multiplicity",
    "printed_p_shift",
    "homology_coefficients",
]


class Method(enum.Enum):
    RECURSIVE = "recursive"
    CLOSED_FORM = "closed"


class Side(enum.Enum):
    HOMOLOGY = "homology"
    COHOMOLOGY = "cohomology"


@dataclass(frozen=True)
class BorelResult:
    prime: int
    n: int
    decomposition: Decomposition
    method: Method
    side: Side

    def multiplicity(self, sym) -> RationalFunction:
        return self.decomposition.multiplicity(sym)

    def to_json(self) -> dict:
        out = self.decomposition.to_json()
        out.update({"side": self.side.value, "method": self.method.value, "n": self.n})
        return out

    @classmethod
    def from_json(cls, data) -> "BorelResult":
        return cls(
            int(data["prime"]),
            int(data["n"]),
            Decomposition.from_json(data),
            Method(data["method"]),
            Side(data["side"]),
        )


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"rank n must be a nonnegative integer, got {n!r}")


def _period(p: int) -> int:
    return 2 * (p - 1)


def _bracket(T, one_minus, n: int, var) -> RationalFunction:
    # (1 - T^n b^n)/(1 - T b) - (1 - b^n)/(1 - b), with b = 1 - var
    b = one_minus
    first = RationalFunction(ONE_POLY - T**n * b**n, ONE_POLY - T * b)
    second = RationalFunction(ONE_POLY - b**n, var)
    return first - second


def homology_h_multiplicity(p: int, n: int) -> RationalFunction:
    """Closed-form H multiplicity of Borel homology at rank ``n``."""
    T = geometric_sum(2, p)
    b = ONE_POLY - W
    D = (ONE_POLY - W ** _period(p)) * (ONE_POLY - W**2)
    # (1-w)^(n-1) may be a negative power at n = 0; the bracket vanishes there
    return _bracket(T, b, n, W) / (RationalFunction(D) * RationalFunction(b) ** (n - 1))


def cohomology_h_multiplicity(p: int, n: int) -> RationalFunction:
    """Closed-form H multiplicity of Borel cohomology, built directly in ``v = w^-1``."""
    v = W**-1
    T = ONE_POLY + sum((v ** (2 * j) for j in range(1, p)), ONE_POLY * 0)
    b = ONE_POLY - v
    D = (ONE_POLY - v ** _period(p)) * (ONE_POLY - v**2)
    return _bracket(T, b, n, v) / (RationalFunction(D) * RationalFunction(b) ** (n - 1))


def _hom_base(p: int) -> Decomposition:
    # k ^ B(Z/p)_+ = k v M[-1](1 + w^2 + ... + w^(2(p-2)))
    return Decomposition(p, {K: RF_ONE, M: RationalFunction(W**-1 * internal_poincare(p))})


def _coh_base(p: int) -> Decomposition:
    # F(BZ/p_+, k) = k v P(1 + w^-2 + ... + w^(-2(p-2)))
    return Decomposition(p, {K: RF_ONE, P: RationalFunction(internal_poincare(p).inverse_variable())})


@lru_cache(maxsize=None)
def _hom_power(p: int, n: int) -> Decomposition:
    if n == 0:
        return Decomposition.unit(p)
    return smash(_hom_power(p, n - 1), _hom_base(p), SmashKind.ORDINARY)


@lru_cache(maxsize=None)
def _coh_power(p: int, n: int) -> Decomposition:
    if n == 0:
        return Decomposition.unit(p)
    return smash(_coh_power(p, n - 1), _coh_base(p), SmashKind.HAT)


def borel_homology_recursive(p: int, n: int) -> BorelResult:
    """``k ^ B(Z/p)^n_+`` by iterated smash products with the rank-one case."""
    check_prime(p)
    _check_n(n)
    return BorelResult(p, n, _hom_power(p, n), Method.RECURSIVE, Side.HOMOLOGY)


def borel_homology_closed(p: int, n: int) -> BorelResult:
    """``k ^ B(Z/p)^n_+`` from the closed formulas."""
    check_prime(p)
    _check_n(n)
    T = geometric_sum(2, p)
    terms = {
        K: RF_ONE,
        M: RationalFunction(W**-3 * (T**n - ONE_POLY)),
        H: homology_h_multiplicity(p, n),
    }
    return BorelResult(p, n, Decomposition(p, terms), Method.CLOSED_FORM, Side.HOMOLOGY)


def borel_cohomology_closed(p: int, n: int, unreduced: bool = False) -> BorelResult:
    """``F(B(Z/p)^n, k)`` from the closed formulas, P multiplicity as printed.

    With ``unreduced`` the split-off ``k`` of ``F(B(Z/p)^n_+, k)`` is added.
    """
    check_prime(p)
    _check_n(n)
    Tinv = geometric_sum(2, p).inverse_variable()
    scale = ONE_POLY if p == 2 else W**-1
    terms = {
        P: RationalFunction(scale * (Tinv**n - ONE_POLY)),
        H: cohomology_h_multiplicity(p, n),
    }
    if unreduced:
        terms[K] = RF_ONE
    return BorelResult(p, n, Decomposition(p, terms), Method.CLOSED_FORM, Side.COHOMOLOGY)


def printed_p_shift(p: int) -> int:
    """Exponent ``e`` with (recursive P multiplicity) = w^e * (printed P multiplicity).

    The recursion starts from the rank-one function spectrum with P in
    multiplicity ``1 + w^-2 + ... + w^-(2(p-2))``.  Iterating the hat
    product then gives P multiplicity ``w^2 (T'^n - 1)``, where ``T'`` is
    ``T`` in ``w^-1``.  The closed formulas use ``(T'^n - 1)`` at ``p = 2`` and
    ``w^-1 (T'^n - 1)`` at odd p.  The ratio does not depend on ``n``.
    """
    check_prime(p)
    return 2 if p == 2 else 3


def borel_cohomology_recursive(
    p: int, n: int, unreduced: bool = False, normalization: str = "printed"
) -> BorelResult:
    """``F(B(Z/p)^n, k)`` by iterated hat products with the rank-one case.

    ``normalization="printed"`` rescales the P multiplicity by
    ``w^-printed_p_shift(p)`` so it can be compared with the closed form;
    ``"definition"`` returns the multiplicity the recursion produces.
    The H multiplicity is never rescaled.
    """
    check_prime(p)
    _check_n(n)
    if normalization not in ("printed", "definition"):
        raise ValueError(f"unknown normalization {normalization!r}")
    dec = _coh_power(p, n)
    terms = dict(dec.terms)
    if not unreduced:
        terms.pop(K, None)
    if normalization == "printed" and P in terms:
        terms[P] = terms[P].shift(-printed_p_shift(p))
    return BorelResult(p, n, Decomposition(p, terms), Method.RECURSIVE, Side.COHOMOLOGY)


def homology_coefficients(
    p: int, n: int, lo: int, hi: int, reduced: bool = False
) -> GradedAbelianGroup:
    """Coefficient groups of ``k ^ B(Z/p)^n_+`` in degrees ``lo..hi``.

    The groups of every block come from the resolution oracle; the
    decomposition only supplies how many shifted copies appear.
    """
    check_prime(p)
    _check_n(n)
    dec = borel_homology_closed(p, n).decomposition
    if reduced:
        dec = Decomposition(p, {s: m for s, m in dec.terms.items() if s != K})
    return decomposition_groups(dec, lo, hi, lambda s, a, b: coefficient_groups(s, p, a, b))
