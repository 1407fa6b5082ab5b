"""Reconciliation with the Bruner-Greenlees formula at p = 2.

Their H-summand Poincaré series for ``k ^ B(Z/2)^r_+`` is
``[T_2] + ... + [T_r]`` in a variable ``t`` with ``x = t^2``.  After the
``Start(2)`` shift (multiplication by ``t^-4``) it must equal our H
multiplicity.  Every intermediate step of the derivation is exposed as
a named identity so that a failure points at one step.

All rational functions here are in the single variable ``w``.  It plays
the role of ``t`` (and of ``u = -t`` in the regrouped forms).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .borel import homology_h_multiplicity
from .laurent import (
    ONE_POLY,
    Direction,
    LaurentPolynomial,
    RationalFunction,
    W,
    expand,
    rf_eq,
)

__all__ = [
    "IndexOutOfRange",
    "BGSeriesContext",
    "tail",
    "bg_Ti",
    "bg_sum",
    "bg_closed",
    "ours",
    "shifted",
    "bg_vs_ours",
    "IDENTITIES",
    "check_identities",
    "bg_report",
]


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class BGSeriesContext:
    """Rank ``r >= 2``; ``t`` is the series variable and ``x = t^2``."""

    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise IndexOutOfRange(f"r must be an integer >= 2, got {self.r!r}")


T = W
ONE = ONE_POLY


def _rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def _mono(d: int, c: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(d, c)


def _neg_t_power(e: int) -> LaurentPolynomial:
    # (-t)^e
    return _mono(e, -1 if e % 2 else 1)


def tail(f: LaurentPolynomial, i: int, base_power: int = 1) -> LaurentPolynomial:
    """Terms of ``f`` whose index is at least ``i``.

    ``f`` is a polynomial in ``x``.  It is read as a polynomial in
    ``x**base_power``, and the index of a term is its exponent in that
    base.  So ``tail((1 - x)**r, i)`` drops the binomial terms below
    ``C(r, i)``, and so does ``tail((1 - x**2)**r, i, 2)``.
    """
    if base_power < 1:
        raise ValueError("base_power must be positive")
    bad = [d for d, _ in f if d < 0 or d % base_power]
    if bad:
        raise ValueError(f"not a polynomial in x^{base_power}: exponents {bad}")
    return LaurentPolynomial({d: c for d, c in f if d >= i * base_power})


def _x_poly(base_power: int, r: int) -> LaurentPolynomial:
    # (1 - x^base_power)^r as a polynomial in x
    return (ONE - _mono(base_power)) ** r


def _check(r: int, i: int | None = None) -> None:
    BGSeriesContext(r)
    if i is not None and not 2 <= i <= r:
        raise IndexOutOfRange(f"index i must satisfy 2 <= i <= r, got i={i}, r={r}")


def _part1_term(r: int, i: int) -> LaurentPolynomial:
    return _neg_t_power(4 - i) * tail(_x_poly(1, r), i).substitute(2)


def _part2_term(r: int, i: int) -> LaurentPolynomial:
    return _neg_t_power(4 - i) * _mono(2 - 2 * i) * tail(_x_poly(2, r), i, 2).substitute(2)


def bg_Ti(r: int, i: int) -> RationalFunction:
    """``[T_i] = (-t)^(4-i) [(1-x)^r_[i] - x^(1-i) (1-x^2)^r_[i]] / (1-x)^(r+1)``."""
    _check(r, i)
    return RationalFunction(_part1_term(r, i) - _part2_term(r, i), (ONE - T**2) ** (r + 1))


def bg_sum(r: int) -> RationalFunction:
    """``[T_2] + ... + [T_r]``."""
    _check(r)
    num = sum((_part1_term(r, i) - _part2_term(r, i) for i in range(2, r + 1)), ONE * 0)
    return RationalFunction(num, (ONE - T**2) ** (r + 1))


def bg_closed(r: int) -> RationalFunction:
    """``-t^3/(1+t^3) [((1+t^2)^r - 1)/(1-t^2) + t((1-t)^r - 1)/((1-t)^r (1+t))]``."""
    _check(r)
    inner = _rf((ONE + T**2) ** r - 1) / (ONE - T**2) + _rf(T * ((ONE - T) ** r - 1)) / (
        (ONE - T) ** r * (ONE + T)
    )
    return -_rf(T**3) / (ONE + T**3) * inner


def ours(r: int) -> RationalFunction:
    """Our H multiplicity of ``k ^ B(Z/2)^r_+``, transcribed in ``w``."""
    _check(r)
    w = W
    a, b = ONE + w**2, ONE - w
    inner = _rf(ONE - a**r * b**r) / (ONE - a * b) - _rf(ONE - b**r) / (ONE - b)
    return inner / ((ONE - w**2) ** 2 * b ** (r - 1))


def shifted(r: int) -> RationalFunction:
    """The closed Bruner-Greenlees series after ``Start(2)``."""
    _check(r)
    inner = _rf((ONE + T**2) ** r - 1) / (ONE - T**2) + _rf(T * ((ONE - T) ** r - 1)) / (
        (ONE - T) ** r * (ONE + T)
    )
    return _rf(-1) / (T * (ONE + T**3)) * inner


def bg_vs_ours(r: int) -> bool:
    """``t^-4 * ([T_2] + ... + [T_r]) == ours(r)`` exactly."""
    return rf_eq(bg_sum(r).shift(-4), ours(r))


# ---------------------------------------------------------------------------
# intermediate identities


def _part1_closed(r: int) -> RationalFunction:
    return _rf(T**3) / (ONE + T) * (T * ((ONE + T) ** r - 1) + ((ONE - T**2) ** r - 1))


def _part2_closed(r: int) -> RationalFunction:
    return _rf(T**3) / (ONE + T**3) * (T**3 * ((ONE + T) ** r - 1) + ((ONE - T**4) ** r - 1))


def _answer(r: int) -> RationalFunction:
    return (_part1_closed(r) - _part2_closed(r)) / (ONE - T**2) ** (r + 1)


def _withneg(r: int) -> RationalFunction:
    # the same series written in u = -t; here w stands for u
    u = W
    one_u = ONE - u
    col = (
        _rf(u**4) / one_u * ((one_u) ** r - 1)
        - _rf(u**3) / one_u * ((ONE - u**2) ** r - 1)
        - _rf(u**6) / (ONE - u**3) * (one_u**r - 1)
        + _rf(u**3) / (ONE - u**3) * ((ONE - u**4) ** r - 1)
    )
    return col / (ONE - u**2) ** (r + 1)


def _id_part1(r):
    lhs = sum((_part1_term(r, i) for i in range(2, r + 1)), ONE * 0)
    return rf_eq(_rf(lhs), _part1_closed(r))


def _id_part2(r):
    lhs = sum((_part2_term(r, i) for i in range(2, r + 1)), ONE * 0)
    return rf_eq(_rf(lhs), _part2_closed(r))


def _id_answer(r):
    return rf_eq(bg_sum(r), _answer(r))


def _id_withneg(r):
    return rf_eq(_withneg(r).substitute(1, -1), _answer(r))


def _id_column1(r):
    u = W
    lhs = (_rf(u**4) / (ONE - u) - _rf(u**6) / (ONE - u**3)) * ((ONE - u) ** r - 1)
    rhs = _rf(u**4 * (ONE + u)) / (ONE - u**3) * ((ONE - u) ** r - 1)
    return rf_eq(lhs, rhs)


def _id_column2(r):
    u = W
    lhs = _rf(u**3) / (ONE - u**3) * ((ONE - u**4) ** r - 1) - _rf(u**3) / (ONE - u) * (
        (ONE - u**2) ** r - 1
    )
    mid = _rf(u**3) / (ONE - u**3) * ((ONE - u**2) ** r * (ONE + u**2) ** r - 1) - _rf(
        u**3 * (ONE + u + u**2)
    ) / (ONE - u**3) * ((ONE - u**2) ** r - 1)
    rhs = _rf(u**3) / (ONE - u**3) * (((ONE + u**2) ** r - 1) * (ONE - u**2) ** r) - _rf(
        u**4 * (ONE + u)
    ) / (ONE - u**3) * ((ONE - u**2) ** r - 1)
    return rf_eq(lhs, mid) and rf_eq(mid, rhs)


def _id_combined(r):
    u = W
    second = -_rf(u**4 * (ONE + u)) / (ONE - u**3) * ((ONE - u**2) ** r - 1)
    column1 = _rf(u**4 * (ONE + u)) / (ONE - u**3) * ((ONE - u) ** r - 1)
    rhs = -_rf(u**4 * (ONE + u)) / (ONE - u**3) * (((ONE + u) ** r - 1) * (ONE - u) ** r)
    return rf_eq(second + column1, rhs)


def _id_u_final(r):
    u = W
    form = _rf(u**3) / (ONE - u**3) * (
        _rf((ONE + u**2) ** r - 1) / (ONE - u**2)
        - _rf(u * ((ONE + u) ** r - 1)) / ((ONE + u) ** r * (ONE - u))
    )
    return rf_eq(_withneg(r), form)


def _id_bganswer(r):
    return rf_eq(bg_sum(r), bg_closed(r))


def _id_start2(r):
    # the lowest term of t^-4 * sum is C(r,2) t^2
    table = expand(bg_sum(r).shift(-4), Direction.AT_ZERO, -10, 2)
    return all(table[d] == 0 for d in range(-10, 2)) and table[2] == comb(r, 2)


def _id_Ti_leading(r):
    for i in range(2, r + 1):
        s = expand(bg_Ti(r, i) * (ONE - T**2) ** r, Direction.AT_ZERO, 0, i + 8)
        want = {i + 4: comb(r, i), i + 6: -comb(r, i + 1), i + 8: -comb(r, i + 1) + comb(r, i + 2)}
        if any(s[d] != want.get(d, 0) for d in range(0, i + 9)):
            return False
    return True


def _id_shifted(r):
    return rf_eq(bg_closed(r).shift(-4), shifted(r))


def _id_shifted_rewrite(r):
    t = T
    num = ((ONE + t**2) ** r - 1) * (ONE - t) ** r + t * (ONE - t) * ((ONE - t) ** r - 1)
    form = _rf(-1) / (t * (ONE - t + t**2)) * _rf(num) / ((ONE - t**2) ** 2 * (ONE - t) ** (r - 1))
    return rf_eq(shifted(r), form)


def _ab():
    return ONE + W**2, ONE - W


def _id_denominator(r):
    a, b = _ab()
    den = (ONE - a * b) * (ONE - b)
    return den == W**2 * (ONE - W + W**2)


def _numerator(r):
    a, b = _ab()
    return (ONE - a**r * b**r) * (ONE - b) - (ONE - a * b) * (ONE - b**r)


def _id_ourschanged(r):
    form = _rf(_numerator(r)) / (W**2 * (ONE - W + W**2)) / ((ONE - W**2) ** 2 * (ONE - W) ** (r - 1))
    return rf_eq(ours(r), form)


def _id_terms(r):
    a, b = _ab()
    w = W
    term1 = -w * (ONE + w**2) ** r * (ONE - w) ** r
    term2 = w**2 * (ONE - w)
    term3 = w * (ONE - w) ** r - w**2 * (ONE - w) ** (r + 1)
    regroup = a**r * (b ** (r + 1) - b**r) + (a - 1) * b + b**r * (ONE - a * b)
    return (
        _numerator(r) == regroup
        and a**r * (b ** (r + 1) - b**r) == term1
        and (a - 1) * b == term2
        and b**r * (ONE - a * b) == term3
        and _numerator(r) == term1 + term2 + term3
    )


def _id_compare(r):
    t = T
    compare1 = _rf(_numerator(r)) / W
    compare2 = -((ONE + t**2) ** r) * (ONE - t) ** r + (ONE - t) ** r - t * (ONE - t) ** (r + 1) + t * (ONE - t)
    inner = -(((ONE + t**2) ** r - 1) * (ONE - t) ** r + t * (ONE - t) * ((ONE - t) ** r - 1))
    return rf_eq(compare1, _rf(compare2)) and compare2 == inner


def _id_lemma(r):
    return rf_eq(shifted(r), ours(r))


def _id_ours_borel(r):
    return rf_eq(ours(r), homology_h_multiplicity(2, r))


#: Named identities in derivation order.
IDENTITIES: tuple[tuple[str, Callable[[int], bool]], ...] = (
    ("part1", _id_part1),
    ("part2", _id_part2),
    ("answer", _id_answer),
    ("withneg", _id_withneg),
    ("column1", _id_column1),
    ("column2", _id_column2),
    ("combined", _id_combined),
    ("u_final", _id_u_final),
    ("bganswer", _id_bganswer),
    ("Ti_leading_terms", _id_Ti_leading),
    ("start2_lowest_term", _id_start2),
    ("shifted", _id_shifted),
    ("shifted_rewrite", _id_shifted_rewrite),
    ("denominator", _id_denominator),
    ("ourschanged", _id_ourschanged),
    ("term1_term2_term3", _id_terms),
    ("compare1_compare2", _id_compare),
    ("lemma_shifted_ours", _id_lemma),
    ("ours_matches_borel", _id_ours_borel),
    ("sum_vs_ours", bg_vs_ours),
)


def check_identities(r: int) -> list[tuple[str, bool]]:
    _check(r)
    return [(name, bool(fn(r))) for name, fn in IDENTITIES]


def bg_report(r: int) -> dict:
    """Everything checked at rank ``r``, in report form."""
    return {
        "r": r,
        "sum": bg_sum(r).to_json(),
        "closed": bg_closed(r).to_json(),
        "ours": ours(r).to_json(),
        "all_identities": [{"name": n, "holds": h} for n, h in check_identities(r)],
    }
