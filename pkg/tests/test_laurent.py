import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktate.laurent import (
    RF_ONE,
    RF_ZERO,
    CoefficientTable,
    Direction,
    LaurentPolynomial,
    NonUnitLeadingTerm,
    RationalFunction,
    W,
    expand,
    rf_add,
    rf_eq,
    rf_inverse_variable,
    rf_mul,
)

ONE = LaurentPolynomial(1)


def rf(num, den=1):
    return RationalFunction(num, den)


# -- examples ---------------------------------------------------------------


def test_add_examples():
    assert rf_add(rf(1, 1 - W), rf(-1, 1 - W)) == RF_ZERO
    assert rf_add(rf(1, 1 - W), rf(-1, 1 - W)).num.is_zero()
    u = W
    lhs = rf_add(rf(u**4, 1 - u), rf(-(u**6), 1 - u**3))
    assert rf_eq(lhs, rf(u**4 * (1 + u), 1 - u**3))
    assert rf_add(rf(W), rf(W**2)) == rf(W + W**2)


def test_mul_examples():
    assert rf_mul(rf(1 - W), rf(1, 1 - W)) == RF_ONE
    assert rf_mul(rf(W**2, (1 - W**2) ** 2), rf(W**2)) == rf(W**4, (1 - W**2) ** 2)
    assert rf_mul(rf(W**-4), rf(W**6)) == rf(W**2)


def test_eq_examples():
    assert rf_eq(rf(1 - W**2), rf((1 - W) * (1 + W)))
    assert not rf_eq(rf(1, 1 - W), rf(1, 1 - W**2))


def test_inverse_variable_examples():
    got = rf_inverse_variable(rf(W**2, 1 - W))
    assert rf_eq(got, rf(W**-1, W - 1))
    assert rf_inverse_variable(RF_ONE) == RF_ONE


def test_expand_examples():
    assert expand(rf(W**2, (1 - W**2) ** 2), Direction.AT_ZERO, 0, 8).values == (0, 0, 1, 0, 2, 0, 3, 0, 4)
    assert expand(rf(1, 1 - W), Direction.AT_ZERO, 0, 3).values == (1, 1, 1, 1)
    assert expand(rf(1, 1 - W**-1), Direction.AT_INFINITY, -3, 0).values == (1, 1, 1, 1)


def test_expand_non_unit():
    with pytest.raises(NonUnitLeadingTerm):
        expand(rf(1, 2 - W), Direction.AT_ZERO, 0, 3)
    with pytest.raises(NonUnitLeadingTerm):
        expand(rf(1, 1 - 2 * W), Direction.AT_INFINITY, -3, 0)
    # fine the other way round
    assert expand(rf(1, 1 - 2 * W), Direction.AT_ZERO, 0, 3).values == (1, 2, 4, 8)


def test_canonical_form():
    a = rf(W**3 * (1 - W), W * (1 - W**2))
    assert a.den[0] > 0 and a.den.low == 0
    assert a.num == W**2 and a.den == 1 + W
    b = rf(-2 * W, -4 * W**2)
    # content reduced and the monomial moved to the numerator
    assert b.num == W**-1 and b.den == LaurentPolynomial(2)
    assert rf(6, 4) == rf(3, 2)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rf(1, 0)


def test_big_binomials():
    p = (1 + W) ** 64
    assert p[32] == 1832624140942590534


def test_json_roundtrip():
    a = rf(3 * W**-2 - W**5, 1 - W**3)
    data = json.loads(json.dumps(a.to_json()))
    assert RationalFunction.from_json(data) == a
    assert set(data) == {"num", "den"}


def test_coefficient_table_validation():
    with pytest.raises(ValueError):
        CoefficientTable(2, 1, ())
    with pytest.raises(ValueError):
        CoefficientTable(0, 2, (1, 2))


def test_substitute_and_negative_power():
    f = 1 + W + W**2
    assert f.substitute(2) == 1 + W**2 + W**4
    assert f.substitute(1, -1) == 1 - W + W**2
    assert (-W) ** -3 == -(W**-3)
    with pytest.raises(ValueError):
        (1 + W) ** -1


# -- properties ---------------------------------------------------------------

coeff = st.integers(-5, 5)
poly = st.builds(
    lambda low, cs: LaurentPolynomial.from_dense(low, cs),
    st.integers(-3, 3),
    st.lists(coeff, min_size=0, max_size=4),
)
nonzero_poly = poly.filter(lambda p: not p.is_zero())
ratfun = st.builds(lambda n, d: RationalFunction(n, d), poly, nonzero_poly)
# denominators with unit constant term expand at zero
unit_den = st.builds(
    lambda sign, cs: LaurentPolynomial.from_dense(0, [sign] + cs),
    st.sampled_from([1, -1]),
    st.lists(coeff, max_size=3),
)
series = st.builds(lambda n, d: RationalFunction(n, d), poly, unit_den)

MANY = settings(max_examples=1000)


@MANY
@given(ratfun, ratfun, ratfun)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RF_ZERO
    assert a * RF_ONE == a


@MANY
@given(ratfun)
def test_inverse_variable_involution(a):
    back = rf_inverse_variable(rf_inverse_variable(a))
    assert back == a
    assert (back.num, back.den) == (a.num, a.den)


@MANY
@given(series, series)
def test_eq_matches_expansion(a, b):
    lo, hi = -8, 12
    same = rf_eq(a, b)
    ea = expand(a, Direction.AT_ZERO, lo, hi)
    eb = expand(b, Direction.AT_ZERO, lo, hi)
    if same:
        assert ea == eb
    # a - b has bounded numerator, so a long enough agreement forces equality
    if expand(a - b, Direction.AT_ZERO, -12, 30).values == (0,) * 43:
        assert same


@MANY
@given(series, series)
def test_expand_product_is_convolution(a, b):
    lo = -6
    hi = 10
    ea = expand(a, Direction.AT_ZERO, lo, hi)
    eb = expand(b, Direction.AT_ZERO, lo, hi)
    eab = expand(a * b, Direction.AT_ZERO, lo, hi)
    # both series start at degree >= -6, so window [lo - 6, hi] suffices
    wide_a = expand(a, Direction.AT_ZERO, lo - 6, hi + 6)
    wide_b = expand(b, Direction.AT_ZERO, lo - 6, hi + 6)
    for d in range(lo, hi + 1):
        conv = sum(wide_a[i] * wide_b.get(d - i) for i in range(lo - 6, hi + 7))
        assert conv == eab[d]
    assert ea.lo == eb.lo == lo


@MANY
@given(ratfun)
def test_canonical_invariants(a):
    assert a.den.low == 0 and a.den[0] > 0
    if a.num.is_zero():
        assert a.den == ONE


@settings(max_examples=300)
@given(series)
def test_expand_at_infinity_is_inverse_of_zero(a):
    b = rf_inverse_variable(a)
    e0 = expand(a, Direction.AT_ZERO, -5, 10)
    ei = expand(b, Direction.AT_INFINITY, -10, 5)
    assert e0.values == ei.values[::-1]
