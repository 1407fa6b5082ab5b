import json
from math import ceil

import pytest

from ktate.laurent import Direction, RationalFunction, W, expand, rf_eq
from ktate.tate import (
    TateResult,
    consistency_check,
    f_general,
    f_p2,
    qn_min_valuation,
    qn_postnikov_profile,
    tate_decomposition,
    tate_homotopy,
)


def test_decomposition_examples():
    t = tate_decomposition(2, 1)
    assert t.q_multiplicity == RationalFunction(1)
    assert t.f_hom.is_zero() and t.f_coh.is_zero()
    assert tate_decomposition(2, 0).is_zero()
    assert tate_decomposition(2, 2).q_multiplicity == RationalFunction(1 + 2 * W**-2)


@pytest.mark.parametrize("p,top", [(2, 8), (3, 4), (5, 4)])
def test_consistency(p, top):
    for n in range(top + 1):
        assert consistency_check(p, n)


def test_general_formula_at_two():
    for n in range(9):
        a, b = f_p2(n), f_general(2, n)
        assert rf_eq(a[0] + a[1], b[0] + b[1])
        assert rf_eq(a[0], b[0]) and rf_eq(a[1], b[1])


@pytest.mark.parametrize("p,top", [(2, 8), (3, 4), (5, 4)])
def test_q_multiplicity_shape(p, top):
    for n in range(1, top + 1):
        q = tate_decomposition(p, n).q_multiplicity.as_laurent()
        assert q[0] == 1
        assert q[-2 * n * (p - 1)] == 0
        assert all(c > 0 for _, c in q)
        assert all(d % 2 == 0 and -2 * n * (p - 1) < d <= 0 for d, _ in q)


@pytest.mark.parametrize("p,top", [(2, 8), (3, 4), (5, 4)])
def test_f_nonnegative(p, top):
    for n in range(top + 1):
        t = tate_decomposition(p, n)
        assert min(t.f_coefficients(-20, 50).values) >= 0
        assert min(expand(t.f_hom, Direction.AT_ZERO, -20, 50).values) >= 0
        assert min(expand(t.f_coh, Direction.AT_INFINITY, -20, 50).values) >= 0


def test_homotopy_examples():
    g = tate_homotopy(2, 1, -4, 4)
    assert [g[d] for d in range(-4, 5)] == [(1, ()), (0, ())] * 4 + [(1, ())]
    assert tate_homotopy(2, 0, -4, 4).is_zero()
    g = tate_homotopy(2, 2, 0, 0)
    t = tate_decomposition(2, 2)
    q = t.q_multiplicity.as_laurent()
    assert g[0] == (sum(c for _, c in q), (2,) * t.f_coefficients(0, 0)[0])


def test_homotopy_window_stable():
    for p, n in ((2, 3), (3, 2)):
        wide = tate_homotopy(p, n, -30, 30)
        assert tate_homotopy(p, n, -10, 10) == wide.restrict(-10, 10)


def test_homotopy_odd_degrees_follow_f():
    for p, n in ((2, 3), (3, 2), (5, 2)):
        t = tate_decomposition(p, n)
        f = t.f_coefficients(-40, 30)
        g = tate_homotopy(p, n, -30, 30)
        for d in range(-29, 30, 2):
            expected = sum(f[d - 2 * j] for j in range(p - 1))
            assert g[d][0] == 0
            assert len(g[d][1]) == expected


def test_qn_lattice():
    for p in (2, 3, 5):
        for n in range(1, 5):
            for m in range(-20, 25):
                v = qn_min_valuation(p, n, m)
                assert v == min(max(0, ceil(-m / (p - 1))), ceil(n - 1 - m / (p - 1)))
            prof = qn_postnikov_profile(p, n)
            assert all(prof.group(d) == (1, ()) for d in range(-20, 21, 2))
            assert all(prof.group(d) == (0, ()) for d in range(-19, 20, 2))


def test_qn_bands():
    assert qn_postnikov_profile(2, 1).middle_band() == [0]
    assert qn_postnikov_profile(2, 3).middle_band() == [0, 2, 4]
    prof = qn_postnikov_profile(3, 2)
    assert prof.middle_band() == [0, 2, 4]
    assert [prof.band(d) for d in (-2, 0, 4, 6, 8)] == ["lower", "middle", "middle", "unassigned", "upper"]
    # at p = 2 the bands tile every even degree
    prof = qn_postnikov_profile(2, 4)
    assert "unassigned" not in {prof.band(d) for d in range(-10, 20, 2)}


def test_json_and_errors():
    t = tate_decomposition(3, 2)
    data = json.loads(json.dumps(t.to_json()))
    assert set(data) == {"prime", "n", "q_multiplicity", "f_hom", "f_coh"}
    assert TateResult.from_json(data) == t
    with pytest.raises(ValueError):
        tate_decomposition(2, -1)
    with pytest.raises(ValueError):
        qn_postnikov_profile(2, 0)
    with pytest.raises(ValueError):
        tate_homotopy(2, 1, 3, 1)
