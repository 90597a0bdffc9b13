import math
from fractions import Fraction

import pytest

from bunkbed_lab.closedform import (
    asymptotic_reference,
    binomial,
    c_ratio,
    c_sum_bound_holds,
    closed_form_A,
    closed_form_B,
    closed_form_terms,
    euler_bounds,
    euler_squared_bounds,
    factorial,
    p_term,
    q_term,
    series_constants,
    term_ratios,
)
from bunkbed_lab.exceptions import OutOfRange


@pytest.mark.parametrize("n, a, b", [(3, 0, 1), (4, 4, 18), (5, 144, 387), (6, 5160, 11140)])
def test_closed_forms(n, a, b):
    assert closed_form_A(n) == a
    assert closed_form_B(n) == b


def test_primitives():
    assert binomial(0, 0) == 1
    assert binomial(10, 3) == 120
    assert binomial(3, 5) == 0
    assert factorial(5) == 120
    assert factorial(0) == 1
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_closed_form_terms():
    terms = closed_form_terms(4)
    assert terms.p == {1: 4}
    assert terms.q == {0: 18}
    assert terms.a == {1: (1,)}
    assert terms.b == {1: (2,)}
    assert terms.c == {0: (1, 2)}
    assert terms.to_dict()["q"] == {"0": "18"}
    assert closed_form_terms(6).p == {1: 5016, 2: 144}
    assert closed_form_terms(3).p == {}


def test_index_ranges():
    with pytest.raises(OutOfRange):
        closed_form_A(2)
    with pytest.raises(OutOfRange):
        closed_form_B(1)
    with pytest.raises(OutOfRange):
        p_term(6, 3)
    with pytest.raises(OutOfRange):
        p_term(6, 0)
    with pytest.raises(OutOfRange):
        q_term(6, 2)
    with pytest.raises(OutOfRange):
        c_ratio(6, 3, 0)
    with pytest.raises(OutOfRange):
        term_ratios(9, 3)
    with pytest.raises(OutOfRange):
        term_ratios(9, -1)
    with pytest.raises(OutOfRange):
        asymptotic_reference(3)


def test_euler_bounds():
    lower, upper = euler_bounds()
    assert lower < upper
    assert upper - lower < Fraction(1, 10**30)
    assert float(lower) == pytest.approx(math.e, rel=1e-15)
    e2_lower, e2_upper = euler_squared_bounds()
    assert e2_lower < e2_upper
    assert float(e2_lower) == pytest.approx(7.389056099, rel=1e-9)


def test_term_ratios_at_n9():
    first = term_ratios(9, 0)
    assert first.p_ratio is None
    assert first.q_ratio == Fraction(q_term(9, 1), q_term(9, 0))
    assert first.q_within_bound()
    assert first.p_within_bound() is None
    second = term_ratios(9, 1)
    assert second.p_ratio == Fraction(p_term(9, 2), p_term(9, 1))
    assert second.p_within_bound() and second.q_within_bound()
    assert second.to_dict()["p_ratio"] == str(second.p_ratio)


def test_ratio_bounds_up_to_60():
    for n in range(5, 61):
        for k in range(0, (n - 4) // 2 + 1):
            try:
                ratios = term_ratios(n, k)
            except OutOfRange:
                continue
            assert ratios.q_within_bound() in (True, None), (n, k)
            assert ratios.p_within_bound() in (True, None), (n, k)


def test_q_ratio_trend():
    at_50 = float(term_ratios(50, 0).q_ratio)
    at_100 = float(term_ratios(100, 0).q_ratio)
    assert at_50 == pytest.approx(1.0, rel=0.15)
    assert at_100 == pytest.approx(1.0, rel=0.10)
    assert abs(1.0 - at_100) < abs(1.0 - at_50)


def test_c_ratio_identity():
    for n in range(4, 30):
        for k in range(0, (n - 4) // 2 + 1):
            for t in range(0, n - 2 * k - 3):
                assert c_ratio(n, t, k) == Fraction((n - 2 * k - 3 - t) * (t + k + 2), t + 1)
                assert c_ratio(n, t, k) > 0


def test_c_sum_bound():
    for n in range(3, 40):
        for k in range(0, (n - 3) // 2 + 1):
            assert c_sum_bound_holds(n, k), (n, k)
    with pytest.raises(OutOfRange):
        c_sum_bound_holds(5, 2)


def test_a_below_b_and_increasing():
    previous = (closed_form_A(4), closed_form_B(4))
    for n in range(5, 61):
        current = (closed_form_A(n), closed_form_B(n))
        assert current[0] < current[1]
        assert current[0] > previous[0] and current[1] > previous[1]
        previous = current


@pytest.mark.slow
def test_a_below_b_up_to_200():
    for n in range(3, 201):
        assert closed_form_A(n) < closed_form_B(n)


def test_series_constants():
    with_weight, plain = series_constants()
    assert float(plain) == pytest.approx(2.279585302, rel=1e-9)
    assert float(with_weight) == pytest.approx(1.590636855, rel=1e-9)


def test_asymptotic_ratios():
    references = [asymptotic_reference(n) for n in (20, 30, 60, 100, 200)]
    for ratio in ("A_ratio", "B_ratio"):
        values = [getattr(reference, ratio) for reference in references]
        assert all(0 < value < 1 for value in values)
        assert values == sorted(values) and len(set(values)) == len(values)
        assert values[3] == pytest.approx(1.0, rel=0.10)
        assert values[4] == pytest.approx(1.0, rel=0.05)


def test_asymptotic_reference_to_dict():
    reference = asymptotic_reference(10)
    data = reference.to_dict()
    assert data["n"] == 10
    assert float(data["B_ref"]) == pytest.approx(float(reference.B_ref))
    assert data["A_ratio"] == reference.A_ratio
