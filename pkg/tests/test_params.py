import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hyperbound import (
    bessel_rates,
    check_weak_supermajorization,
    coeff_f,
    condition_report,
    elem_sym,
    parametric_excess,
    rising_factorial,
    v_nonneg_check,
)
from hyperbound.errors import DimensionMismatch, NonPositiveParameter, ShapeError
from hyperbound.params import (
    as_params,
    coeff_ratio,
    esym_dominance,
    log_coeff_f,
    log_coeff_sequence,
    log_rising_factorial,
    q2_exact,
    ratio_chain_decreasing,
    sorted_view,
    symmetric_chain,
    symmetric_geq1,
    v_function,
)

from conftest import params


def test_elem_sym_examples():
    assert elem_sym((1, 2, 3)) == [1, 6, 11, 6]
    assert elem_sym(()) == [1]
    assert elem_sym((2, 2)) == [1, 4, 4]


@given(st.lists(st.floats(-5, 5), min_size=0, max_size=6))
def test_elem_sym_matches_polynomial_expansion(xs):
    coeffs = np.poly1d([1.0])
    for x in xs:
        coeffs = coeffs * np.poly1d([1.0, x])
    # poly1d is highest degree first: coefficient of x^(n-k) is e_k
    expected = coeffs.coeffs if xs else np.array([1.0])
    got = np.array(elem_sym(xs))
    scale = max(1.0, float(np.max(np.abs(expected))))
    assert np.allclose(got, expected, rtol=1e-12, atol=1e-12 * scale)


def test_rising_factorial_examples():
    assert rising_factorial(2, 3) == 24
    assert rising_factorial(7.3, 0) == 1
    assert rising_factorial(0.5, 2) == 0.75


def test_log_rising_factorial_sign_and_zero():
    lf, s = log_rising_factorial(-2.5, 3)  # (-2.5)(-1.5)(-0.5)
    assert s == -1 and math.isclose(math.exp(lf), 1.875)
    assert log_rising_factorial(-2.0, 4) == (-math.inf, 0)
    lf, s = log_rising_factorial(1.5, 400)
    assert s == 1 and math.isclose(lf, float(mpmath.log(mpmath.rf(1.5, 400))), rel_tol=1e-13)


def test_coeff_f_examples():
    assert coeff_f((1, 2), (2, 4), 1) == pytest.approx(0.25)
    assert coeff_f((1.7, 3.1), (0.4,), 0) == 1
    assert coeff_f((1,), (1, 2), 2) == pytest.approx(1 / 6, rel=1e-15)


@given(params(0, 3), params(1, 3))
def test_coeff_recurrence_matches_ratio(A, B):
    logf, sign = log_coeff_sequence(A, B, 50)
    n = np.arange(50)
    r = coeff_ratio(A, B, n.astype(float))
    assert np.allclose(logf[1:] - logf[:-1], np.log(np.abs(r)), rtol=1e-12, atol=1e-12)
    lf, s = log_coeff_f(A, B, 50)
    assert math.isclose(lf, logf[-1], rel_tol=1e-12, abs_tol=1e-10)


def test_parametric_excess_examples():
    assert parametric_excess((1, 2, 3), (2, 3, 4)) == 3
    assert parametric_excess((4.2, 1.1), (4.2, 1.1)) == 0
    assert parametric_excess((0.5,), (1.5, 1)) == 2


def test_weak_supermajorization_examples():
    r = check_weak_supermajorization((1, 3), (2, 2))
    assert r.weak and r.witness is None and r.majorized
    assert check_weak_supermajorization((2.5, 0.7), (0.7, 2.5)).majorized
    r = check_weak_supermajorization((2, 2), (1, 3))
    assert not r.weak and r.witness == 1


def test_weak_supermajorization_errors():
    with pytest.raises(DimensionMismatch):
        check_weak_supermajorization((1,), (1, 2))
    with pytest.raises(NonPositiveParameter):
        check_weak_supermajorization((1, -1), (1, 2))


def test_sorted_view_preserves_input():
    a = [3.0, 1.0, 2.0]
    assert sorted_view(a) == (1.0, 2.0, 3.0)
    assert a == [3.0, 1.0, 2.0]
    with pytest.raises(ValueError):
        as_params([1.0, math.nan])


def test_v_nonneg_examples():
    r = v_nonneg_check((1, 3), (2, 2))
    assert r.nonneg and abs(r.v_min) <= 1e-12
    r = v_nonneg_check((1.3, 2.2), (1.3, 2.2))
    assert r.nonneg and r.v_min == 0
    r = v_nonneg_check((2, 2), (1, 3))
    assert not r.nonneg and r.v_min < 0


def test_v_function_closed_form():
    t = np.linspace(0.01, 0.99, 17)
    assert np.allclose(v_function((1, 3), (2, 2), t), t * (1 - t) ** 2, atol=1e-15)


@given(params(1, 4), params(1, 4))
def test_tomic_implication(A, B):
    assume(len(A) == len(B))
    m = check_weak_supermajorization(A, B)
    if m.majorized:
        assert m.weak and abs(m.psi) <= 1e-9
    if m.weak:
        assert v_nonneg_check(A, B).v_min >= -1e-12


@given(params(1, 3), params(1, 3))
def test_negative_excess_breaks_nonnegativity(A, B):
    assume(len(A) == len(B) and parametric_excess(A, B) < -1e-6)
    assert not v_nonneg_check(A, B).nonneg


def test_symmetric_predicates_examples():
    assert symmetric_chain((1, 2), (2, 4)) is True
    assert symmetric_geq1((1, 2), (2, 4)) is True
    assert esym_dominance((1,), (1, 2)) is True
    r = condition_report((1, 3), (2, 2))
    assert r.q2_exact is True and r.q2_agrees is True
    assert symmetric_chain((1,), (1, 2)) is None


@given(params(1, 3), params(1, 3))
def test_chain_implies_geq1(A, B):
    assume(len(A) == len(B))
    if symmetric_chain(A, B):
        assert symmetric_geq1(A, B)


def test_ratio_chain_decreasing_makes_ratio_decrease():
    A, B = (1.0,), (1.0, 2.0)
    assert ratio_chain_decreasing(A, B) is True
    r = coeff_ratio(A, B, np.linspace(0, 20, 50))
    assert np.all(np.diff(r) <= 0)


def test_q2_exact_boundary():
    assert q2_exact((1, 3), (2, 2)) is True
    assert q2_exact((1, 3.5), (2, 2)) is False  # psi < 0
    assert q2_exact((3, 3), (2, 4)) is False  # min test fails
    assert q2_exact((1,), (2,)) is None


def test_bessel_rates_examples():
    r = bessel_rates((1,), (1, 2))
    assert (r.c, r.d) == pytest.approx((2, 2))
    r = bessel_rates((1,), (0.5, 1))
    assert (r.c, r.d) == pytest.approx((0.5, 0.5))
    r = bessel_rates((2,), (1, 1))
    assert (r.c, r.d) == pytest.approx((0.5, 0.0)) and not r.d_positive
    with pytest.raises(ShapeError):
        bessel_rates((1, 2), (1, 2))


@given(params(0, 3), params(1, 4))
def test_bessel_rates_order(A, B):
    assume(len(A) == len(B) - 1)
    r = bessel_rates(A, B)
    assert r.d <= r.c and r.c > 0
