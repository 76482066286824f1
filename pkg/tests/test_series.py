import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hyperbound import HyperSpec, derivative_pfq, eval_pfq, pfq
from hyperbound.errors import DomainError, PoleError, ShapeError
from hyperbound.series import cos_n, cos_n_hyper, pfq_grid

from conftest import params

# mpmath at 30 digits
FROZEN = [
    ((0.5,), (1.5,), -30.0, 0.16180215937964006969),
    ((1.5, 2.5), (3.7,), 0.99, 25.423000117566212532),
    ((1.2,), (2.3, 0.7), -40.0, -0.029330937595603931930),
    ((1, 1), (2, 2), -1.0, 0.79659959929705313428),
    ((), (0.3,), -50.0, -0.80332157503255654195),
    # heavy cancellation: needs the decimal escalation
    ((4, 10), (1,), -0.9375, 0.0002573890262276367),
    ((10, 10, 10), (0.1, 0.1), -0.99, 91.38780142807965),
]


def test_examples():
    assert pfq((), (), 1.0) == pytest.approx(math.e, rel=1e-14)
    assert pfq((1, 1), (2,), 0.5) == pytest.approx(2 * math.log(2), rel=1e-13)
    assert pfq((1,), (2,), 1.0) == pytest.approx(math.e - 1, rel=1e-14)
    assert pfq((), (1.5,), 0.25) == pytest.approx(math.sinh(1.0), rel=1e-14)


@pytest.mark.parametrize("A,B,x,ref", FROZEN)
def test_frozen_oracles(A, B, x, ref):
    r = eval_pfq(HyperSpec(A, B), x)
    assert r.value == pytest.approx(ref, rel=1e-10)
    assert r.abs_err >= 0 and r.terms_used >= 1


def test_closed_form_grids():
    z = np.linspace(-0.95, 0.95, 39)
    z = z[z != 0]
    v, _, _ = pfq_grid(HyperSpec((1, 1), (2,)), z)
    assert np.allclose(v, -np.log1p(-z) / z, rtol=1e-10, atol=0)
    x = np.linspace(-20, 20, 41)
    x = x[x != 0]
    v, _, _ = pfq_grid(HyperSpec((1,), (2,)), x)
    assert np.allclose(v, np.expm1(x) / x, rtol=1e-10, atol=0)
    x = np.linspace(0.1, 10, 25)
    v, _, _ = pfq_grid(HyperSpec((), (1.5,)), x**2 / 4)
    assert np.allclose(v, np.sinh(x) / x, rtol=1e-10, atol=0)


def test_spec_validation():
    with pytest.raises(ShapeError):
        HyperSpec((1, 2, 3), (4,))
    with pytest.raises(PoleError):
        HyperSpec((1,), (-2,))
    with pytest.raises(DomainError):
        eval_pfq(HyperSpec((1, 1), (2,)), 1.5)
    assert HyperSpec((1, 1), (2,)).radius == 1.0
    assert HyperSpec((1,), (2,)).radius == math.inf


def test_derivative_examples():
    assert derivative_pfq(HyperSpec((1.2,), (3.4,)), 0.7, 0).value == eval_pfq(HyperSpec((1.2,), (3.4,)), 0.7).value
    for n in range(5):
        assert derivative_pfq(HyperSpec((), ()), 0.0, n).value == 1.0
    assert derivative_pfq(HyperSpec((1, 1), (2,)), 0.0, 1).value == pytest.approx(0.5)


def test_cos_n_examples():
    assert cos_n(1, 1.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert cos_n(2, math.pi) == pytest.approx(-1.0, rel=1e-14)
    assert cos_n(3, 0.0) == 1.0


@given(st.integers(1, 5), st.floats(-5, 5))
def test_cos_n_matches_hypergeometric_form(n, z):
    assume(n > 1 or True)
    if n == 1:
        assert cos_n(1, z) == pytest.approx(math.exp(-z), rel=1e-10)
        return
    a, b = cos_n(n, z), cos_n_hyper(n, z)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


@given(params(0, 3), st.floats(-8, 8))
def test_identity_case_is_exponential(A, x):
    assert pfq(A, A, x) == pytest.approx(math.exp(x), rel=1e-12)


@given(params(0, 3, 0.1, 10), params(1, 4, 0.1, 10), st.floats(-0.99, 0.99))
def test_series_matches_mpmath(A, B, x):
    assume(len(A) <= len(B) + 1)
    got = eval_pfq(HyperSpec(A, B), x)
    ref = float(mpmath.hyper(list(A), list(B), x))
    assert abs(got.value - ref) <= 1e-10 * max(abs(ref), 1e-300) + 10 * got.abs_err


@given(params(2, 4, 0.1, 10), params(1, 4, 0.1, 10), st.floats(-0.99, 0.99))
def test_no_nonconvergence_inside_disk(A, B, x):
    # p = q + 1 at |x| <= 0.99 must always sum
    assume(len(A) == len(B) + 1)
    r = eval_pfq(HyperSpec(A, B), x)
    assert math.isfinite(r.value)


@given(params(0, 2), params(1, 3), st.floats(-3, 3))
def test_first_derivative_matches_finite_difference(A, B, x):
    assume(len(A) <= len(B))
    spec = HyperSpec(A, B)
    h = 1e-4
    fd = (pfq(A, B, x + h) - pfq(A, B, x - h)) / (2 * h)
    d = derivative_pfq(spec, x, 1).value
    assert abs(d - fd) <= 1e-6 * max(abs(d), 1e-2)
