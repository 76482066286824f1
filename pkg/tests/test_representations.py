import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperbound import (
    SplitSpec,
    cosine_rep_eval,
    general_split_eval,
    hyp_eval,
    hyp_grid,
    laplace_rep_eval,
    rep_vs_series,
    small_p_rep_eval,
    stieltjes_rep_eval,
)
from hyperbound.errors import ConvergenceConditionViolated, ShapeError, SpecViolation
from hyperbound.representations import cosine_alphas, general_split_grid, stieltjes_rep_grid
from hyperbound.sampling import REP_KINDS, REP_TARGET, rep_case
from hyperbound.series import pfq

from conftest import dominated


def test_stieltjes_examples():
    assert stieltjes_rep_eval(1, (1,), (2,), 0.5).value == pytest.approx(math.log(1.5) / 0.5, rel=1e-9)
    assert stieltjes_rep_eval(1, (1,), (2,), 3.0).value == pytest.approx(math.log(4) / 3, rel=1e-9)
    assert stieltjes_rep_eval(2.3, (0.7, 1.1), (3.2, 2.5), 0.0).value == pytest.approx(1.0, rel=1e-12)


def test_split_examples():
    # 2F2(1,1;2,2;-1) = int_0^1 (1 - e^-t)/t dt
    v = general_split_eval(SplitSpec((1,), (2,), (1,), (2,)), 1.0).value
    assert v == pytest.approx(0.79659959929705313428, rel=1e-9)
    a = general_split_eval(SplitSpec((1.7,), (), (0.8,), (2.1,)), 0.6).value
    b = stieltjes_rep_eval(1.7, (0.8,), (2.1,), 0.6).value
    assert a == pytest.approx(b, rel=1e-10)
    assert general_split_eval(SplitSpec((), (1.5,), (0.9,), (2.2,)), 0.0).value == pytest.approx(1.0, rel=1e-12)


def test_laplace_examples():
    assert laplace_rep_eval((1,), (2,), 1.0, "q_q").value == pytest.approx(1 - math.exp(-1), rel=1e-9)
    assert laplace_rep_eval((1,), (), 1.0, "q_plus_1").value == pytest.approx(0.5, rel=1e-9)
    assert laplace_rep_eval((1,), (1,), 2.0, "q_q_psi0").value == pytest.approx(math.exp(-2), rel=1e-12)


def test_cosine_examples():
    z0 = math.pi**2 / 4
    assert abs(cosine_rep_eval((), (1.5,), z0).value) < 1e-10
    assert cosine_rep_eval((0.7,), (1.3, 2.4), 0.0).value == pytest.approx(1.0, rel=1e-12)
    assert cosine_rep_eval((1,), (1, 0.5), 1.0, "psi_eq_half").value == pytest.approx(math.cos(2), rel=1e-12)


def test_small_p_examples():
    v = small_p_rep_eval((1,), (2, 3), (0.5,), 1.0).value
    assert v == pytest.approx(pfq((1,), (2, 3), -1.0), rel=1e-9)
    a = small_p_rep_eval((0.6,), (1.7, 1.9), cosine_alphas(2), 2.5).value
    b = cosine_rep_eval((0.6,), (1.7, 1.9), 2.5).value
    assert a == pytest.approx(b, rel=1e-10)
    assert small_p_rep_eval((), (2.2, 3.1), (0.4, 0.9), 0.0).value == pytest.approx(1.0, rel=1e-12)
    assert cosine_alphas(3) == (1 / 3, 2 / 3)


def test_rep_vs_series_examples():
    r = rep_vs_series("laplace", np.linspace(-0.5, 5, 23), A=(1,), B=(2,), variant="q_q")
    assert r.passed and r.max_rel < 1e-8
    r = rep_vs_series("stieltjes", np.linspace(0, 0.9, 10), sigma=1, A=(1,), B=(2,))
    assert r.passed and r.max_rel < 1e-8
    # the degenerate split is the Laplace formula itself
    a = general_split_grid(SplitSpec((), (), (1,), (2,)), [0.5, 2.0])[0]
    b = [laplace_rep_eval((1,), (2,), z).value for z in (0.5, 2.0)]
    assert np.allclose(a, b, rtol=1e-12)


def test_validation_errors():
    with pytest.raises(SpecViolation):
        SplitSpec((), (), (), ())
    with pytest.raises(SpecViolation):
        SplitSpec((), (), (2.0,), (1.0,))  # psi2 < 0
    with pytest.raises(SpecViolation):
        general_split_eval(SplitSpec((1,), (), (1,), (2,)), -1.5)
    with pytest.raises(ShapeError):
        cosine_rep_eval((1, 2), (3,), 1.0)
    with pytest.raises(SpecViolation):
        cosine_rep_eval((1,), (1.2, 0.2), 1.0)  # psi = 0.4
    with pytest.raises(ConvergenceConditionViolated):
        small_p_rep_eval((1,), (1.2, 0.4), (2.0,), 1.0)
    with pytest.raises(ValueError):
        rep_vs_series("nope", [0.1])


def test_hyp_eval_fallbacks():
    # beyond the unit disk only the representation applies
    assert hyp_eval((1, 1), (2,), -3.0).value == pytest.approx(math.log(4) / 3, rel=1e-9)
    # Kummer transformation at large negative argument
    assert hyp_eval((1,), (2,), -200.0).value == pytest.approx((1 - math.exp(-200)) / 200, rel=1e-9)
    v, e = hyp_grid((1, 1), (2,), [-5.0, -0.5, 0.5])
    assert np.allclose(v, [math.log(6) / 5, math.log(1.5) / 0.5, -math.log(0.5) / 0.5], rtol=1e-9)


@pytest.mark.parametrize("kind", REP_KINDS)
@settings(max_examples=6)
@given(seed=st.integers(0, 2**32 - 1))
def test_random_specs_agree_with_series(kind, seed):
    kw, z = rep_case(np.random.default_rng(seed), kind)
    r = rep_vs_series(REP_TARGET.get(kind, kind), z, rel_tol=1e-7, **kw)
    assert r.passed, r.failures[:3]


@settings(max_examples=15)
@given(dominated(), st.floats(0.2, 5.0))
def test_stieltjes_decreasing_for_nonneg_kernel(pair, sigma):
    A, B = pair
    z = np.linspace(-0.9, 20.0, 40)
    v, e = stieltjes_rep_grid(sigma, A, B, z)[:2]
    assert np.all(np.diff(v) <= e[:-1] + e[1:])


@settings(max_examples=10)
@given(st.floats(0.3, 4.0), st.floats(0.3, 4.0), st.floats(0.1, 3.0))
def test_atom_form_is_continuous_limit(a, b, z):
    # psi2 -> 0 along B2 = A2 + eps: the continuous form tends to the atom form
    atom = general_split_eval(SplitSpec((), (b,), (a,), (a,)), z).value
    prev = None
    for eps in (1e-2, 1e-3, 1e-4):
        v = general_split_eval(SplitSpec((), (b,), (a,), (a + eps,)), z).value
        gap = abs(v - atom)
        if prev is not None:
            assert gap <= prev + 1e-12
        prev = gap
    assert prev <= 1e-3 * max(1.0, abs(atom))
