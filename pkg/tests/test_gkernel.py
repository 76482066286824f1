import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.special import gammaln

from hyperbound import (
    ContourSpec,
    KernelSpec,
    kernel_asymptotics,
    kernel_eval,
    kernel_nonneg_scan,
    log_gamma_complex,
)
from hyperbound.errors import ContourDivergence, DomainError, PoleError
from hyperbound.gkernel import kernel_values
from hyperbound.params import check_weak_supermajorization
from hyperbound.quad import QuadratureConfig, integrate_01_vec

from conftest import dominated, paired


def test_log_gamma_examples():
    assert log_gamma_complex(1.0) == 0
    assert log_gamma_complex(0.5).real == pytest.approx(0.5723649429247001, rel=1e-14)
    z = log_gamma_complex(1 + 1j)
    assert z.real == pytest.approx(-0.6509231993018563, rel=1e-13)
    assert z.imag == pytest.approx(-0.3016403204675331, rel=1e-13)
    with pytest.raises(PoleError):
        log_gamma_complex(-2.0)


@given(st.floats(0.1, 30), st.floats(-40, 40))
def test_log_gamma_matches_mpmath(x, y):
    z = complex(x, y)
    ref = complex(mpmath.loggamma(mpmath.mpc(x, y)))
    assert abs(log_gamma_complex(z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_kernel_examples():
    assert kernel_eval(KernelSpec((1,), (2,)), 0.25).value == pytest.approx(0.25, rel=1e-12)
    assert kernel_eval(KernelSpec((1, 1), (2, 2)), math.exp(-1)).value == pytest.approx(math.exp(-1), rel=1e-8)
    assert kernel_eval(KernelSpec((1.3, 0.4), (2.2, 5.1)), 1.5).value == 0.0
    assert kernel_eval(KernelSpec((2,), ()), 3.0).value == pytest.approx(9 * math.exp(-3), rel=1e-10)


def test_kernel_kinds():
    assert KernelSpec((1,), (2,)).kind == "balanced"
    assert KernelSpec((1, 2), (3,)).kind == "laplace"
    assert KernelSpec((1,), (2, 3)).kind == "zero"
    assert KernelSpec((1.5,), (1.5,)).atom_at_one == 1.0
    with pytest.raises(DomainError):
        KernelSpec((), ())


def test_beta_closed_form_grid():
    t = np.linspace(0.01, 0.95, 60)
    for a, b in [(0.5, 2.0), (1.3, 4.1), (2.0, 2.5), (0.3, 0.9)]:
        v, _ = kernel_values(KernelSpec((a,), (b,)), t)
        ref = t**a * (1 - t) ** (b - a - 1) / math.gamma(b - a)
        assert np.allclose(v, ref, rtol=1e-8, atol=0)
        assert np.all(kernel_values(KernelSpec((a,), (b,)), [1.0, 1.2, 7.0])[0] == 0)


def test_log_kernel_grid():
    t = np.linspace(0.01, 0.95, 60)
    v, _ = kernel_values(KernelSpec((1, 1), (2, 2)), t)
    assert np.allclose(v, -t * np.log(t), rtol=1e-8, atol=0)


def test_asymptotics_examples():
    a = kernel_asymptotics(KernelSpec((1,), (2,)))
    assert (a.zero_exponent, a.zero_log_power + 1) == (1, 1)
    a = kernel_asymptotics(KernelSpec((1, 1), (2, 2)))
    assert (a.zero_exponent, a.zero_log_power + 1) == (1, 2)
    a = kernel_asymptotics(KernelSpec((2.5,), ()))
    assert a.mu == 1 and a.alpha == pytest.approx(1 - 2.5)
    t = 40.0
    # t^a e^-t is exact for a single bottom parameter
    assert a.tail_envelope(t) == pytest.approx(t**2.5 * math.exp(-t), rel=1e-12)


def test_nonneg_scan_examples():
    r = kernel_nonneg_scan(KernelSpec((1, 3), (2, 2)))
    assert r.passed and r.min_margin >= -1e-12
    r = kernel_nonneg_scan(KernelSpec((1, 1), (2, 2)))
    assert r.passed and r.min_margin >= -1e-12
    r = kernel_nonneg_scan(KernelSpec((2,), (1.5,)))
    assert not r.passed and r.min_margin < 0
    with pytest.raises(DomainError):
        kernel_nonneg_scan(KernelSpec((1, 2), (3,)))


def test_contour_validation():
    spec = KernelSpec((1,), (3.5,))
    with pytest.raises(DomainError):
        ContourSpec(-2.0, 10.0).validate(spec)
    with pytest.raises(DomainError):
        ContourSpec(0.5, 10.0, nodes=8).validate(spec)
    with pytest.raises(ContourDivergence):
        kernel_values(KernelSpec((1,), (1.5,)), [0.3], method="mellin_barnes")


@given(paired(), st.sampled_from([0.5, 1.0, 2.0]))
def test_shift_identity(pair, alpha):
    bottom, top = pair
    assume(sum(top) - sum(bottom) > 0.05)
    spec = KernelSpec(bottom, top)
    t = np.array([0.05, 0.3, 0.6, 0.9])
    v, e = kernel_values(spec, t)
    s, es = kernel_values(spec.shifted(alpha), t)
    lhs = t**alpha * v
    assert np.all(np.abs(lhs - s) <= 1e-8 * np.abs(s) + t**alpha * e + es + 1e-14)


@given(paired())
def test_mellin_moments(pair):
    bottom, top = pair
    assume(sum(top) - sum(bottom) > 0.0)
    spec = KernelSpec(bottom, top)
    a0, a1 = spec.endpoint_exponents
    cfg = QuadratureConfig(rel_tol=1e-10, endpoint_exponents=(a0, a1))

    def f(t, w):
        g, _ = kernel_values(spec, t, one_minus_t=w)
        return np.stack([g * t ** (n - 1) for n in (1, 2, 3)], axis=1)

    al, c = spec.leading_at_one()
    lead = (al, [c] * 3) if al < -0.5 else None
    v, _, _ = integrate_01_vec(f, cfg, complement=True, leading_at_one=lead)
    ref = [math.exp(sum(gammaln(np.add(bottom, n))) - sum(gammaln(np.add(top, n)))) for n in (1, 2, 3)]
    assert np.allclose(v, ref, rtol=1e-6, atol=0)


@given(paired())
def test_methods_agree(pair):
    bottom, top = pair
    assume(sum(top) - sum(bottom) > 1.2)
    spec = KernelSpec(bottom, top)
    t = np.array([0.1, 0.4, 0.7])
    v1, e1 = kernel_values(spec, t, method="residue")
    v2, e2 = kernel_values(spec, t, method="mellin_barnes")
    scale = np.maximum(np.abs(v1), 1e-12)
    assert np.all(np.abs(v1 - v2) <= 10 * (e1 + e2) + 1e-6 * scale)


@given(dominated())
def test_weak_majorization_gives_nonneg_kernel(pair):
    bottom, top = pair
    assert check_weak_supermajorization(bottom, top).weak
    assert kernel_nonneg_scan(KernelSpec(bottom, top), points=96).min_margin >= -1e-9


def test_laplace_kernel_matches_meijerg():
    spec = KernelSpec((1.5, 2.5), (3.0,))
    for t in (0.2, 1.0, 3.0, 9.0):
        ref = float(mpmath.meijerg([[], [3.0]], [[1.5, 2.5], []], t))
        assert kernel_eval(spec, t).value == pytest.approx(ref, rel=1e-8)
