"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest -s tests/test_acceptance.py`` (or ``scripts/run_acceptance.py``)
to see the summary lines; they are also printed with output capture on.
"""
import io
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.special import gammaln, i1

from hyperbound import (
    HyperSpec,
    KernelSpec,
    certify,
    eval_pfq,
    kernel_eval,
    kernel_nonneg_scan,
    logconvex_check,
    ratio_monotone_check,
    rep_vs_series,
    v_nonneg_check,
)
from hyperbound.bounds import FAMILIES
from hyperbound.cli import main
from hyperbound.gkernel import kernel_values
from hyperbound.monotone import cm_check, composite_value
from hyperbound.params import (
    bessel_rates,
    log_coeff_sequence,
    q2_exact,
    symmetric_chain,
    symmetric_geq1,
)
from hyperbound.quad import QuadratureConfig, integrate_01_vec
from hyperbound.representations import stieltjes_rep_eval
from hyperbound.sampling import (
    REP_KINDS,
    REP_TARGET,
    bound_case,
    dominated_pair,
    logconvex_case,
    ratio_case,
    rep_case,
    stated_logconvex_case,
)

SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


def _rel(a, b):
    return np.abs(np.asarray(a) - b) / np.maximum(np.abs(b), 1e-300)


def test_criterion_01_closed_forms(report):
    start = time.perf_counter()
    worst = 0.0
    for z in np.linspace(-0.9, 0.9, 19):
        ref = 1.0 if z == 0 else -math.log1p(-z) / z
        worst = max(worst, _rel(eval_pfq(HyperSpec((1, 1), (2,)), z).value, ref))
    for x in np.linspace(-10, 10, 21):
        ref = 1.0 if x == 0 else math.expm1(x) / x
        worst = max(worst, _rel(eval_pfq(HyperSpec((1,), (2,)), x).value, ref))
    worst = max(worst, _rel(eval_pfq(HyperSpec((), (2,)), 1.0).value, i1(2.0)))
    for x in np.linspace(-5, 5, 21):
        ref = 1.0 if x == 0 else math.sinh(x) / x
        worst = max(worst, _rel(eval_pfq(HyperSpec((), (1.5,)), x * x / 4).value, ref))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 1.0
    assert report(1, ok, f"max rel err {worst:.2e} (<=1e-10), runtime {elapsed:.3f}s (<1s)")


def test_criterion_02_kernel_closed_forms(report):
    t = np.linspace(0.01, 0.95, 95)
    worst = 0.0
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        a = rng.uniform(0.2, 5)
        b = a + rng.uniform(0.1, 5)
        ref = np.exp(a * np.log(t) + (b - a - 1) * np.log1p(-t) - gammaln(b - a))
        got = [kernel_eval(KernelSpec((a,), (b,)), float(s)).value for s in t]
        worst = max(worst, float(np.max(_rel(got, ref))))
    got = [kernel_eval(KernelSpec((1, 1), (2, 2)), float(s)).value for s in t]
    worst = max(worst, float(np.max(_rel(got, -t * np.log(t)))))
    beyond = [kernel_eval(KernelSpec(*spec), s).value for spec in (((1,), (2,)), ((1, 1), (2, 2)), ((0.7, 2.2), (1.5, 3.1))) for s in (1.0, 1.5, 10.0)]
    ok = worst <= 1e-8 and all(v == 0.0 for v in beyond)
    assert report(2, ok, f"max rel err {worst:.2e} (<=1e-8), zero beyond t=1: {all(v == 0.0 for v in beyond)}")


def _moments(bottom, top):
    spec = KernelSpec(bottom, top)
    cfg = QuadratureConfig(rel_tol=1e-10, endpoint_exponents=spec.endpoint_exponents)

    def f(t, w):
        g, _ = kernel_values(spec, t, one_minus_t=w)
        return np.stack([g * t ** (n - 1) for n in (1, 2, 3)], axis=1)

    al, c = spec.leading_at_one()
    lead = (al, [c] * 3) if al < -0.5 else None
    v, _, _ = integrate_01_vec(f, cfg, complement=True, leading_at_one=lead)
    return np.asarray(v)


def test_criterion_03_moment_identity(report):
    rng = np.random.default_rng(SEED + 3)
    worst, count = 0.0, 0
    while count < 50:
        q = int(rng.integers(1, 4))
        bottom, top = rng.uniform(0.2, 5, q), rng.uniform(0.2, 5, q)
        if top.sum() - bottom.sum() <= 0:
            continue
        ref = np.array([math.exp(gammaln(bottom + n).sum() - gammaln(top + n).sum()) for n in (1, 2, 3)])
        worst = max(worst, float(np.max(_rel(_moments(tuple(bottom), tuple(top)), ref))))
        count += 1
    ok = worst <= 1e-6
    assert report(3, ok, f"{count} specs, n=1..3, max rel err {worst:.2e} (<=1e-6)")


def test_criterion_04_representations(report):
    rng = np.random.default_rng(SEED + 4)
    bad, worst = [], 0.0
    for kind in REP_KINDS:
        for _ in range(20):
            kw, z = rep_case(rng, kind)
            r = rep_vs_series(REP_TARGET.get(kind, kind), z, rel_tol=1e-7, **kw)
            worst = max(worst, r.max_rel)
            if not r.passed:
                bad.append((kind, kw))
    outside = stieltjes_rep_eval(1, (1,), (2,), 3.0).value
    out_err = abs(outside - math.log(4) / 3) / (math.log(4) / 3)
    ok = not bad and out_err <= 1e-7
    detail = (f"{len(REP_KINDS)} forms x 20 specs, failures {len(bad)}, max rel {worst:.2e}; "
              f"z=3 log closed form rel err {out_err:.2e}")
    assert report(4, ok, detail), bad[:3]


def test_criterion_05_positivity(report):
    rng = np.random.default_rng(SEED + 5)
    lowest = math.inf
    for _ in range(200):
        A, B = dominated_pair(rng, int(rng.integers(1, 4)))
        lowest = min(lowest, kernel_nonneg_scan(KernelSpec(A, B)).min_margin)
    neg = kernel_nonneg_scan(KernelSpec((2.0,), (1.5,)))
    ok = lowest >= -1e-9 and not neg.passed and neg.min_margin < 0
    assert report(5, ok, f"200 dominated specs, min margin {lowest:.2e} (>=-1e-9); "
                         f"a=2, b=1.5 min value {neg.worst['value']:.3e} flagged={not neg.passed}")


WORKED = [
    # family, A, B, x, sigma, (lower, upper)
    ("luke", (1,), (2,), 1.0, None, (1.6487213, 1.8591409)),
    ("luke_refined", (1,), (2,), 1.0, None, (1.7108005, 1.7394273)),
    ("stieltjes_positive_arg", (1,), (2,), 0.5, 1.0, (1.3333333, 1.5)),
    ("stieltjes_negative_arg", (1,), (2,), 1.0, 1.0, (0.6666667, 0.75)),
    ("jensen", (1,), (2,), 1.0, None, (0.6065307, 0.6839397)),
    ("bessel", (1,), (1, 2), 1.0, None, (1.5714116, 1.5913509)),
    ("f01", (), (2.0,), 1.0, None, (1.5714116, 1.5913509)),
]


def test_criterion_06_bound_sandwiches(report):
    rng = np.random.default_rng(SEED + 6)
    families = sorted(FAMILIES) + ["f01"]
    violations, specs, points = [], 0, 0
    for k in range(500):
        fam = families[k % len(families)]
        while True:
            A, B, sigma, grid = bound_case(rng, fam)
            if not certify(fam, A, B, 0.0, sigma).advisory:
                break
        specs += 1
        for x in grid:
            c = certify(fam, A, B, float(x), sigma)
            points += 1
            if not c.sandwich_ok(1e-9):
                violations.append((fam, A, B, float(x)))
    worked_bad = []
    for fam, A, B, x, sigma, want in WORKED:
        c = certify(fam, A, B, x, sigma)
        if (round(c.lower, 7), round(c.upper, 7)) != want:
            worked_bad.append((fam, c.lower, c.upper))
    ok = not violations and not worked_bad
    assert report(6, ok, f"{specs} specs / {points} points, sandwich violations {len(violations)}; "
                         f"worked cases {len(WORKED) - len(worked_bad)}/{len(WORKED)} to 7 digits"), (violations[:3], worked_bad)


def test_criterion_07_coefficient_lemmas(report):
    rng = np.random.default_rng(SEED + 7)
    n = np.arange(101)
    checked = dict(decreasing=0, chain=0, lower_rate=0, upper_rate=0)
    bad = []

    def draw(p, q):
        return tuple(rng.uniform(0.2, 8, p)), tuple(rng.uniform(0.2, 8, q))

    while checked["decreasing"] < 200 or checked["chain"] < 200:
        q = int(rng.integers(1, 4))
        A, B = draw(q, q)
        logf, _ = log_coeff_sequence(A, B, 100)
        if checked["decreasing"] < 200 and symmetric_geq1(A, B):
            checked["decreasing"] += 1
            if np.any(np.diff(logf[1:]) > 1e-12):
                bad.append(("decreasing", A, B))
        if checked["chain"] < 200 and symmetric_chain(A, B):
            checked["chain"] += 1
            if np.any(n * logf[1] > logf + 1e-10 * np.maximum(1, np.abs(logf))):
                bad.append(("chain", A, B))
    while checked["lower_rate"] < 200 or checked["upper_rate"] < 200:
        q = int(rng.integers(1, 4))
        A, B = draw(q - 1, q)
        r = bessel_rates(A, B)
        logf, _ = log_coeff_sequence(A, B, 100)
        tol = 1e-10 * np.maximum(1, np.abs(logf))
        if checked["lower_rate"] < 200:
            checked["lower_rate"] += 1
            if np.any(logf < log_coeff_sequence((), (r.c,), 100)[0] - tol):
                bad.append(("lower_rate", A, B))
        if checked["upper_rate"] < 200 and r.d_positive:
            checked["upper_rate"] += 1
            if np.any(logf > log_coeff_sequence((), (r.d,), 100)[0] + tol):
                bad.append(("upper_rate", A, B))
    ok = not bad
    assert report(7, ok, f"specs per condition {checked}, n<=100, violations {len(bad)}"), bad[:3]


def test_criterion_08_monotonicity(report):
    rng = np.random.default_rng(SEED + 8)
    x_grid = np.geomspace(0.01, 20, 40)
    cm_bad = 0
    for _ in range(100):
        A, B = dominated_pair(rng, int(rng.integers(1, 4)))
        if not cm_check(HyperSpec(A, B), n_max=6, x_grid=x_grid).passed:
            cm_bad += 1
    ratio_bad = 0
    for _ in range(100):
        split = ratio_case(rng)
        mu = float(rng.uniform(0.1, 3.0))
        if not ratio_monotone_check(split, mu, np.linspace(-0.99, 10, 30)).passed:
            ratio_bad += 1
    mu_grid = np.linspace(0.0, 3.0, 7)
    stated_bad = sum(_logconvex_fails(stated_logconvex_case(rng), mu_grid) for _ in range(100))
    corrected_bad = sum(_logconvex_fails(logconvex_case(rng), mu_grid) for _ in range(100))
    x = np.geomspace(0.01, 20, 40)
    comp, _ = composite_value(1.0, (1,), (2,), x)
    comp_err = float(np.max(_rel(comp, np.log1p(1 / x))))
    ok = cm_bad == 0 and ratio_bad == 0 and stated_bad == 0 and comp_err <= 1e-8
    detail = (f"cm n<=6 failures {cm_bad}/100; ratio failures {ratio_bad}/100; "
              f"log-convexity failures {stated_bad}/100 on the stated x-domain, "
              f"{corrected_bad}/100 on x>=0 with positive kernel side; "
              f"composite vs ln(1+1/x) rel err {comp_err:.2e}")
    report(8, ok, detail)
    assert cm_bad == 0 and ratio_bad == 0 and comp_err <= 1e-8
    # the log-convexity claim does not hold on its stated domain; see README
    assert stated_bad == 0, detail


def _logconvex_fails(case, mu_grid):
    split, x = case
    return not logconvex_check(split, mu_grid, x).passed


def test_criterion_09_q2_predicate(report):
    rng = np.random.default_rng(SEED + 9)
    disagree = []
    for _ in range(1000):
        A, B = tuple(rng.uniform(0.1, 10, 2)), tuple(rng.uniform(0.1, 10, 2))
        if q2_exact(A, B, tol=1e-10) != v_nonneg_check(A, B).nonneg:
            disagree.append((A, B))
    ok = not disagree
    assert report(9, ok, f"1000 random q=2 vectors, disagreements {len(disagree)}"), disagree[:3]


def test_criterion_10_cli(report):
    cmd = [sys.executable, "-m", "hyperbound", "eval", "--A", "1,2", "--B", "3", "--grid=-0.9:0.9:7"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(3)]
    identical = len(set(runs)) == 1 and json.loads(runs[0])["results"]
    codes = []
    for argv in (["eval", "--A", "1", "--B", "2", "--x", "1"],
                 ["bounds", "--family", "luke", "--A", "1", "--B", "2", "--x", "0"],
                 ["check", "--A", "2,2", "--B", "1,3"]):
        codes.append(main(argv, stdout=io.StringIO(), stderr=io.StringIO()))
    ok = bool(identical) and codes == [0, 0, 2]
    assert report(10, ok, f"byte-identical JSON over 3 runs: {bool(identical)}; example exit codes {codes} (want [0, 0, 2])")
