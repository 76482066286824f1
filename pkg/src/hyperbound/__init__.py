"""Generalized hypergeometric functions: evaluation, G-function kernels,
integral representations, certified bounds and monotonicity scans."""

from .bounds import (
    bessel_bounds,
    certify,
    f01_bounds,
    jensen_bounds,
    luke_bounds,
    stieltjes_bounds,
    upper_bounds_p_lt_q,
)
from .errors import (
    ContourDivergence,
    ConvergenceConditionViolated,
    DegenerateParameters,
    DimensionMismatch,
    DomainError,
    HyperboundError,
    HypothesisFailed,
    NoConvergence,
    NonConvergence,
    NonPositiveParameter,
    PoleError,
    ShapeError,
    SpecViolation,
)
from .gkernel import (
    ContourSpec,
    KernelSpec,
    kernel_asymptotics,
    kernel_eval,
    kernel_nonneg_scan,
    log_gamma_complex,
)
from .monotone import cm_check, log_cm_check, logconvex_check, logconvex_domain, ratio_monotone_check, split_domain
from .params import (
    bessel_rates,
    check_weak_supermajorization,
    coeff_f,
    condition_report,
    elem_sym,
    parametric_excess,
    rising_factorial,
    v_nonneg_check,
)
from .quad import QuadratureConfig, integrate_0inf, integrate_01
from .representations import (
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
from .results import BoundCertificate, EvalResult, Hypothesis, MonotoneReport
from .series import HyperSpec, derivative_pfq, eval_pfq, pfq

__version__ = "0.1.0"
