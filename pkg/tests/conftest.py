import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def params(n_min=1, n_max=3, lo=0.2, hi=5.0):
    """Strategy for a tuple of positive parameters."""
    return st.lists(
        st.floats(lo, hi, allow_nan=False, allow_infinity=False), min_size=n_min, max_size=n_max
    ).map(tuple)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def paired(n_max=3, lo=0.2, hi=5.0):
    """Two parameter tuples of the same length."""
    return st.integers(1, n_max).flatmap(
        lambda n: st.tuples(params(n, n, lo, hi), params(n, n, lo, hi))
    )


def dominated(n_max=3, lo=0.2, hi=5.0):
    """``(A, B)`` with B weakly supermajorized by A, built as ``B = A + d``, d >= 0.

    A pair of averaging moves is mixed in so exactly majorized pairs also occur.
    """

    def build(n):
        return st.tuples(
            params(n, n, lo, hi),
            st.lists(st.floats(0.0, 2.0), min_size=n, max_size=n),
            st.booleans(),
        ).map(_dominated_pair)

    return st.integers(1, n_max).flatmap(build)


def _dominated_pair(args):
    A, d, average = args
    B = [a + x for a, x in zip(A, d)]
    if average and len(A) > 1:
        # equalizing two entries keeps the partial-sum order
        lo, hi = sorted(A)[0], sorted(A)[-1]
        B = list(A)
        i, j = A.index(lo), A.index(hi)
        B[i] = B[j] = 0.5 * (lo + hi)
    return tuple(A), tuple(B)
