"""Property-based spot checks on top of the seeded suites."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from dmparam import (
    circulant_ppt_margins,
    circulant_rho,
    expm_skew,
    partial_transpose,
    ppt_check,
)
from dmparam._random import rand_block_params, rand_skew

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
angles = st.floats(min_value=0.0, max_value=np.pi / 2, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), d=st.integers(2, 7), scale=st.floats(0.01, 10.0))
def test_expm_skew_always_unitary(seed, d, scale):
    X = scale * rand_skew(np.random.default_rng(seed), d)
    U = expm_skew(X)
    assert np.linalg.norm(U.conj().T @ U - np.eye(d)) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(
    weights=st.lists(st.floats(0.01, 1.0), min_size=4, max_size=4),
    alpha=angles,
    beta=angles,
)
def test_circulant_conditions_match_numeric(weights, alpha, beta):
    p = np.array(weights) / np.sum(weights)
    m1, m2 = circulant_ppt_margins(p, alpha, beta)
    if abs(min(m1, m2)) < 1e-9:
        return  # boundary band is labeled, not adjudicated
    analytic = m1 >= 0.0 and m2 >= 0.0
    assert analytic == ppt_check(circulant_rho(p, alpha, beta)).is_ppt


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), n=st.integers(2, 3), m=st.integers(2, 3))
def test_partial_transpose_involution(seed, n, m):
    from dmparam import assemble_rho_block

    rho = assemble_rho_block(rand_block_params(np.random.default_rng(seed), n, m))
    pt = partial_transpose(rho, "second")
    back = partial_transpose(pt, "second", dims=(n, m))
    assert np.max(np.abs(back - rho.mat)) <= 1e-14
