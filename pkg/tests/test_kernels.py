import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from krcrystal import _kernels


@given(arrays(np.int64, st.tuples(st.integers(1, 8), st.just(5)), elements=st.integers(0, 6)),
       arrays(np.int64, st.tuples(st.integers(1, 6), st.just(5)), elements=st.integers(0, 1)))
def test_family_max_backends(C, F):
    a = _kernels.family_max(C, F, use="numpy")
    b = _kernels.family_max(C, F, use="numba")
    assert np.array_equal(a, b)
    assert np.array_equal(a, np.maximum((C @ F.T).max(axis=1), 0))


def _chain(n_steps, n_nodes, seed):
    rng = np.random.default_rng(seed)
    succ = np.full((n_steps, n_nodes), -1, dtype=np.int64)
    for k in range(n_steps):
        for b in range(n_nodes - 1):
            if rng.random() < 0.5:
                succ[k, b] = b + 1
    gain = rng.integers(-1, 3, size=n_steps).astype(np.int64)
    return succ, gain


@given(st.integers(0, 10_000))
def test_trail_dp_backends(seed):
    succ, gain = _chain(6, 4, seed)
    C = np.random.default_rng(seed).integers(0, 4, size=(7, 3)).astype(np.int64)
    a = _kernels.trail_dp(C, succ, gain, 0, 2, use="numpy")
    b = _kernels.trail_dp(C, succ, gain, 0, 2, use="numba")
    assert np.array_equal(a, b)


def test_trail_dp_unreachable_is_very_negative():
    succ = np.full((2, 3), -1, dtype=np.int64)
    out = _kernels.trail_dp(np.zeros((1, 1), dtype=np.int64), succ, np.array([-1, -1]), 0, 2, use="numpy")
    assert out[0] < -(1 << 30)
