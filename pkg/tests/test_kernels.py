"""The numba kernels and their numpy fallbacks must agree exactly."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from softgames import _kernels as k

pytestmark = pytest.mark.skipif(k.numba is None, reason="numba not installed")


@st.composite
def shaped_payoffs(draw):
    shape = tuple(draw(st.lists(st.integers(1, 3), min_size=1, max_size=4)))
    n = int(np.prod(shape))
    pay = draw(arrays(np.int64, (n, len(shape)), elements=st.integers(0, 4)))
    return shape, pay


def brute_maximal(keys):
    keys = np.asarray(keys)
    return np.array([
        not any((keys[j] >= keys[i]).all() and (keys[j] > keys[i]).any() for j in range(len(keys)))
        for i in range(len(keys))
    ], dtype=bool)


@given(arrays(np.int64, st.tuples(st.integers(0, 40), st.integers(1, 3)), elements=st.integers(0, 5)))
def test_maximal_mask_backends_agree(keys):
    expected = brute_maximal(keys)
    assert np.array_equal(k.maximal_mask_numpy(keys), expected)
    assert np.array_equal(k.maximal_mask_numba(keys), expected)


def test_maximal_mask_crosses_block_boundary():
    rng = np.random.default_rng(0)
    keys = rng.integers(0, 30, size=(1300, 2))
    assert np.array_equal(k.maximal_mask_numpy(keys), k.maximal_mask_numba(keys))


@given(shaped_payoffs())
def test_nash_mask_backends_agree(case):
    shape, pay = case
    assert np.array_equal(k.nash_mask_numpy(pay, shape), k.nash_mask_numba(pay, shape))


@given(shaped_payoffs(), st.data())
def test_best_response_backends_agree(case, data):
    shape, pay = case
    axis = data.draw(st.integers(0, len(shape) - 1))
    values = pay[:, 0]
    assert np.array_equal(k.best_response_mask_numpy(values, shape, axis),
                          k.best_response_mask_numba(values, shape, axis))


def test_backend_name():
    assert k.backend() in ("numba", "numpy")
