"""Dominance kernels over integer order-ranks.

Exact values never enter here: callers map carrier values to int64 ranks
that preserve the induced order (higher rank = better), so every comparison
is exact. Each kernel has a numba version and a numpy version; the numba one
is used unless ``SOFTGAMES_NO_NUMBA`` is set to a non-empty value other than
``0`` or numba is missing.

Joint strategies are indexed in mixed radix over ``shape`` with the last
coordinate varying fastest (``itertools.product`` order).
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_flag = os.environ.get("SOFTGAMES_NO_NUMBA", "")
USE_NUMBA = numba is not None and _flag in ("", "0")

_BLOCK = 512


# --- numpy -------------------------------------------------------------------


def maximal_mask_numpy(keys: np.ndarray) -> np.ndarray:
    """Rows not strictly Pareto-dominated by any other row."""
    keys = np.asarray(keys, dtype=np.int64)
    if keys.ndim == 1:
        keys = keys[:, None]
    n, k = keys.shape
    if k == 1:
        return keys[:, 0] == keys[:, 0].max() if n else np.zeros(0, dtype=bool)
    out = np.empty(n, dtype=bool)
    for lo in range(0, n, _BLOCK):
        block = keys[lo:lo + _BLOCK]
        # ge[t, s]: row t >= block row s everywhere; eq: equal everywhere
        ge = np.ones((n, len(block)), dtype=bool)
        eq = np.ones((n, len(block)), dtype=bool)
        for j in range(k):
            col, bcol = keys[:, j, None], block[None, :, j]
            ge &= col >= bcol
            eq &= col == bcol
        out[lo:lo + _BLOCK] = ~(ge & ~eq).any(axis=0)
    return out


def nash_mask_numpy(payoffs: np.ndarray, shape) -> np.ndarray:
    """``payoffs[s, i]`` is player i's rank at joint strategy s."""
    payoffs = np.asarray(payoffs, dtype=np.int64)
    shape = tuple(int(d) for d in shape)
    n = len(shape)
    ok = np.ones(shape, dtype=bool)
    for i in range(n):
        table = payoffs[:, i].reshape(shape)
        ok &= table == table.max(axis=i, keepdims=True)
    return ok.reshape(-1)


def best_response_mask_numpy(values: np.ndarray, shape, axis: int) -> np.ndarray:
    """Entries of a local table that are maximal along ``axis``."""
    shape = tuple(int(d) for d in shape)
    table = np.asarray(values, dtype=np.int64).reshape(shape)
    return (table == table.max(axis=axis, keepdims=True)).reshape(-1)


# --- numba -------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True)
    def _maximal_mask_nb(keys):
        n, k = keys.shape
        out = np.ones(n, dtype=np.bool_)
        for s in range(n):
            for t in range(n):
                if t == s:
                    continue
                geq = True
                strict = False
                for j in range(k):
                    if keys[t, j] < keys[s, j]:
                        geq = False
                        break
                    if keys[t, j] > keys[s, j]:
                        strict = True
                if geq and strict:
                    out[s] = False
                    break
        return out

    @numba.njit(cache=True)
    def _nash_mask_nb(payoffs, shape):
        total, n = payoffs.shape
        strides = np.ones(n, dtype=np.int64)
        for i in range(n - 2, -1, -1):
            strides[i] = strides[i + 1] * shape[i + 1]
        out = np.ones(total, dtype=np.bool_)
        for s in range(total):
            for i in range(n):
                own = (s // strides[i]) % shape[i]
                base = s - own * strides[i]
                here = payoffs[s, i]
                for v in range(shape[i]):
                    if payoffs[base + v * strides[i], i] > here:
                        out[s] = False
                        break
                if not out[s]:
                    break
        return out

    def maximal_mask_numba(keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        if keys.ndim == 1:
            keys = keys[:, None]
        return _maximal_mask_nb(np.ascontiguousarray(keys))

    def nash_mask_numba(payoffs: np.ndarray, shape) -> np.ndarray:
        payoffs = np.ascontiguousarray(payoffs, dtype=np.int64)
        return _nash_mask_nb(payoffs, np.asarray(shape, dtype=np.int64))

    def best_response_mask_numba(values: np.ndarray, shape, axis: int) -> np.ndarray:
        # a single-player Nash check along one axis
        values = np.asarray(values, dtype=np.int64)
        shape = np.asarray(shape, dtype=np.int64)
        cols = np.full((values.shape[0], len(shape)), 0, dtype=np.int64)
        cols[:, axis] = values
        return _nash_mask_nb(cols, shape)

else:  # pragma: no cover
    maximal_mask_numba = maximal_mask_numpy
    nash_mask_numba = nash_mask_numpy
    best_response_mask_numba = best_response_mask_numpy


if USE_NUMBA:
    maximal_mask = maximal_mask_numba
    nash_mask = nash_mask_numba
    best_response_mask = best_response_mask_numba
else:
    maximal_mask = maximal_mask_numpy
    nash_mask = nash_mask_numpy
    best_response_mask = best_response_mask_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
