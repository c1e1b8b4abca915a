"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py

Inputs are random int64 rank tables of the sizes the harness produces
(at most 81 joint strategies) plus a few larger ones where compiled loops
start to matter. Each pair of results is checked for equality first.
"""
import argparse
import timeit

import numpy as np

from softgames import _kernels as k


def cases(rng):
    for n, cols in ((81, 4), (729, 6), (4096, 3)):
        yield f"maximal_mask N={n} k={cols}", (k.maximal_mask_numpy, k.maximal_mask_numba), \
            (rng.integers(0, 8, size=(n, cols)),)
    for shape in ((3, 3, 3, 3), (3,) * 6, (4,) * 7):
        n = int(np.prod(shape))
        yield f"nash_mask shape={shape}", (k.nash_mask_numpy, k.nash_mask_numba), \
            (rng.integers(0, 8, size=(n, len(shape))), shape)


def per_call(fn, inputs):
    timer = timeit.Timer(lambda: fn(*inputs))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=3, number=number)) / number


def main():
    argparse.ArgumentParser(description=__doc__.splitlines()[0]).parse_args()
    if k.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':36} {'numpy us':>10} {'numba us':>10} {'speedup':>8}")
    for name, (slow, fast), inputs in cases(rng):
        assert np.array_equal(slow(*inputs), fast(*inputs)), name  # also compiles
        t_np, t_nb = per_call(slow, inputs), per_call(fast, inputs)
        print(f"{name:36} {t_np * 1e6:10.1f} {t_nb * 1e6:10.1f} {t_np / t_nb:8.2f}", flush=True)


if __name__ == "__main__":
    main()
