"""Compare the numba and numpy world-enumeration backends.

    python benchmarks/bench_enumerate.py [--repeat N]

Each workload is a conjunction of ``#xi`` terms, which gives three decision
atoms per variable. The numba timings exclude the first (compiling or
cache-loading) call, which is reported separately.
"""
import argparse
import time

import numpy as np

from paracomplete import _kernels
from paracomplete.formula import parse
from paracomplete.semantics import DecisionClosure, enumerate_masks, world_matrix


CAP = 1 << 24


def workload(n_vars: int) -> DecisionClosure:
    text = " & ".join(f"(#x{i} | x{i} -> ~x{i})" for i in range(n_vars))
    return DecisionClosure([parse(text)])


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-vars", type=int, default=7)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can run")
        return

    warm = workload(1)
    t0 = time.perf_counter()
    enumerate_masks(warm, backend="numba")
    world_matrix(warm, backend="numba")
    print(f"first numba call (compile or cache load): {time.perf_counter() - t0:.3f}s\n")

    head = f"{'vars':>4} {'atoms':>5} {'worlds':>8} {'stage':>10} {'numpy s':>9} {'numba s':>9} {'speedup':>8}"
    print(head)
    for n in range(2, args.max_vars + 1):
        c = workload(n)
        slow = enumerate_masks(c, cap=CAP, backend="numpy")
        fast = enumerate_masks(c, cap=CAP, backend="numba")
        assert np.array_equal(slow, fast), "backends disagree"
        for stage, fn in (("enumerate", enumerate_masks), ("matrix", world_matrix)):
            t_np = best_of(lambda: fn(c, cap=CAP, backend="numpy"), args.repeat)
            t_nb = best_of(lambda: fn(c, cap=CAP, backend="numba"), args.repeat)
            print(f"{n:>4} {len(c.atoms):>5} {len(fast):>8} {stage:>10} {t_np:>9.4f} "
                  f"{t_nb:>9.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
