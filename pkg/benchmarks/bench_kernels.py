"""Time the compiled Smith reduction kernel against the pure-Python one.

Two workloads:
  random   dense random matrices of a few shapes and entry sizes
  catalog  every matrix the library reduces while analysing the catalogued cases

Run with ``python benchmarks/bench_kernels.py [--repeat N] [--seed S]``.
"""

import argparse
import random
import sys
import timeit

from autz import _backend, linalg


def random_matrices(rng, shapes, bound, count):
    out = []
    for m, n in shapes:
        for _ in range(count):
            out.append([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)])
    return out


def sparse_matrices(rng, shapes, per_row, count):
    """Relator-like rows: a few entries from {-2, -1, 1, 2} per row."""
    out = []
    for m, n in shapes:
        for _ in range(count):
            A = [[0] * n for _ in range(m)]
            for row in A:
                for j in rng.sample(range(n), min(per_row, n)):
                    row[j] = rng.choice((-2, -1, 1, 2))
            out.append(A)
    return out


def catalog_matrices():
    """Record the inputs of every reduction done by a full catalog analysis."""
    from autz.catalog import LIST_I, LIST_II
    from autz.invariants import aut_z_report

    seen = []
    original = linalg.snf_reduce

    def record(A, track_u=False, track_v=True):
        seen.append(([list(r) for r in A], track_u, track_v))
        return original(A, track_u, track_v)

    linalg.snf_reduce = record
    try:
        for entry in LIST_I + LIST_II:
            aut_z_report(entry.datum(), entry.branch())
    finally:
        linalg.snf_reduce = original
    return seen


def time_kernel(fn, jobs, repeat):
    def run():
        for A, tu, tv in jobs:
            fn(A, tu, tv)
    return min(timeit.repeat(run, number=1, repeat=repeat))


def check_agree(jobs):
    """Compare both kernels; return how many matrices overflow int64."""
    overflows = 0
    for A, tu, tv in jobs:
        try:
            got = _backend.snf_reduce_compiled(A, tu, tv)
        except OverflowError:
            overflows += 1
            continue
        if got != _backend.snf_reduce_python(A, tu, tv):
            raise SystemExit("kernels disagree on a benchmark matrix")
    return overflows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if _backend._compiled is None:
        print("compiled kernel not available; rebuild without AUTZ_NO_EXT/AUTZ_PURE_PYTHON")
        return 1

    rng = random.Random(args.seed)
    workloads = [
        ("random 8x8 |a|<=9", [(A, False, False) for A in random_matrices(rng, [(8, 8)], 9, 50)]),
        ("sparse 30x40", [(A, False, True) for A in sparse_matrices(rng, [(30, 40)], 3, 20)]),
        ("sparse 80x60", [(A, False, False) for A in sparse_matrices(rng, [(80, 60)], 3, 5)]),
        ("dense 20x30 |a|<=3", [(A, True, True) for A in random_matrices(rng, [(20, 30)], 3, 5)]),
        ("catalog analysis", catalog_matrices()),
    ]
    # the compiled column goes through the dispatcher, so overflowing
    # matrices are timed including their pure-Python rerun
    print(f"{'workload':<22}{'matrices':>9}{'overflow':>9}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for name, jobs in workloads:
        overflows = check_agree(jobs)
        tp = time_kernel(_backend.snf_reduce_python, jobs, args.repeat)
        tc = time_kernel(_backend.snf_reduce, jobs, args.repeat)
        print(f"{name:<22}{len(jobs):>9}{overflows:>9}{tp:>11.4f}{tc:>12.4f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
