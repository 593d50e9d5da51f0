"""Compare the numba and numpy domain-scan kernels.

    python benchmarks/bench_kernels.py --n 10 14 18 20 --repeat 5

Worst case for the exhaustive oracle is an even domain (no early exit), so
every row scans the full positive domain of a list with no matches. The
``search`` rows time a whole single-item search with one planted match.
"""
import argparse
import time

from evensearch import _accel
from evensearch.criteria import as_indexed_function, gen_instance
from evensearch.oracle import ExhaustiveOracle
from evensearch.register import RegisterPattern
from evensearch.search import search_single


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_scan(n, repeat):
    items, spec = gen_instance(n, n, 32, [])
    table = as_indexed_function(spec, items).table
    pat = RegisterPattern.positive(n + 1)
    args = (table, 1 << n, pat.free_mask, pat.fixed_value)
    rows = []
    for name, kernel in (("first_violation", _accel.first_violation), ("count_violations", _accel.count_violations)):
        kernel(*args, use_numba=True)  # compile outside the timed region
        t_nb = best_of(lambda: kernel(*args, use_numba=True), repeat)
        t_np = best_of(lambda: kernel(*args, use_numba=False), repeat)
        rows.append((name, n, t_nb, t_np))
    return rows


def bench_search(n, repeat):
    items, spec = gen_instance(n, n, 32, [(1 << n) - 1])
    oracle = ExhaustiveOracle()
    saved = _accel.USE_NUMBA
    try:
        _accel.USE_NUMBA = True
        search_single(spec, items, oracle)
        t_nb = best_of(lambda: search_single(spec, items, oracle), repeat)
        _accel.USE_NUMBA = False
        t_np = best_of(lambda: search_single(spec, items, oracle), repeat)
    finally:
        _accel.USE_NUMBA = saved
    return ("search_single", n, t_nb, t_np)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[8, 12, 16, 20])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<18}{'n':>4}{'D':>10}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for n in args.n:
        rows = bench_scan(n, args.repeat) + [bench_search(n, args.repeat)]
        for name, nn, t_nb, t_np in rows:
            print(f"{name:<18}{nn:>4}{1 << nn:>10}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
