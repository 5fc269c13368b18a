"""Compare kernel backends on the four hot paths.

Times the compiled (numba), vectorized (numpy), and exact big-integer
(python) backends on transitive closure, subset enumeration, threshold
sweeps, and max flow, at sizes where the differences show.  Run:

    python3 benchmarks/bench_backends.py [--repeats 3] [--quick]
"""

import argparse
import random
import time

import numpy as np

from causaltransport import _kernels
from causaltransport import set_backend

BACKENDS = ("numba", "numpy", "python")


def _closure_instance(rng, n):
    adj = np.zeros((n, n), dtype=bool)
    for p in range(n):
        for q in range(n):
            if p != q and rng.random() < 2.0 / n:
                adj[p, q] = True
    return (adj,)


def _subset_instance(rng, n):
    rows = [rng.randrange(1 << n) | (1 << i) for i in range(n)]
    rows_t = [0] * n
    for i in range(n):
        for j in range(n):
            if (rows[i] >> j) & 1:
                rows_t[j] |= 1 << i
    w = [rng.randint(1, 50) for _ in range(n)]
    v = [rng.randint(1, 50) for _ in range(n)]
    scale = sum(w) * sum(v)
    wa = [x * scale // sum(w) for x in w]
    wb = [x * scale // sum(v) for x in v]
    wa[0] += scale - sum(wa)
    wb[0] += scale - sum(wb)
    return rows, rows_t, wa, wb


def _threshold_instance(rng, n, fcount):
    values = [[rng.randint(0, 10_000) for _ in range(n)] for _ in range(fcount)]
    wa = [rng.randint(0, 50) for _ in range(n)]
    wb = [rng.randint(0, 50) for _ in range(n)]
    return values, wa, wb, True

def _flow_instance(rng, n, density):
    arcs = [(p, q) for p in range(n) for q in range(n)
            if p == q or rng.random() < density]
    wa = [rng.randint(0, 100) for _ in range(n)]
    wb = list(wa)
    rng.shuffle(wb)
    return n, arcs, wa, wb


def _time_call(fn, args, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        started = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - started)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--quick", action="store_true",
                        help="smaller instances for a fast sanity run")
    args = parser.parse_args()

    rng = random.Random(2024)
    if args.quick:
        cases = [
            ("closure n=60", _kernels.reflexive_transitive_closure,
             _closure_instance(rng, 60)),
            ("subsets n=14", _kernels.hall_pair_condition,
             _subset_instance(rng, 14)),
            ("threshold n=64 f=64", _kernels.threshold_condition,
             _threshold_instance(rng, 64, 64)),
            ("max-flow n=80", _kernels.relation_max_flow,
             _flow_instance(rng, 80, 0.1)),
        ]
    else:
        cases = [
            ("closure n=180", _kernels.reflexive_transitive_closure,
             _closure_instance(rng, 180)),
            ("subsets n=18", _kernels.hall_pair_condition,
             _subset_instance(rng, 18)),
            ("threshold n=128 f=256", _kernels.threshold_condition,
             _threshold_instance(rng, 128, 256)),
            ("max-flow n=240", _kernels.relation_max_flow,
             _flow_instance(rng, 240, 0.08)),
        ]

    # warm the compiled paths so timings exclude compilation
    previous = set_backend("numba")
    warm = random.Random(7)
    _kernels.reflexive_transitive_closure(_closure_instance(warm, 8)[0])
    _kernels.hall_pair_condition(*_subset_instance(warm, 6))
    _kernels.threshold_condition(*_threshold_instance(warm, 6, 4))
    _kernels.relation_max_flow(*_flow_instance(warm, 8, 0.3))

    width = max(len(name) for name, _, _ in cases)
    header = f"{'kernel':<{width}} " + " ".join(f"{b:>12}" for b in BACKENDS)
    print(header)
    print("-" * len(header))
    try:
        for name, fn, instance in cases:
            timings = []
            results = []
            for backend in BACKENDS:
                set_backend(backend)
                best, result = _time_call(fn, instance, args.repeats)
                timings.append(best)
                results.append(result)
            _assert_consistent(name, results)
            cells = " ".join(f"{t * 1000:>10.2f}ms" for t in timings)
            print(f"{name:<{width}} {cells}")
    finally:
        set_backend(previous)
    print(f"(best of {args.repeats}; identical results verified per row)")


def _assert_consistent(name, results):
    first = results[0]
    for other in results[1:]:
        if isinstance(first, np.ndarray):
            same = np.array_equal(first, other)
        elif isinstance(first, tuple):
            # flow tuples: values must match, routings may differ
            same = first[0] == other[0]
        else:
            same = first == other
        if not same:
            raise AssertionError(f"backend results differ on {name}")


if __name__ == "__main__":
    main()
