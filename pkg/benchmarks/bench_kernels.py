#!/usr/bin/env python3
"""Benchmark the two kernel backends against each other.

Times the two hot paths — labeled-relation enumeration and per-instance
flag evaluation — under the numba and numpy backends and prints a small
table with speedups. Run from the repository root:

    python benchmarks/bench_kernels.py [--full]

--full additionally times relation enumeration at n=6 (about 14.3M
candidate orientations).
"""
import argparse
import itertools
import statistics
import time

from orthoposet import kernels
from orthoposet.enumeration import complement_candidates, enumerate_posets


def time_call(fn, repeats=5, warmup=1):
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def sweep_workload(backend):
    count = 0
    for n in range(1, 6):
        for p in enumerate_posets(n):
            cands = complement_candidates(p)
            if any(not c for c in cands):
                continue
            packed = kernels.pack_poset(p)
            for prime in itertools.product(*cands):
                kernels.instance_flags(packed, prime, backend=backend)
                count += 1
    return count


def flags_only_workload(instances, backend):
    for packed, prime in instances:
        kernels.instance_flags(packed, prime, backend=backend)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="also enumerate at n=6")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = ["numpy"]
    if kernels.HAVE_NUMBA:
        backends.insert(0, "numba")
    else:
        print("numba not importable; timing the numpy backend only")

    # pre-pack the full n<=5 complementation sweep so the flag benchmark
    # measures kernel time, not poset generation
    instances = []
    for n in range(1, 6):
        for p in enumerate_posets(n):
            cands = complement_candidates(p)
            if any(not c for c in cands):
                continue
            packed = kernels.pack_poset(p)
            for prime in itertools.product(*cands):
                instances.append((packed, prime))
    print(f"flag workload: {len(instances)} (poset, map) instances\n")

    jobs = [
        ("relation_codes n=5", lambda b: kernels.relation_codes(5, backend=b)),
        (f"instance_flags x{len(instances)}", lambda b: flags_only_workload(instances, b)),
    ]
    if args.full:
        jobs.append(("relation_codes n=6", lambda b: kernels.relation_codes(6, backend=b)))

    width = max(len(name) for name, _ in jobs)
    results = {}
    for name, job in jobs:
        row = {}
        for backend in backends:
            row[backend] = time_call(lambda: job(backend), repeats=args.repeats)
        results[name] = row
        cells = "  ".join(f"{backend}={row[backend] * 1e3:9.2f}ms" for backend in backends)
        line = f"{name.ljust(width)}  {cells}"
        if len(backends) == 2:
            line += f"  speedup={row['numpy'] / row['numba']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
