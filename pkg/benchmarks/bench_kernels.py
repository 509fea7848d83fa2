"""Benchmark the compiled kernel against the pure-Python fallback.

Times the class enumeration end to end per backend and reports the speedup.

    python benchmarks/bench_kernels.py --max-k 5
"""

import argparse
import time

from mcbound import kernel
from mcbound.topology import generate


def time_generate(k, backend):
    start = time.perf_counter()
    count = generate(k, backend=backend, workers=1).count
    return count, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=5,
                        help="largest gate count to benchmark (default 5)")
    args = parser.parse_args()

    backends = kernel.available_backends()
    if "c" not in backends:
        print("note: compiled kernel not built, timing the fallback only")
    print(f"{'k':>2} {'classes':>9} " + " ".join(f"{b:>12}" for b in backends)
          + ("   speedup" if len(backends) > 1 else ""))
    for k in range(1, args.max_k + 1):
        times = {}
        count = None
        for backend in backends:
            count, elapsed = time_generate(k, backend)
            times[backend] = elapsed
        row = f"{k:>2} {count:>9} " + " ".join(f"{times[b]:>11.3f}s" for b in backends)
        if len(backends) > 1:
            row += f"   {times['python'] / max(times['c'], 1e-9):>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
