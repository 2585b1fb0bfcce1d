"""Compare the compiled and pure-Python kernels on the two hot loops.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads are sized so the Python backend finishes in a few seconds.
"""

import argparse
import math
import time

import numpy as np

from lrcodes import kernels
from lrcodes.constructions import build
from lrcodes.recovery import DualIndex, colex_unrank


def bench_scan(kern, spec, r, t, count):
    C = build(spec).code
    idx = DualIndex.for_code(C, r)
    count = min(count, math.comb(C.n, t))
    start = np.array(colex_unrank(0, t), dtype=np.int32)
    fail = np.zeros((1, t), dtype=np.int32)
    t0 = time.perf_counter()
    kern.scan_colex(C.n, t, start, count, idx.col_ptr, idx.col_words, idx.mem, 1, fail)
    return count, time.perf_counter() - t0


def bench_gray(kern, spec):
    G = build(spec).code.generator
    w = G.to_words()
    t0 = time.perf_counter()
    kern.gray_min_weight(w, np.zeros(w.shape[1], dtype=np.uint64))
    return 1 << G.nrows, time.perf_counter() - t0


WORKLOADS = [
    ("scan_colex", "r2chain:t=6,k=16 (2,6)", lambda k: bench_scan(k, "r2chain:t=6,k=16", 2, 6, 200_000)),
    ("scan_colex", "mols:r=5,t=4 (5,5)", lambda k: bench_scan(k, "mols:r=5,t=4", 5, 5, 200_000)),
    ("gray_min_weight", "sts:s=4 (k=24)", lambda k: bench_gray(k, "sts:s=4")),
    ("gray_min_weight", "r2chain:t=7,k=16", lambda k: bench_gray(k, "r2chain:t=7,k=16")),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    print(f"{'kernel':<16} {'workload':<26} " + " ".join(f"{b + ' items/s':>18}" for b in backends) + "  speedup")
    for kernel, label, fn in WORKLOADS:
        rates = []
        for b in backends:
            best = min((fn(kernels.get(b)) for _ in range(args.repeat)), key=lambda x: x[1])
            rates.append(best[0] / best[1])
        speed = f"{rates[0] / rates[-1]:8.1f}x" if len(rates) > 1 else "       -"
        print(f"{kernel:<16} {label:<26} " + " ".join(f"{x:18,.0f}" for x in rates) + f" {speed}")


if __name__ == "__main__":
    main()
