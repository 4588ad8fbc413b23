"""Compare the compiled and numpy max-plus kernels.

    python benchmarks/bench_kernels.py [--sizes 16,64,256] [--reps 200]

Also times a full tree solve under each backend. Prints one CSV row per
(kernel, backend, size).
"""
import argparse
import sys
import time

import numpy as np

from interdict import kernels
from interdict.instgen import GenConfig, gen_prufer_tree
from interdict.tree_reic import solve_tree_reic


def time_call(fn, reps):
    best = None
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16,64,256")
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--tree-n", type=int, default=2000)
    ap.add_argument("--tree-r", type=int, default=50)
    args = ap.parse_args(argv)
    if "compiled" not in kernels.BACKENDS:
        print("compiled backend not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
    rng = np.random.default_rng(0)
    print("kernel,backend,size,best_ns")
    for L in map(int, args.sizes.split(",")):
        acc, items, a1, prop = (rng.random(L) * 10 for _ in range(4))
        for backend in sorted(kernels.BACKENDS):
            with kernels.use_backend(backend):
                ns = time_call(lambda: kernels.maxplus_fold(acc, items), args.reps)
                print(f"maxplus,{backend},{L},{ns}")
                ns = time_call(lambda: kernels.cmckp_fold(acc, a1, items, prop), args.reps)
                print(f"cmckp,{backend},{L},{ns}")
    inst = gen_prufer_tree(GenConfig(n=args.tree_n, p=0.4, budget=args.tree_r, seed=1))
    for backend in sorted(kernels.BACKENDS):
        with kernels.use_backend(backend):
            ns = time_call(lambda: solve_tree_reic(inst), 3)
            print(f"tree_solve,{backend},{args.tree_n},{ns}")


if __name__ == "__main__":
    main()
