"""Compare the compiled minimization kernel against the pure-Python twin.

Usage: python benchmarks/bench_backends.py [--max-n 11] [--objective kmeans]
"""

import argparse
import time

import numpy as np

import clusterlab as cl
from clusterlab.objectives import PARTITIONAL_OBJECTIVES, ObjectiveSpec
from clusterlab.partitions import stirling2


def run(backend: str, ds, spec) -> tuple[float, cl.Clustering]:
    t0 = time.perf_counter()
    c = cl.exact_minimize(ds, spec, backend=backend)
    return time.perf_counter() - t0, c


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=8)
    parser.add_argument("--max-n", type=int, default=11)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--objective", default="kmeans",
                        choices=PARTITIONAL_OBJECTIVES)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    spec_k = args.k
    rng = np.random.default_rng(args.seed)
    print(f"objective={args.objective} k={spec_k}")
    print(f"{'n':>3}  {'partitions':>10}  {'pure (s)':>9}  {'native (s)':>10}  {'speedup':>7}")
    for n in range(args.min_n, args.max_n + 1):
        if args.objective == "ratiocut":
            ds = cl.random_similarity(n, seed=args.seed + n)
        else:
            ds = cl.random_points(n, seed=args.seed + n)
        ds = ds.reweighted(rng.uniform(0.5, 2.0, n))
        spec = ObjectiveSpec(args.objective, spec_k)
        t_pure, c_pure = run("pure", ds, spec)
        t_native, c_native = run("native", ds, spec)
        assert c_pure == c_native, "backends disagree"
        print(f"{n:>3}  {stirling2(n, spec_k):>10}  {t_pure:>9.3f}  "
              f"{t_native:>10.3f}  {t_pure / t_native:>6.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
