"""Compare the compiled and pure-Python kernels.

Usage: python3 benchmarks/bench_kernels.py [--n 200000] [--trials 5] [--q 401]
"""
import argparse
import random
import time

from sidonx import kernels
from sidonx.extract import choose_modulus
from sidonx.gfield import make_field


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--q", type=int, default=401)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    vals = sorted({rng.getrandbits(60) for _ in range(args.n)})
    m = choose_modulus(len(vals)).m
    thr = ((1 << 128) - 1) // 2
    us = [rng.getrandbits(128) for _ in range(args.trials)]
    ctx = make_field(args.q)
    scan_args = (args.q, ctx.modulus_poly, tuple(ctx.primitive), args.q ** 2 + args.q + 1)

    backends = kernels.available_backends()
    print(f"n={len(vals)} m={m} trials={args.trials} q={args.q} backends={sorted(backends)}")
    print(f"{'backend':<10}{'trial stats (s/trial)':>24}{'select (s)':>12}{'singer scan (s)':>18}")
    results = {}
    for name in sorted(backends):
        mod = backends[name]
        kern = mod.TrialKernel(vals, m, thr)
        t_stats, stats = timeit(lambda: [kern.stats(u) for u in us], 1)
        t_sel, sel = timeit(lambda: kern.select(us[0]), 1)
        t_scan, scan = timeit(lambda: mod.singer_scan(*scan_args), 1)
        results[name] = (stats, sel, scan)
        print(f"{name:<10}{t_stats / len(us):>24.4f}{t_sel:>12.4f}{t_scan:>18.4f}")
    if len(results) == 2:
        same = results["python"] == results["compiled"]
        print(f"outputs identical: {same}")


if __name__ == "__main__":
    main()
