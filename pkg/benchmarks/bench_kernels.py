"""Compare the numba and numpy kernel backends on random synonymy graphs.

    python3 benchmarks/bench_kernels.py [--nodes 2000 20000] [--degree 16] [--repeat 5]

Reports the best wall time per kernel and the max deviation between backends.
JIT compilation is triggered once before timing.
"""

import argparse
import time

import numpy as np

from lexforge import kernels


def random_csr(n: int, degree: int, rng: np.random.Generator):
    """Symmetric random pattern with about ``degree`` neighbours per node."""
    m = n * degree // 2
    a = rng.integers(0, n, m)
    b = rng.integers(0, n, m)
    keep = a != b
    a, b = a[keep], b[keep]
    pairs = np.unique(np.concatenate([np.stack([a, b], 1), np.stack([b, a], 1)]), axis=0)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, pairs[:, 0] + 1, 1)
    indptr = np.cumsum(indptr)
    indices = pairs[:, 1].astype(np.int64)
    return indptr, indices


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(n, degree, repeat, rng):
    indptr, indices = random_csr(n, degree, rng)
    weights = rng.uniform(0.05, 1.0, len(indices))
    deg = np.bincount(np.repeat(np.arange(n), np.diff(indptr)), weights, minlength=n)
    dangling = deg == 0
    inv_deg = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, deg))
    e = np.full(n, 1.0 / n)
    rows = []
    results = {}
    for name in ("numba", "numpy"):
        be = kernels.get_backend(name)
        be.closed_overlap(*random_csr(8, 2, np.random.default_rng(1)))  # compile
        be.power_iterate(indptr, indices, weights, inv_deg, dangling, e, 0.85, 1e-8, 2, e.copy())
        t_ov, ov = best_of(lambda: be.closed_overlap(indptr, indices), repeat)
        t_pr, pr = best_of(lambda: be.power_iterate(indptr, indices, weights, inv_deg, dangling,
                                                    e, 0.85, 1e-10, 200, e.copy()), repeat)
        results[name] = (ov, pr[0])
        rows.append((name, t_ov, t_pr, pr[1]))
    dev_ov = float(np.abs(results["numba"][0] - results["numpy"][0]).max())
    dev_pr = float(np.abs(results["numba"][1] - results["numpy"][1]).sum())
    print(f"\nn={n} edges={len(indices) // 2}")
    print(f"{'backend':<8}{'overlap (s)':>14}{'pagerank (s)':>14}{'iters':>7}")
    for name, t_ov, t_pr, it in rows:
        print(f"{name:<8}{t_ov:>14.5f}{t_pr:>14.5f}{it:>7}")
    print(f"speedup  overlap x{rows[1][1] / rows[0][1]:.1f}  pagerank x{rows[1][2] / rows[0][2]:.1f}")
    print(f"max |overlap diff| {dev_ov:.1e}   L1 rank diff {dev_pr:.1e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, nargs="+", default=[2000, 20000])
    ap.add_argument("--degree", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for n in args.nodes:
        bench(n, args.degree, args.repeat, rng)


if __name__ == "__main__":
    main()
