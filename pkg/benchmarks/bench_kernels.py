"""Compare the compiled permutation kernels against the pure-Python ones.

Times the hot operations used by the witness engines: tuple products,
orbit labelling, the orientation test, and block refinement. Run with
`python3 benchmarks/bench_kernels.py --degree 64 --rows 6`.
"""

from __future__ import annotations

import argparse
import random
import time

from rp2cover import _kernels_py as pure

try:
    from rp2cover import _kernels_c as fast
except ImportError:
    fast = None


def random_images(d, rng):
    images = list(range(1, d + 1))
    rng.shuffle(images)
    return tuple(images)


def bench(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=64)
    ap.add_argument("--rows", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    d = args.degree
    gens = [random_images(d, rng) for _ in range(args.rows)]
    alpha = random_images(d, rng)
    labels = pure.component_labels(gens, d)

    cases = [
        ("product_of", "product_of", (gens, d)),
        ("component_labels", "component_labels", (gens, d)),
        ("orbit_count", "orbit_count", (gens, d)),
        ("alpha_extension", "alpha_extension", (labels, alpha, d)),
        ("minimal_block", "minimal_block", (gens, d, 1, 2)),
    ]

    print(f"degree={d} rows={args.rows} repeat={args.repeat}")
    if fast is None:
        print("compiled backend not available; timing pure Python only")
    header = f"{'kernel':<18} {'pure (us)':>12} {'compiled (us)':>14} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, name, call_args in cases:
        t_pure = bench(getattr(pure, name), call_args, args.repeat) * 1e6
        if fast is not None:
            t_fast = bench(getattr(fast, name), call_args, args.repeat) * 1e6
            ratio = t_pure / t_fast if t_fast > 0 else float("inf")
            print(f"{label:<18} {t_pure:>12.2f} {t_fast:>14.2f} {ratio:>8.1f}x")
        else:
            print(f"{label:<18} {t_pure:>12.2f} {'-':>14} {'-':>9}")

    if fast is not None:
        for label, name, call_args in cases:
            assert getattr(pure, name)(*call_args) == getattr(fast, name)(*call_args)
        print("agreement check: ok")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
