"""Compare the compiled and pure-Python integer kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from skewlab import _kernels_py, kernels

try:
    from skewlab import _kernels as compiled
except ImportError:
    compiled = None


def _cases(seed=0):
    rng = random.Random(seed)
    rows = [[rng.randrange(7) for _ in range(40)] for _ in range(40)]
    basis = [tuple(rng.randrange(4) for _ in range(4)) for _ in range(5)]
    return rows, basis


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rows, basis = _cases()
    jobs = {
        "rref_mod_p 40x40 p=7": lambda m: m.rref_mod_p(rows, 40, 7),
        "nullspace_mod_p 40x40 p=7": lambda m: m.nullspace_mod_p(rows, 40, 7),
        "lattice_histogram n=4 s<=20": lambda m: m.lattice_histogram(basis, 4, 20, [1, 2, 1, 3]),
    }
    print(f"active backend: {kernels.BACKEND}")
    impls = [("python", _kernels_py)] + ([("compiled", compiled)] if compiled else [])
    for name, job in jobs.items():
        times = {}
        for label, mod in impls:
            times[label] = min(timeit.repeat(lambda: job(mod), number=3, repeat=args.repeat)) / 3
        line = "  ".join(f"{k}={v * 1e3:8.3f} ms" for k, v in times.items())
        if len(times) == 2:
            line += f"  speedup={times['python'] / times['compiled']:.1f}x"
        print(f"{name:32s} {line}")


if __name__ == "__main__":
    main()
