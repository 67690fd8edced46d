"""Compare the compiled and pure-Python bitmask kernels.

    python3 benchmarks/bench_kernels.py [--seed 1] [--repeat 5] [--points 12]

Both modules are imported directly so one run times both on identical
inputs.  The library itself picks one at import time (set SEMITOP_PURE=1 to
force the pure one).
"""

import argparse
import random
import timeit

from semitop import _pykernels as py

try:
    from semitop import _kernels as cy
except ImportError:
    cy = None


def make_inputs(rng, n):
    full = (1 << n) - 1
    gens = [rng.randint(1, full) for _ in range(n)]
    wit = [[rng.randint(1, full) | (1 << p) for _ in range(rng.randint(1, 3))]
           for p in range(n)]
    xs = [rng.randint(0, full) for _ in range(200)]
    return full, gens, wit, xs


def cases(k, full, gens, wit, xs, n):
    opens = k.union_closure(gens, full)
    return {
        "union_closure": lambda: k.union_closure(gens, full),
        "witness_opens": lambda: k.witness_opens(wit, n),
        "lim_closure": lambda: [k.lim_closure(wit, x) for x in xs],
        "closure": lambda: [k.closure(opens, full, x) for x in xs],
        "interior": lambda: [k.interior(opens, x) for x in xs],
    }


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=12)
    args = ap.parse_args()
    n = args.points
    inputs = make_inputs(random.Random(args.seed), n)
    pure = cases(py, *inputs, n)
    fast = cases(cy, *inputs, n) if cy else {}
    print(f"{n} points, seed {args.seed}, best of {args.repeat}")
    print(f"{'kernel':<15}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in pure.items():
        tp = best(fn, args.repeat) * 1e3
        if name in fast:
            assert fast[name]() == fn(), name
            tc = best(fast[name], args.repeat) * 1e3
            print(f"{name:<15}{tp:>12.3f}{tc:>12.3f}{tp / tc:>9.1f}x")
        else:
            print(f"{name:<15}{tp:>12.3f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()
