"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``.
"""
import argparse
import random
import timeit

from ktate import _kernels_py

try:
    from ktate import _kernels
except ImportError:
    _kernels = None


def _cases(rng):
    a = [rng.randint(-9, 9) for _ in range(400)]
    b = [rng.randint(-9, 9) for _ in range(400)]
    den = [1] + [rng.randint(-3, 3) for _ in range(30)]
    n = 60
    mat = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(n)] for _ in range(n)]
    return {
        "poly_mul 400x400": lambda m: m.poly_mul(a, b),
        "series_div 2000 terms": lambda m: m.series_div(a, den, 2000),
        "snf_diagonal 60x60": lambda m: m.snf_diagonal([r[:] for r in mat], n, n),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    else:
        print("compiled extension not built; timing the fallback only")

    cases = _cases(random.Random(args.seed))
    print(f"{'kernel':<24}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases.items():
        results = [fn(m) for _, m in backends]
        assert all(r == results[0] for r in results), f"backends disagree on {label}"
        times = [
            min(timeit.repeat(lambda: fn(m), number=args.number, repeat=args.repeat)) / args.number
            for _, m in backends
        ]
        speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) == 2 else ""
        print(f"{label:<24}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
