"""Compare the compiled kernels with the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the comparison does not depend on
ANDERSON_PURE_PYTHON. Each case checks that the two backends agree.
"""
import argparse
import random
import sys
import timeit

from anderson_ring import _kernel_py

try:
    from anderson_ring import _kernel
except ImportError:
    _kernel = None


def _system(seed, n, m, k):
    rng = random.Random(seed)
    rows = [[rng.randrange(n) for _ in range(k)] for _ in range(m)]
    x = [rng.randrange(n) for _ in range(k)]
    rhs = [sum(a * v for a, v in zip(r, x)) % n for r in rows]
    return rows, rhs, k, n


def cases():
    rng = random.Random(0)
    a = [rng.randrange(36) for _ in range(40)]
    b = [rng.randrange(36) for _ in range(40)]
    yield "xgcd(123456789, 987654321)", lambda k: k.xgcd(123456789, 987654321), 20000
    yield "poly_mul deg 39 over Z36", lambda k: k.poly_mul(a, b, 36), 2000
    sys_ = _system(1, 210, 24, 30)
    yield "solve_mod 24x30 over Z210", lambda k: k.solve_mod(*sys_), 50
    yield "regular_scan Z9 deg 3", lambda k: k.regular_scan(9, 3, 3), 1
    yield "regular_scan Z8 deg 3", lambda k: k.regular_scan(8, 3, 3), 1
    yield "vnr_scan n = 2..1000", lambda k: [k.vnr_scan(n) for n in range(2, 1001)], 1


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if _kernel is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'case':32s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn, number in cases():
        assert fn(_kernel) == fn(_kernel_py), name
        t_c = min(timeit.repeat(lambda: fn(_kernel), number=number, repeat=args.repeat)) / number
        t_p = min(timeit.repeat(lambda: fn(_kernel_py), number=number, repeat=args.repeat)) / number
        print(f"{name:32s} {t_c * 1e3:9.3f}ms {t_p * 1e3:9.3f}ms {t_p / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
