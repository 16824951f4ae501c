#!/usr/bin/env python3
"""Benchmark the two expression-evaluation backends.

The tape evaluator is the package's hot kernel: quadrature panels,
residual sampling, and patch construction all funnel through it.  This
script times the numba kernel against the pure-numpy fallback on the
same compiled programs and checks they agree, then times a full
surface-patch build through each backend.

Run:    python benchmarks/bench_backends.py [--points 1000000]
The numpy numbers are what you get with MINSURF_NO_NUMBA=1.
"""

import argparse
import time

import numpy as np

from minsurf import catalog, expr as ex
from minsurf.engine import compile_expr, eval_program, using_numba
from minsurf.surface import immerse
from minsurf.transforms import parabolic_deform

CASES = [
    ("polynomial", "(2-3i)*z^3 - z + 0.5i"),
    ("rational", "(1-z^2)/(1+0.25*z^2)"),
    ("deformed component", "0.5i*(1+(3+4i)*exp(2*z))*-i*exp(-z)"),
    ("hyperbolic mix", "sinh(z)*cosh(z) + exp(-z)/(z+3)"),
]


def time_call(func, *args, repeats=5, warmup=1):
    for _ in range(warmup):
        func(*args)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_tape(points):
    rng = np.random.default_rng(7)
    z = rng.standard_normal(points) + 1j * rng.standard_normal(points)
    print(f"tape evaluation on {points:,} points "
          f"(best of 5, numba available: {using_numba()})")
    header = f"{'case':24s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, text in CASES:
        prog = compile_expr(ex.parse(text))
        t_np = time_call(eval_program, prog, z, np.pi, "numpy")
        if using_numba():
            t_nb = time_call(eval_program, prog, z, np.pi, "numba")
            a = eval_program(prog, z, backend="numpy")
            b = eval_program(prog, z, backend="numba")
            assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
            print(f"{name:24s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms "
                  f"{t_np / t_nb:7.2f}x")
        else:
            print(f"{name:24s} {t_np * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")


def bench_patch():
    import minsurf.engine as engine

    curve = parabolic_deform(catalog.helicoid(), 1 + 1j)
    print("\n128x128 deformed-helicoid patch (immerse, best of 3)")
    for backend in ("numpy", "numba") if using_numba() else ("numpy",):
        # immerse goes through the module-level selection; flip it
        saved = engine._HAVE_NUMBA
        engine._HAVE_NUMBA = backend == "numba"
        try:
            t = time_call(lambda: immerse(curve, res=(128, 128), zeta0=0,
                                          tol=1e-10), repeats=3)
        finally:
            engine._HAVE_NUMBA = saved
        print(f"  {backend:6s} {t * 1e3:9.1f}ms")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=1_000_000)
    args = ap.parse_args()
    bench_tape(args.points)
    bench_patch()


if __name__ == "__main__":
    main()
