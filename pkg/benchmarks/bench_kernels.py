"""Benchmark the compiled coefficient kernels against the pure fallback.

Runs the same micro-ops (cyclotomic products, elimination row updates) and a
macro workload (periodic Todd projection of the Zwart-Powell list) through
both implementations.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import subprocess
import sys
import time
from fractions import Fraction


def _micro(kern, repeat):
    a = tuple(Fraction(i + 1, 7) for i in range(4))
    b = tuple(Fraction(3 - i, 5) for i in range(4))
    red = tuple(tuple(Fraction((i + j) % 3 - 1) for i in range(4))
                for j in range(3))
    t0 = time.perf_counter()
    for _ in range(repeat):
        raw = kern.convolve(a, b)
        kern.reduce_mod(raw, 4, red)
        kern.vec_axpy(a, b, Fraction(2, 3))
        kern.dot(a, b)
    return time.perf_counter() - t0


def _macro_script():
    # cyclotomic Gram solve: heavy on coefficient-vector products
    return (
        "import time; t0=time.perf_counter();"
        "from zonotopal.abelian import GList;"
        "from zonotopal.periodic import dm_basis, l_map, f_tilde;"
        "from zonotopal.geometry import short_regular;"
        "import zonotopal;"
        "x = GList.from_rows([[1,2,4]]);"
        "w = short_regular(x);"
        "[l_map(x, f_tilde(x, x.group.element((z,))), w) for z in (1,2,3)];"
        "print(zonotopal.kernel_impl, time.perf_counter()-t0)"
    )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20000)
    args = parser.parse_args()

    from zonotopal import _fallback
    try:
        from zonotopal import _kernels
    except ImportError:
        _kernels = None

    print(f"micro ops ({args.repeat} iterations):")
    pure = _micro(_fallback, args.repeat)
    print(f"  pure     {pure:.3f}s")
    if _kernels is not None:
        comp = _micro(_kernels, args.repeat)
        print(f"  cython   {comp:.3f}s   ({pure / comp:.2f}x)")
    else:
        print("  cython   (not built)")

    print("macro: duality solves over Q(zeta_4) for the list (1,2,4)")
    for env, label in ((None, "selected"), ({"ZONOTOPAL_PURE": "1"}, "pure")):
        import os
        full_env = dict(os.environ)
        if env:
            full_env.update(env)
        out = subprocess.run([sys.executable, "-c", _macro_script()],
                             capture_output=True, text=True, env=full_env)
        print(f"  {label:9s} {out.stdout.strip()}")


if __name__ == "__main__":
    main()
