"""Compiled vs pure-Python Sturm-count kernels on the oracle's own matrices.

    python3 benchmarks/bench_sturm.py [--points 4096] [--k 6] [--repeat 3]
"""

import argparse
import math
import time

import numpy as np

from pdmosc import oscillator as osc
from pdmosc.oracle.fd import KERNELS, radial_problem, tridiagonal, tridiagonal_eigenvalues
from pdmosc.pct import ModelParams


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=4096)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    p = ModelParams(1 / math.sqrt(3.0), 1, 1.0)
    _, diag, off = tridiagonal(radial_problem(p, lambda r: osc.potential(p, r), args.points))
    off2 = np.ascontiguousarray(off * off)
    shifts = np.linspace(diag.min(), diag.min() + 50.0, 64)

    print(f"matrix size {diag.size}, k={args.k}, best of {args.repeat}")
    print(f"{'backend':<10} {'counts/s':>12} {'eigvals (s)':>12}")
    ref = None
    for name, kernel in KERNELS.items():
        t_cnt, _ = best_of(lambda: kernel(diag, off2, shifts), args.repeat)
        t_eig, ev = best_of(lambda: tridiagonal_eigenvalues(diag, off, args.k, backend=name), args.repeat)
        print(f"{name:<10} {shifts.size / t_cnt:>12.4g} {t_eig:>12.4g}")
        if ref is None:
            ref = ev
        else:
            print(f"max |difference| between backends: {np.max(np.abs(ev - ref)):.3g}")


if __name__ == "__main__":
    main()
