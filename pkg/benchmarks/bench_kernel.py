"""Compare the compiled and pure-Python product kernels on identical inputs.

    python benchmarks/bench_kernel.py [--repeat N]

Each workload multiplies term dicts taken from real elements (the universal
R-matrix and its flip, a cube of Casimir-sized elements) through both kernels
and checks that the results agree.
"""

from __future__ import annotations

import argparse
import statistics
import time

from qheis import _kernel_py
from qheis.pbw import embed, flip
from qheis.presets import Preset

try:
    from qheis import _kernel
except ImportError:  # extension not built
    _kernel = None


def _workloads():
    out = []
    for t in ((3, 3), (4, 4)):
        p = Preset("two-parameter", t)
        R = p.R
        out.append((f"R * R21 {t}", R, flip(R)))
        R12, R13 = embed(R, "12"), embed(R, "13")
        out.append((f"R12 * R13 {t}", R12, R13))
        c = p.casimir
        out.append((f"C * C {t}", c, c))
    return out


def _time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':24s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, x, y in _workloads():
        kh, kw = x.truncation
        table = x.table

        def run(mod):
            return mod.mul_terms(x.terms, y.terms, x.arity, kh, kw, table)

        reference = run(_kernel_py)
        py = _time(lambda: run(_kernel_py), args.repeat)
        if _kernel is None:
            print(f"{name:24s} {py * 1e3:10.2f} {'n/a':>12s} {'':>8s}")
            continue
        assert run(_kernel) == reference, f"kernels disagree on {name}"
        cy = _time(lambda: run(_kernel), args.repeat)
        print(f"{name:24s} {py * 1e3:10.2f} {cy * 1e3:12.2f} {py / cy:7.2f}x")


if __name__ == "__main__":
    main()
