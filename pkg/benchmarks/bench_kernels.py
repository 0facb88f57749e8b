#!/usr/bin/env python3
"""Benchmark the pure-Python kernel against the compiled extension.

Micro-benchmarks time the raw kernel entry points on workloads shaped
like the real hot paths (integer series convolution, packed cyclotomic
convolution, canonical reduction); the end-to-end row times a full
modular-equation verification in a subprocess per backend via
QTHETA_KERNEL.

Usage: python benchmarks/bench_kernels.py [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from qtheta._kernels import pure

try:
    from qtheta._kernels import _fast
except ImportError:
    _fast = None

from qtheta._pack import lane_width, pack_signed
from qtheta.cyclotomic import cyclotomic_polynomial


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rng = random.Random(42)
    int_a = [rng.randint(-10**6, 10**6) for _ in range(400)]
    int_b = [rng.randint(-10**6, 10**6) for _ in range(400)]
    yield "int convolve L=400", ("convolve", int_a, int_b)

    # packed cyclotomic coefficients, shaped like the k=29 half-sum square
    D = 56
    b = lane_width(100 * D * 2**20 * 2**20)
    vecs = [[rng.randint(-2**18, 2**18) for _ in range(D)] for _ in range(100)]
    packed = [pack_signed(v, b) for v in vecs]
    yield "packed-cyclotomic square L=100 D=56", ("convolve_trunc", packed, packed, 100)

    phi = list(cyclotomic_polynomial(800)[:-1])
    vec = [rng.randint(-2**200, 2**200) for _ in range(800)]
    yield "canonical reduction m=800", ("cyclo_rem", vec, phi)

    dst = [rng.randint(-2**40, 2**40) for _ in range(320)]
    src = [rng.randint(-2**40, 2**40) for _ in range(320)]

    def axpy_many(impl):
        d = list(dst)
        for c in range(50):
            impl.scaled_add(d, src, c)

    yield "scaled_add x50 n=320", ("_callable", axpy_many)


def run_micro():
    rows = []
    for name, spec in workloads():
        if spec[0] == "_callable":
            fn = spec[1]
            t_pure = timeit(fn, pure)
            t_fast = timeit(fn, _fast) if _fast else None
        else:
            entry, *args = spec
            t_pure = timeit(getattr(pure, entry), *args)
            t_fast = timeit(getattr(_fast, entry), *args) if _fast else None
        rows.append((name, t_pure, t_fast))
    width = max(len(r[0]) for r in rows)
    print(f"{'workload':{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, tp, tf in rows:
        if tf is None:
            print(f"{name:{width}}  {tp * 1e3:9.2f}ms  {'n/a':>10}  {'-':>8}")
        else:
            print(f"{name:{width}}  {tp * 1e3:9.2f}ms  {tf * 1e3:9.2f}ms  {tp / tf:7.2f}x")


def run_e2e():
    code = (
        "import time,qtheta;t0=time.perf_counter();"
        "assert qtheta.verify_theorem(19,0,100).passed;"
        "assert qtheta.verify_theorem(19,1,100).passed;"
        "print('%.3f' % (time.perf_counter()-t0))"
    )
    print()
    print("end-to-end: modular equation k=19, both parities, order 100")
    for backend in ("pure", "fast") if _fast else ("pure",):
        env = dict(os.environ, QTHETA_KERNEL=backend)
        try:
            out = subprocess.run(
                [sys.executable, "-c", code], env=env,
                capture_output=True, text=True, timeout=600, check=True,
            )
            print(f"  {backend:8s} {float(out.stdout.strip()):8.3f} s")
        except subprocess.CalledProcessError as exc:
            print(f"  {backend:8s} failed: {exc.stderr.strip()[-200:]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-e2e", action="store_true",
                    help="micro-benchmarks only")
    args = ap.parse_args()
    if _fast is None:
        print("compiled kernel not built; benchmarking the pure kernel only\n")
    run_micro()
    if not args.skip_e2e:
        run_e2e()


if __name__ == "__main__":
    main()
