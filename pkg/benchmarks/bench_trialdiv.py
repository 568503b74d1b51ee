"""Compare the compiled and pure-Python trial-division kernels.

    python benchmarks/bench_trialdiv.py [--repeat N] [--bound B] [--end-to-end]

Both kernels must give identical factorizations; the script exits non-zero
if they disagree.  ``--end-to-end`` also times ``pythec reproduce`` under each
backend in a subprocess.
"""
import argparse
import os
import random
import statistics
import subprocess
import sys
import time

from pythec import _trialdiv_py
from pythec.families import Family, construct, enumerate_ppts

try:
    from pythec import _trialdiv as _compiled
except ImportError:
    _compiled = None


def workloads(seed: int):
    rng = random.Random(seed)
    # large cofactors force a scan over every prime below the bound
    rough = [rng.getrandbits(200) | 1 for _ in range(20)]
    smooth = []
    for T in enumerate_ppts(200)[:20]:
        for fam in (Family.F6_frey_ac, Family.F7_frey_bc):
            smooth.append(abs(int(construct(fam, T).curve.discriminant())))
    small = [rng.randrange(2, 2**63) for _ in range(200)]
    return {"rough 200-bit": rough, "family discriminants": smooth, "64-bit": small}


def time_kernel(mod, numbers, bound, repeat):
    mod.primes_below(bound)  # warm the sieve cache
    times, results = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        results = [mod.trial_divide(n, bound) for n in numbers]
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), results


def end_to_end():
    out = {}
    for label, env in (("compiled", "0"), ("python", "1")):
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "pythec", "reproduce", "--format", "csv"],
                       env={**os.environ, "PYTHEC_PURE_PYTHON": env},
                       check=False, capture_output=True)
        out[label] = time.perf_counter() - t0
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--bound", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()

    if _compiled is None:
        print("compiled kernel not available; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'workload':24s} {'n':>4s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    ok = True
    for name, numbers in workloads(args.seed).items():
        py_best, _, py_res = time_kernel(_trialdiv_py, numbers, args.bound, args.repeat)
        c_best, _, c_res = time_kernel(_compiled, numbers, args.bound, args.repeat)
        if py_res != c_res:
            ok = False
            print(f"MISMATCH in {name}", file=sys.stderr)
        print(f"{name:24s} {len(numbers):4d} {py_best:10.4f} {c_best:11.4f} {py_best / c_best:7.1f}x")
    if args.end_to_end:
        for label, secs in end_to_end().items():
            print(f"reproduce ({label}): {secs:.2f} s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
