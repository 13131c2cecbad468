"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Kernel rows time each backend directly. The end-to-end row builds a few
numbers in fresh interpreters with and without WQBERN_PURE=1, so caches do
not carry over.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from wqbern import _pykernels

try:
    from wqbern import _ckernels
except ImportError:
    _ckernels = None

P = 2147483647


def _poly(rng, deg):
    return [rng.randrange(P) for _ in range(deg)] + [1]


def kernel_cases():
    rng = random.Random(1)
    cases = []
    for deg in (50, 200, 600):
        g, u, v = _poly(rng, deg // 2), _poly(rng, deg // 2), _poly(rng, deg // 2)
        a = _pykernels.poly_mul_mod(g, u, P)
        b = _pykernels.poly_mul_mod(g, v, P)
        cases.append((f"gcd_mod deg {deg}", "poly_gcd_mod", (a, b, P)))
        cases.append((f"mul_mod deg {deg}", "poly_mul_mod", (a, b, P)))
    for p, N in ((3, 6), (5, 4), (7, 3)):
        cases.append((f"riemann p={p} N={N}", "riemann_sum_mod", (3, 2, p + 1, p**N, p ** (N + 8), 0)))
    return cases


def time_call(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


END_TO_END = (
    "import time; t=time.perf_counter();"
    "from wqbern.qbern import weighted_number_closed as w;"
    "[w(n, a) for a in (1, 2, 3, 4) for n in range(11)];"
    "print(time.perf_counter()-t)"
)


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("WQBERN_PURE", None)
    if pure:
        env["WQBERN_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for label, name, call_args in kernel_cases():
        row = {"case": label, "numpy_s": time_call(getattr(_pykernels, name), call_args, args.repeat)}
        if _ckernels is not None:
            row["cython_s"] = time_call(getattr(_ckernels, name), call_args, args.repeat)
            row["speedup"] = row["numpy_s"] / row["cython_s"]
        rows.append(row)
    e2e = {"case": "numbers n<=10, alpha<=4 (end to end)", "numpy_s": end_to_end(True)}
    if _ckernels is not None:
        e2e["cython_s"] = end_to_end(False)
        e2e["speedup"] = e2e["numpy_s"] / e2e["cython_s"]
    rows.append(e2e)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if _ckernels is None:
        print("compiled extension not built; showing the fallback only")
    print(f"{'case':40s} {'numpy':>11s} {'cython':>11s} {'speedup':>8s}")
    for r in rows:
        c = f"{r['cython_s']:.3e}" if "cython_s" in r else "-"
        s = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['case']:40s} {r['numpy_s']:11.3e} {c:>11s} {s:>8s}")


if __name__ == "__main__":
    main()
