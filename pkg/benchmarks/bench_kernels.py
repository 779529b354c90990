"""Benchmark: compiled kernel vs pure-Python fallback.

The two hot paths are GF(p) row reduction (orbit classification does millions
of small rank computations) and integer Laurent convolution (every structure
constant).  Run:

    python3 benchmarks/bench_kernels.py
"""

import random
import time

from thetaschur._kernel import load


def bench_rref(kernel, mats, p, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        for m, cols in mats:
            kernel.rref(m, cols, p)
    return time.perf_counter() - t0


def bench_rank2(kernel, pairs, p, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        for a, b, cols in pairs:
            kernel.rank2(a, b, cols, p)
    return time.perf_counter() - t0


def bench_poly(kernel, polys, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        for a, b in polys:
            kernel.poly_mul(a, b)
    return time.perf_counter() - t0


def bench_oracle_classify(name):
    """End-to-end: classify all flag pairs at q=5, (n,d)=(1,2)."""
    import os
    import subprocess
    import sys
    code = (
        "import time\n"
        "from thetaschur import oracle as orc\n"
        "cfg = orc.symmetric_config(5, 2)\n"
        "flags = orc.enumerate_flags(cfg, 'X', 1)\n"
        "t0 = time.perf_counter()\n"
        "seen = {}\n"
        "for f1 in flags[:120]:\n"
        "    for f2 in flags[:120]:\n"
        "        A = orc.xx_invariant(cfg, 1, f1, f2)\n"
        "        seen[A] = seen.get(A, 0) + 1\n"
        "print(time.perf_counter() - t0)\n")
    env = dict(os.environ)
    if name == "pure":
        env["THETASCHUR_PURE"] = "1"
    else:
        env.pop("THETASCHUR_PURE", None)
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main():
    rng = random.Random(0)
    p = 5
    mats = []
    for _ in range(300):
        rows, cols = rng.randint(2, 6), rng.randint(3, 7)
        mats.append(([[rng.randint(0, p - 1) for _ in range(cols)]
                      for _ in range(rows)], cols))
    pairs = []
    for _ in range(300):
        cols = rng.randint(3, 7)
        pairs.append(([[rng.randint(0, p - 1) for _ in range(cols)]
                       for _ in range(rng.randint(1, 3))],
                      [[rng.randint(0, p - 1) for _ in range(cols)]
                       for _ in range(rng.randint(1, 3))], cols))
    polys = []
    for _ in range(200):
        polys.append((
            {rng.randint(-10, 10): rng.randint(-9, 9) for _ in range(6)},
            {rng.randint(-10, 10): rng.randint(-9, 9) for _ in range(6)}))

    kernels = {"pure": load("pure")}
    try:
        kernels["compiled"] = load("compiled")
    except ImportError:
        print("compiled kernel not built; benchmarking the fallback only")

    results = {}
    for name, kernel in kernels.items():
        results[name] = {
            "rref (300 small matrices x 30)": bench_rref(kernel, mats, p, 30),
            "rank2 (300 stacks x 30)": bench_rank2(kernel, pairs, p, 30),
            "poly_mul (200 pairs x 50)": bench_poly(kernel, polys, 50),
        }
    for name in kernels:
        results[name]["oracle classify 120x120 pairs (subprocess)"] = \
            bench_oracle_classify(name)

    width = max(len(k) for r in results.values() for k in r)
    header = f"{'benchmark':<{width}}" + "".join(
        f"{name:>12}" for name in results)
    if len(results) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for key in next(iter(results.values())):
        line = f"{key:<{width}}"
        times = [results[name][key] for name in results]
        for t in times:
            line += f"{t:>11.3f}s"
        if len(times) == 2 and times[1] > 0:
            line += f"{times[0] / times[1]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
