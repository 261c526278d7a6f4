"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import math
import timeit

import numpy as np

from powertower import _backend

XS = np.linspace(0.01, 1.6, 400)
GX, GY = np.linspace(0.01, 1.6, 200), np.linspace(0.01, 2.5, 200)

WORKLOADS = {
    "scan 400 bases": lambda k: k.scan(XS, 1e-12, 1e-6, 10_000, 1e15),
    "region 200x200": lambda k: k.region(GX, GY),
    "orbit x=1/16": lambda k: k.orbit(0.0625, 0.0625, 1e-12, 1e-6, 10_000, 1e15, False),
    "orbit near e^(1/e)": lambda k: k.orbit(math.exp(1 / math.e) - 1e-7, 1.4, 1e-12, 1e-6, 100_000, 1e15, False),
    "tower height 1e5": lambda k: k.tower(0.05, 100_000),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _backend.available()
    print(f"{'workload':<22}" + "".join(f"{b:>14}" for b in backends) + ("    speedup" if len(backends) > 1 else ""))
    for label, fn in WORKLOADS.items():
        times = []
        for b in backends:
            k = _backend.get(b)
            n, _ = timeit.Timer(lambda: fn(k)).autorange()
            best = min(timeit.repeat(lambda: fn(k), number=n, repeat=args.repeat)) / n
            times.append(best)
        line = f"{label:<22}" + "".join(f"{t * 1e3:>11.3f} ms" for t in times)
        if len(times) > 1:
            line += f"   {times[0] / times[1]:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
