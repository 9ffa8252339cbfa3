"""Compare the numba kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs once per backend to warm up (numba compiles on first
call), then ``--repeat`` timed runs; the best time is reported. The numba
backend is unavailable when SIZELINEAR_DISABLE_NUMBA=1 is set.
"""

import argparse
import time
from fractions import Fraction

from sizelinear import _kernels
from sizelinear.certify import max_density_slack
from sizelinear.construct import greedy_high_girth, parse_graph_name
from sizelinear.graphcore import from_edge_list
from sizelinear.ramsey import arrows
from sizelinear.rng import SplitMix64


def random_graph(n, p_num, p_den, seed):
    rng = SplitMix64(seed)
    p = Fraction(p_num, p_den)
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.bernoulli(p)])


def workloads():
    k3, k4, p4 = parse_graph_name("K3"), parse_graph_name("K4"), parse_graph_name("P4")
    dense = [random_graph(16, 2, 5, s) for s in range(5)]
    return {
        "arrow K3,K3 @6": lambda b: arrows(k3, k3, 6, backend=b),
        "arrow P4,K3 @6": lambda b: arrows(p4, k3, 6, backend=b),
        "arrow K3,K4 @8": lambda b: arrows(k3, k4, 8, backend=b),
        "max_slack n=16 x5": lambda b: [max_density_slack(g, "exhaustive", b) for g in dense],
        "greedy girth n=60 g=5": lambda b: greedy_high_girth(60, 5, 6, 0, backend=b),
    }


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python", action="store_true", help="time only the numba backend")
    args = ap.parse_args()

    backends = ["python"] if not _kernels.USE_NUMBA else ["numba", "python"]
    if args.skip_python and "numba" in backends:
        backends = ["numba"]
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, work in workloads().items():
        row = []
        for b in backends:
            work(b)  # warm-up / compile
            row.append(best_time(lambda: work(b), args.repeat))
        line = f"{name:28s}" + "".join(f"{t:11.4f}s" for t in row)
        if len(row) == 2:
            line += f"{row[1] / row[0]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
