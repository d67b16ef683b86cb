"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_mcsim.py [--n-paths 20000] [--repeat 3]

The first numba call compiles (or loads the on-disk cache); it is reported
separately and excluded from the timings.
"""

import argparse
import math
import time

import numpy as np

from dunklwedge import StartPoint, WedgeModel
from dunklwedge.mcsim import McConfig, estimate_tail, simulate_bm_winding, simulate_hitting


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--n-paths", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    model = WedgeModel.equal(2, 0.75)
    start = StartPoint(1.0, math.pi / 8)
    cfg = McConfig(n_paths=args.n_paths, dt0=1e-3, t_max=1.01)
    cases = {
        "hitting p=2 k=0.75": lambda b: simulate_hitting(model, start, cfg, b),
        "winding p=2 t=0.25": lambda b: simulate_bm_winding(start, 0.25, 2, cfg, b),
    }
    print(f"n_paths = {args.n_paths}, best of {args.repeat}")
    print(f"{'case':<22}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  max tail gap")
    for name, run in cases.items():
        t0 = time.perf_counter()
        run("numba")
        warm = time.perf_counter() - t0
        t_nb, s_nb = _best(lambda: run("numba"), args.repeat)
        t_np, s_np = _best(lambda: run("numpy"), 1)
        ts = [0.1, 0.2] if "winding" in name else np.linspace(0.1, 1.0, 10)
        gap = np.max(np.abs(estimate_tail(s_nb, ts).values - estimate_tail(s_np, ts).values))
        print(f"{name:<22}{t_nb:>10.3f}{t_np:>10.3f}{t_np / t_nb:>9.1f}  {gap:.1e}   (first numba call {warm:.1f} s)")


if __name__ == "__main__":
    main()
