"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from sturmpair import _fallback, kernels
from sturmpair.exactreal import parse_slope
from sturmpair.lattice import box, enumerate_connected_supports
from sturmpair.sturmian import SturmianConfig

try:
    from sturmpair import _kernels as compiled
except ImportError:
    compiled = None


def classify_case(side):
    cfg = SturmianConfig(parse_slope("sqrt(3)-1,sqrt(2)-1"))
    r = np.arange(side, dtype=np.int64) - side // 2
    pts = np.stack(np.meshgrid(r, r, indexing="ij"), axis=-1).reshape(-1, 2)
    return pts, cfg._steps, cfg._offset, cfg._thresholds


def codes_case(side):
    cfg = SturmianConfig(parse_slope("sqrt(3)-1,sqrt(2)-1"))
    grid = cfg.window((0, 0), (side - 1, side - 1))
    supports = list(enumerate_connected_supports(2, 5)) + [box((4, 4))]
    return grid, [S.array() - S.array().min(axis=0) for S in supports]


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--side", type=int, default=400)
    args = ap.parse_args()
    impls = [("python", _fallback)] + ([("cython", compiled)] if compiled is not None else [])
    print(f"default backend: {kernels.BACKEND}")

    pts, steps, offset, thr = classify_case(args.side)
    ref = None
    rows = []
    for name, impl in impls:
        out = kernels.classify_points(pts, steps, offset, thr, impl=impl)
        if ref is None:
            ref = out
        assert np.array_equal(np.asarray(out[0]), np.asarray(ref[0]))
        t = best(lambda: kernels.classify_points(pts, steps, offset, thr, impl=impl), args.repeat)
        rows.append(("classify_points", name, len(pts), t))

    grid, offsets = codes_case(args.side)
    for name, impl in impls:
        for o in offsets[:3]:
            assert np.array_equal(kernels.pattern_codes(grid, o, 3, impl=impl),
                                  kernels.pattern_codes(grid, o, 3, impl=_fallback))

        def run_all():
            for o in offsets:
                kernels.pattern_codes(grid, o, 3, impl=impl)

        t = best(run_all, args.repeat)
        rows.append(("pattern_codes", name, len(offsets), t))

    print(f"{'kernel':<16}{'backend':<9}{'items':>9}{'seconds':>11}")
    for kern, name, n, t in rows:
        print(f"{kern:<16}{name:<9}{n:>9}{t:>11.4f}")
    for kern in ("classify_points", "pattern_codes"):
        times = {name: t for k, name, _, t in rows if k == kern}
        if "cython" in times:
            print(f"{kern}: speedup {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
