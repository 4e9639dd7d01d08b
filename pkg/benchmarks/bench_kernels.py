"""Time the compiled and pure-Python kernel backends on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from abmaps import kernels
from abmaps.graphs import HammingGraphSpec, _bfs_order, adjacency_rows


def cases():
    clique_rows = adjacency_rows(HammingGraphSpec(7, 2, True))  # cliques = codes of distance 3
    src, dst = HammingGraphSpec(4, 2, True), HammingGraphSpec(6, 4, True)
    hom_args = (adjacency_rows(src), adjacency_rows(dst), _bfs_order(src), True, 10_000_000)
    rng = np.random.default_rng(1)
    k = 11
    images = rng.integers(0, 1 << 12, size=1 << k, dtype=np.uint64)
    members = np.arange(1 << k, dtype=np.uint64)
    return {
        "max_clique Hc(7,2)": lambda m: m.max_clique(clique_rows, 0, 10_000_000),
        "hom_search Hc(4,2)->Hc(6,4)": lambda m: m.hom_search(*hom_args),
        "pair_profile k=11": lambda m: m.pair_profile(images, k),
        "count_violations k=11": lambda m: m.count_violations(images, members, 4, 3),
    }


def best_time(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(x, y) -> bool:
    if isinstance(x, tuple):
        return len(x) == len(y) and all(_same(a, b) for a, b in zip(x, y))
    return bool(np.array_equal(np.asarray(x), np.asarray(y)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = [n for n in ("python", "compiled") if n in kernels.BACKENDS]
    if "compiled" not in names:
        print("compiled extension not built; timing the python backend only")
    print(f"{'kernel':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases().items():
        times, outs = [], []
        for n in names:
            t, out = best_time(lambda: fn(kernels.BACKENDS[n]), args.repeat)
            times.append(t)
            outs.append(out)
        line = f"{label:32s}" + "".join(f"{t:11.4f}s" for t in times)
        if len(names) == 2:
            line += f"{times[0] / times[1]:11.1f}x"
            if not _same(outs[0], outs[1]):
                line += "  RESULTS DIFFER"
        print(line)


if __name__ == "__main__":
    main()
