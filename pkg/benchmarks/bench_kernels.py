"""Time the compiled kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py --n 200 --delta 6 --steps 200000

Both backends consume identical variates, and the final colorings are checked
for equality before timings are reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kempeflip import _kernels_py
from kempeflip.chains import preset
from kempeflip.constructions import default_k, random_graph
from kempeflip.harness import greedy_coloring


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(n: int, delta: int, steps: int, repeat: int, seed: int) -> list:
    try:
        from kempeflip import _ext
    except ImportError:
        _ext = None
    rng = np.random.default_rng(seed)
    G = random_graph(n, delta, rng)
    k = default_k(delta)
    start = np.asarray(greedy_coloring(G, k), dtype=np.int64)
    indptr, indices = G.csr
    acc = preset("vigoda_eq11").acceptance_table(n)
    vs, cs, us = rng.integers(n, size=steps), rng.integers(k, size=steps), rng.random(steps)
    other = rng.integers(k, size=n).astype(np.int64)

    backends = [("python", _kernels_py)] + ([("cython", _ext)] if _ext is not None else [])
    rows, finals = [], {}
    for name, mod in backends:
        def flip():
            col = start.copy()
            mod.flip_steps(indptr, indices, col, acc, vs, cs, us)
            finals[name] = col

        def glauber():
            mod.glauber_steps(indptr, indices, start.copy(), vs, cs)

        def grand():
            mod.grand_coupling_steps(indptr, indices, start.copy(), other.copy(), acc, vs, cs, us)

        for kernel, fn in (("flip_steps", flip), ("glauber_steps", glauber),
                           ("grand_coupling_steps", grand)):
            rows.append((kernel, name, _time(fn, repeat)))
    if len(finals) == 2:
        assert np.array_equal(finals["python"], finals["cython"]), "backends disagree"
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--delta", type=int, default=6)
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rows = run(args.n, args.delta, args.steps, args.repeat, args.seed)
    print(f"n={args.n} Delta={args.delta} steps={args.steps} (best of {args.repeat})")
    print(f"{'kernel':<22}{'backend':<9}{'seconds':>10}{'steps/s':>14}")
    base = {}
    for kernel, name, sec in rows:
        base.setdefault(kernel, sec)
        speed = f"  x{base[kernel] / sec:.1f}" if name != "python" else ""
        print(f"{kernel:<22}{name:<9}{sec:>10.4f}{args.steps / sec:>14.0f}{speed}")


if __name__ == "__main__":
    main()
