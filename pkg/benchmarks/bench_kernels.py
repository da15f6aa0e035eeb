"""Compare the compiled kernels with the pure-Python fallback.

Each kernel runs on identical inputs in both backends; outputs are checked
for equality and the best of ``--repeat`` wall-clock times is reported.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from distver import _pykernels
from distver.ensembles import EnsembleSpec, sample_ensemble
from distver.field import gf
from distver.search.cluster import _ICState

try:
    from distver import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def best_time(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def case_rref(quick: bool):
    F = gf(4)
    rng = np.random.default_rng(1)
    M = rng.integers(0, 4, size=(60, 120) if quick else (150, 300), dtype=np.int64)

    def run(mod):
        A = M.copy()
        piv = mod.rref_inplace(A, F.add, F.mul, F.inv, F.neg, -1)
        return A, list(piv)

    return f"rref GF(4) {M.shape[0]}x{M.shape[1]}", run, lambda a, b: np.array_equal(a[0], b[0]) and a[1] == b[1]


def case_span(quick: bool):
    code = sample_ensemble(EnsembleSpec("random-linear", 16 if quick else 20, q=3, k=7 if quick else 9, seed=2))
    B = code.block
    F = B.F
    G = np.ascontiguousarray(B.generator, dtype=np.int64)
    offset = np.zeros(B.n, dtype=np.int64)

    def run(mod):
        best, vecs, live, count = mod.span_scan(G, F.add, F.mul, F.q, B.u, B.n, 0, 4, offset)
        return best, np.asarray(vecs), int(count)

    return f"span scan GF(3) [{B.n},{G.shape[0]}]", run, lambda a, b: a[0] == b[0] and a[2] == b[2] and np.array_equal(a[1], b[1])


def case_cluster(quick: bool):
    code = sample_ensemble(EnsembleSpec("B", 48 if quick else 96, l=3, m=6, seed=3))
    state = _ICState(code.block)
    T = state.tables
    wmax = 6 if quick else 8

    def run(mod):
        total, emitted = 0, []
        for j0 in range(code.n):
            vecs, nodes = mod.cluster_dfs(T.contrib, T.add, T.neg, T.supp_ptr, T.supp_idx, T.pre, T.npre,
                                          T.ai_start, T.ai_end, T.ai_vals, T.vmax, j0, state.start_syms, wmax)
            total += int(nodes)
            emitted.append(np.asarray(vecs))
        return total, np.concatenate(emitted) if emitted else np.zeros((0, code.n))

    def same(a, b):
        return a[0] == b[0] and np.array_equal(np.unique(a[1], axis=0), np.unique(b[1], axis=0))

    return f"cluster DFS B(3,6) n={code.n} D={wmax}", run, same


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller instances")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'kernel':40s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}  agree")
    for make in (case_rref, case_span, case_cluster):
        name, run, same = make(args.quick)
        tp, op = best_time(lambda: run(_pykernels), args.repeat)
        tc, oc = best_time(lambda: run(_ckernels), args.repeat)
        print(f"{name:40s} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f}  {same(op, oc)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
