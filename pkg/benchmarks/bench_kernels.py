"""Benchmark the compiled kernels against the NumPy fallback.

Runs the three scan kernels (associativity, skew brace identity, braid
relation) exhaustively and in sampled mode, plus the Cayley table
enumerator, on representative sizes. Reports best-of-N wall times and
the speedup of the compiled extension where it is available.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--samples N]
"""

from __future__ import annotations

import argparse
import time
from typing import Callable, Optional

import numpy as np

from braceblocks._kernels import fallback
from braceblocks.catalog import heisenberg_block
from braceblocks.yang_baxter import solutions_from_brace

try:
    from braceblocks._kernels import _ckernels as compiled
except ImportError:
    compiled = None


def best_of(fn: Callable[[], object], repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def sample_triples(n: int, count: int, seed: int = 1729):
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n, size=(3, count), dtype=np.int64)
    return draws[0], draws[1], draws[2]


def build_cases(samples: int):
    entry = heisenberg_block(5)
    dot = entry.operations[0]
    circ = entry.operations[1]
    n = dot.base.order
    t_dot = np.ascontiguousarray(dot.table(), dtype=np.int32)
    t_circ = np.ascontiguousarray(circ.table(), dtype=np.int32)
    inv1 = np.ascontiguousarray(dot.inverse_array(), dtype=np.int32)
    r, _ = solutions_from_brace(dot, circ)
    rmap = np.ascontiguousarray(r.rmap, dtype=np.int64)
    gs, hs, ks = sample_triples(n, samples)

    cases = [
        (f"assoc exhaustive n={n}",
         lambda impl: impl.assoc_violation(t_dot, 0, n)),
        (f"skew exhaustive n={n}",
         lambda impl: impl.skew_violation(t_circ, t_dot, inv1, 0, n)),
        (f"braid exhaustive n={n}",
         lambda impl: impl.braid_violation(rmap, n, 0, n)),
        (f"assoc sampled {samples} n={n}",
         lambda impl: impl.assoc_violation_samples(t_dot, gs, hs, ks)),
        (f"skew sampled {samples} n={n}",
         lambda impl: impl.skew_violation_samples(t_circ, t_dot, inv1, gs, hs, ks)),
        (f"braid sampled {samples} n={n}",
         lambda impl: impl.braid_violation_samples(rmap, n, gs, hs, ks)),
        ("cayley tables n=5",
         lambda impl: impl.cayley_tables(5)),
        ("cayley tables n=6",
         lambda impl: impl.cayley_tables(6)),
    ]
    return cases


def check_agreement(samples: int) -> None:
    """The two backends must return identical results on every case."""
    if compiled is None:
        return
    for label, runner in build_cases(samples):
        a = runner(fallback)
        b = runner(compiled)
        if isinstance(a, np.ndarray):
            assert np.array_equal(a, b), f"backend mismatch on {label}"
        else:
            assert a == b, f"backend mismatch on {label}: {a} != {b}"


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--samples", type=int, default=1_000_000)
    args = parser.parse_args(argv)

    check_agreement(min(args.samples, 10_000))

    backends = [("fallback", fallback)]
    if compiled is not None:
        backends.append(("compiled", compiled))
    else:
        print("compiled extension not available; timing the fallback only")

    width = 30
    header = f"{'case':<{width}}" + "".join(f"{name:>12}" for name, _ in backends)
    if compiled is not None:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, runner in build_cases(args.samples):
        row = f"{label:<{width}}"
        times = []
        for _, impl in backends:
            dt = best_of(lambda: runner(impl), args.repeat)
            times.append(dt)
            row += f"{dt * 1000:>10.1f}ms"
        if compiled is not None and times[-1] > 0:
            row += f"{times[0] / times[-1]:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
