"""Triple-scan driver: mode resolution, thread partitioning, sampling.

Exhaustive scans partition the leading index range across a thread pool
(the compiled kernels release the GIL; the NumPy fallback releases it
inside ufuncs). The reported violation is always the lexicographically
first one, which the encoded-triple ordering makes equal to the minimum
over per-worker results. Sampled scans draw triples from a seeded
generator so reports are reproducible.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

EXHAUSTIVE_TRIPLE_LIMIT = 10**9
DEFAULT_SAMPLE_COUNT = 10**6
DEFAULT_SEED = 1729
_PARALLEL_THRESHOLD = 2 * 10**6


@dataclass
class ScanResult:
    violation: Optional[int]
    triples_checked: int
    mode: str
    seed: Optional[int]

    @property
    def ok(self) -> bool:
        return self.violation is None

    def triple(self, n: int) -> Optional[Tuple[int, int, int]]:
        if self.violation is None:
            return None
        t = self.violation
        k = t % n
        t //= n
        return (t // n, t % n, k)


def thread_count() -> int:
    env = os.environ.get("BRACEBLOCK_THREADS")
    cap = int(env) if env else 4
    return max(1, min(cap, os.cpu_count() or 1))


def parse_mode(mode: str) -> Tuple[str, Optional[int], Optional[int]]:
    """Parse 'auto', 'exhaustive' or 'sampled[:seed[:count]]'."""
    if mode in ("auto", "exhaustive"):
        return mode, None, None
    if mode == "sampled":
        return "sampled", DEFAULT_SEED, DEFAULT_SAMPLE_COUNT
    if mode.startswith("sampled:"):
        parts = mode.split(":")
        seed = int(parts[1]) if len(parts) > 1 and parts[1] else DEFAULT_SEED
        count = (
            int(parts[2]) if len(parts) > 2 and parts[2] else DEFAULT_SAMPLE_COUNT
        )
        return "sampled", seed, count
    raise ValueError(f"unknown mode {mode!r}")


def resolve_mode(
    n: int, mode: str = "auto", seed: Optional[int] = None, count: Optional[int] = None
) -> Tuple[str, Optional[int], Optional[int]]:
    kind, mseed, mcount = parse_mode(mode)
    if kind == "auto":
        kind = "exhaustive" if n**3 <= EXHAUSTIVE_TRIPLE_LIMIT else "sampled"
    if kind == "exhaustive":
        return "exhaustive", None, None
    return (
        "sampled",
        seed if seed is not None else (mseed or DEFAULT_SEED),
        count if count is not None else (mcount or DEFAULT_SAMPLE_COUNT),
    )


def run_exhaustive(n: int, range_fn: Callable[[int, int], int]) -> ScanResult:
    """range_fn(g0, g1) scans g in [g0, g1) and returns encoded triple or -1."""
    workers = thread_count()
    if workers == 1 or n**3 < _PARALLEL_THRESHOLD or n < workers:
        hit = range_fn(0, n)
        return ScanResult(None if hit < 0 else hit, n**3, "exhaustive", None)
    bounds = np.linspace(0, n, workers + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        hits = list(
            pool.map(lambda se: range_fn(int(se[0]), int(se[1])), zip(bounds, bounds[1:]))
        )
    found = [h for h in hits if h >= 0]
    return ScanResult(min(found) if found else None, n**3, "exhaustive", None)


def run_sampled(
    n: int,
    sample_fn: Callable[[np.ndarray, np.ndarray, np.ndarray], int],
    seed: int,
    count: int,
) -> ScanResult:
    rng = np.random.default_rng(seed)
    gs, hs, ks = rng.integers(0, n, size=(3, count), dtype=np.int64)
    hit = sample_fn(gs, hs, ks)
    if hit < 0:
        return ScanResult(None, count, "sampled", seed)
    enc = (int(gs[hit]) * n + int(hs[hit])) * n + int(ks[hit])
    return ScanResult(enc, hit + 1, "sampled", seed)
