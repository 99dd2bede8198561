"""Pure NumPy verification kernels.

Mirrors the compiled extension exactly: same signatures, same return
encoding, same first-violation order (lexicographic in (g, h, k)).
Exhaustive scans return the encoded triple (g*n + h)*n + k of the first
violation, or -1; sampled scans return the first offending sample index,
or -1.
"""

from __future__ import annotations

import numpy as np

BACKEND = "fallback"


def _first_true(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask.ravel())[0])


def assoc_violation(table: np.ndarray, g_start: int, g_end: int) -> int:
    n = table.shape[0]
    for g in range(g_start, g_end):
        left = table[table[g]]
        right = table[g][table]
        bad = left != right
        if bad.any():
            flat = _first_true(bad)
            h, k = divmod(flat, n)
            return (g * n + h) * n + k
    return -1


def assoc_violation_samples(
    table: np.ndarray, gs: np.ndarray, hs: np.ndarray, ks: np.ndarray
) -> int:
    left = table[table[gs, hs], ks]
    right = table[gs, table[hs, ks]]
    bad = left != right
    return _first_true(bad) if bad.any() else -1


def skew_violation(
    op2: np.ndarray, op1: np.ndarray, inv1: np.ndarray, g_start: int, g_end: int
) -> int:
    """First (g, h, k) with g o2 (h o1 k) != (g o2 h) o1 inv1(g) o1 (g o2 k)."""
    n = op2.shape[0]
    for g in range(g_start, g_end):
        row2 = op2[g]
        left = row2[op1]
        u = op1[row2, inv1[g]]
        right = op1[u[:, None], row2[None, :]]
        bad = left != right
        if bad.any():
            flat = _first_true(bad)
            h, k = divmod(flat, n)
            return (g * n + h) * n + k
    return -1


def skew_violation_samples(
    op2: np.ndarray,
    op1: np.ndarray,
    inv1: np.ndarray,
    gs: np.ndarray,
    hs: np.ndarray,
    ks: np.ndarray,
) -> int:
    left = op2[gs, op1[hs, ks]]
    right = op1[op1[op2[gs, hs], inv1[gs]], op2[gs, ks]]
    bad = left != right
    return _first_true(bad) if bad.any() else -1


def _braid_sides(rmap, n, xs, ys, zs):
    # lhs: (r x id)(id x r)(r x id), applied left factor first
    p = rmap[xs * n + ys]
    a, b = p // n, p % n
    p = rmap[b * n + zs]
    c, d = p // n, p % n
    p = rmap[a * n + c]
    e, f = p // n, p % n
    # rhs: (id x r)(r x id)(id x r)
    p = rmap[ys * n + zs]
    u, v = p // n, p % n
    p = rmap[xs * n + u]
    w, s = p // n, p % n
    p = rmap[s * n + v]
    t, o = p // n, p % n
    return (e != w) | (f != t) | (d != o)


def braid_violation(rmap: np.ndarray, n: int, x_start: int, x_end: int) -> int:
    ys = np.arange(n, dtype=np.int64)[:, None]
    zs = np.arange(n, dtype=np.int64)[None, :]
    for x in range(x_start, x_end):
        bad = _braid_sides(rmap, n, np.int64(x), ys, zs)
        if bad.any():
            flat = _first_true(bad)
            y, z = divmod(flat, n)
            return (x * n + y) * n + z
    return -1


def braid_violation_samples(
    rmap: np.ndarray, n: int, xs: np.ndarray, ys: np.ndarray, zs: np.ndarray
) -> int:
    bad = _braid_sides(rmap, n, xs, ys, zs)
    return _first_true(bad) if bad.any() else -1


def cayley_tables(n: int) -> np.ndarray:
    """All group multiplication tables on {0..n-1} with identity 0.

    Backtracking over cells in row-major order, candidate values
    ascending, latin row/column masks plus partial associativity
    propagation; every completed table passes a full check before
    being recorded. Output order is deterministic.
    """
    if n == 1:
        return np.zeros((1, 1, 1), dtype=np.int32)
    T = np.full((n, n), -1, dtype=np.int32)
    T[0, :] = np.arange(n)
    T[:, 0] = np.arange(n)
    full = (1 << n) - 1
    rowmask = [full] + [1 << i for i in range(1, n)]
    colmask = [full] + [1 << j for j in range(1, n)]
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    out: list[np.ndarray] = []

    def partial_ok(i: int, j: int, v: int) -> bool:
        for k in range(n):
            jk = T[j, k]
            if jk >= 0:
                lhs = T[v, k]
                rhs = T[i, jk]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
            ki = T[k, i]
            if ki >= 0:
                lhs = T[ki, j]
                rhs = T[k, v]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
        return True

    def full_ok() -> bool:
        return bool((T[T] == T[:, T]).all())

    def place(c: int) -> None:
        if c == len(cells):
            if full_ok():
                out.append(T.copy())
            return
        i, j = cells[c]
        avail = ~(rowmask[i] | colmask[j]) & full
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            T[i, j] = v
            if partial_ok(i, j, v):
                rowmask[i] |= 1 << v
                colmask[j] |= 1 << v
                place(c + 1)
                rowmask[i] &= ~(1 << v)
                colmask[j] &= ~(1 << v)
            T[i, j] = -1

    place(0)
    if not out:
        return np.zeros((0, n, n), dtype=np.int32)
    return np.stack(out)
