# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled verification kernels.

Same contract as braceblocks._kernels.fallback: exhaustive scans return
the encoded triple (g*n + h)*n + k of the first violation in
lexicographic order, or -1; sampled scans return the first offending
sample index, or -1.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t

BACKEND = "compiled"


def assoc_violation(const int32_t[:, ::1] table, long g_start, long g_end):
    cdef long n = table.shape[0]
    cdef long g, h, k
    cdef int32_t gh, hk
    with nogil:
        for g in range(g_start, g_end):
            for h in range(n):
                gh = table[g, h]
                for k in range(n):
                    hk = table[h, k]
                    if table[gh, k] != table[g, hk]:
                        with gil:
                            return (g * n + h) * n + k
    return -1


def assoc_violation_samples(
    const int32_t[:, ::1] table,
    const int64_t[::1] gs,
    const int64_t[::1] hs,
    const int64_t[::1] ks,
):
    cdef long m = gs.shape[0]
    cdef long i
    cdef int64_t g, h, k
    with nogil:
        for i in range(m):
            g = gs[i]
            h = hs[i]
            k = ks[i]
            if table[table[g, h], k] != table[g, table[h, k]]:
                with gil:
                    return i
    return -1


def skew_violation(
    const int32_t[:, ::1] op2,
    const int32_t[:, ::1] op1,
    const int32_t[::1] inv1,
    long g_start,
    long g_end,
):
    """First (g, h, k) with g o2 (h o1 k) != (g o2 h) o1 inv1(g) o1 (g o2 k)."""
    cdef long n = op2.shape[0]
    cdef long g, h, k
    cdef int32_t ginv, gh, u
    with nogil:
        for g in range(g_start, g_end):
            ginv = inv1[g]
            for h in range(n):
                gh = op2[g, h]
                u = op1[gh, ginv]
                for k in range(n):
                    if op2[g, op1[h, k]] != op1[u, op2[g, k]]:
                        with gil:
                            return (g * n + h) * n + k
    return -1


def skew_violation_samples(
    const int32_t[:, ::1] op2,
    const int32_t[:, ::1] op1,
    const int32_t[::1] inv1,
    const int64_t[::1] gs,
    const int64_t[::1] hs,
    const int64_t[::1] ks,
):
    cdef long m = gs.shape[0]
    cdef long i
    cdef int64_t g, h, k
    with nogil:
        for i in range(m):
            g = gs[i]
            h = hs[i]
            k = ks[i]
            if op2[g, op1[h, k]] != op1[op1[op2[g, h], inv1[g]], op2[g, k]]:
                with gil:
                    return i
    return -1


cdef inline bint _braid_bad(const int64_t[::1] rmap, long n,
                            long x, long y, long z) nogil:
    cdef int64_t p, a, b, c, d, e, f, u, v, w, s, t, o
    # lhs: (r x id)(id x r)(r x id), applied left factor first
    p = rmap[x * n + y]
    a = p / n
    b = p % n
    p = rmap[b * n + z]
    c = p / n
    d = p % n
    p = rmap[a * n + c]
    e = p / n
    f = p % n
    # rhs: (id x r)(r x id)(id x r)
    p = rmap[y * n + z]
    u = p / n
    v = p % n
    p = rmap[x * n + u]
    w = p / n
    s = p % n
    p = rmap[s * n + v]
    t = p / n
    o = p % n
    return e != w or f != t or d != o


def braid_violation(const int64_t[::1] rmap, long n, long x_start, long x_end):
    cdef long x, y, z
    with nogil:
        for x in range(x_start, x_end):
            for y in range(n):
                for z in range(n):
                    if _braid_bad(rmap, n, x, y, z):
                        with gil:
                            return (x * n + y) * n + z
    return -1


def braid_violation_samples(
    const int64_t[::1] rmap,
    long n,
    const int64_t[::1] xs,
    const int64_t[::1] ys,
    const int64_t[::1] zs,
):
    cdef long m = xs.shape[0]
    cdef long i
    with nogil:
        for i in range(m):
            if _braid_bad(rmap, n, xs[i], ys[i], zs[i]):
                with gil:
                    return i
    return -1


cdef struct _SearchState:
    long n
    int32_t* T
    unsigned int* rowmask
    unsigned int* colmask


cdef bint _partial_ok(_SearchState* st, long i, long j, int32_t v) nogil:
    cdef long n = st.n
    cdef long k
    cdef int32_t jk, ki, lhs, rhs
    for k in range(n):
        jk = st.T[j * n + k]
        if jk >= 0:
            lhs = st.T[v * n + k]
            rhs = st.T[i * n + jk]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
        ki = st.T[k * n + i]
        if ki >= 0:
            lhs = st.T[ki * n + j]
            rhs = st.T[k * n + v]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
    return True


cdef bint _full_ok(_SearchState* st) nogil:
    cdef long n = st.n
    cdef long a, b, c
    cdef int32_t ab, bc
    for a in range(n):
        for b in range(n):
            ab = st.T[a * n + b]
            for c in range(n):
                bc = st.T[b * n + c]
                if st.T[ab * n + c] != st.T[a * n + bc]:
                    return False
    return True


cdef void _copy_table(_SearchState* st, object arr):
    cdef int32_t[:, ::1] view = arr
    cdef long n = st.n
    cdef long a, b
    for a in range(n):
        for b in range(n):
            view[a, b] = st.T[a * n + b]


cdef void _place(_SearchState* st, long c, list out):
    cdef long n = st.n
    cdef long ncells = (n - 1) * (n - 1)
    cdef long i, j
    cdef int32_t v
    cdef unsigned int bit
    if c == ncells:
        if _full_ok(st):
            arr = np.empty((n, n), dtype=np.int32)
            _copy_table(st, arr)
            out.append(arr)
        return
    i = 1 + c // (n - 1)
    j = 1 + c % (n - 1)
    for v in range(<int32_t>n):
        bit = (<unsigned int>1) << v
        if st.rowmask[i] & bit or st.colmask[j] & bit:
            continue
        st.T[i * n + j] = v
        if _partial_ok(st, i, j, v):
            st.rowmask[i] |= bit
            st.colmask[j] |= bit
            _place(st, c + 1, out)
            st.rowmask[i] &= ~bit
            st.colmask[j] &= ~bit
        st.T[i * n + j] = -1


def cayley_tables(long n):
    """All group multiplication tables on {0..n-1} with identity 0."""
    if n < 1 or n > 16:
        raise ValueError(f"carrier size {n} outside supported range 1..16")
    if n == 1:
        return np.zeros((1, 1, 1), dtype=np.int32)
    T_arr = np.full(n * n, -1, dtype=np.int32)
    cdef int32_t[::1] T = T_arr
    row_arr = np.zeros(n, dtype=np.uint32)
    col_arr = np.zeros(n, dtype=np.uint32)
    cdef unsigned int[::1] rowmask = row_arr
    cdef unsigned int[::1] colmask = col_arr
    cdef long i, j
    for j in range(n):
        T[j] = <int32_t>j
    for i in range(n):
        T[i * n] = <int32_t>i
    cdef unsigned int full = <unsigned int>((1 << n) - 1)
    rowmask[0] = full
    colmask[0] = full
    for i in range(1, n):
        rowmask[i] = (<unsigned int>1) << i
        colmask[i] = (<unsigned int>1) << i
    cdef _SearchState st
    st.n = n
    st.T = &T[0]
    st.rowmask = &rowmask[0]
    st.colmask = &colmask[0]
    out: list = []
    _place(&st, 0, out)
    if not out:
        return np.zeros((0, n, n), dtype=np.int32)
    return np.stack(out)
