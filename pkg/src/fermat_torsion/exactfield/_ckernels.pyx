# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels for tower arithmetic.

Products whose coefficients provably fit in 64 bits run in C; anything
larger drops to the Python-integer loops in ``_kernels_py``.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from . import _kernels_py

cdef enum:
    MAXDIM = 64
    MAXRAW = 1024

cdef long long LIMIT = 1LL << 62


cdef class NativeTable:
    cdef int dim
    cdef int raw_dim
    cdef int *offs
    cdef int *red_start
    cdef int *red_k
    cdef long long *red_c
    cdef long long bound_factor
    cdef object table

    def __dealloc__(self):
        free(self.offs)
        free(self.red_start)
        free(self.red_k)
        free(self.red_c)


def make_table(table):
    cdef NativeTable t = NativeTable.__new__(NativeTable)
    cdef int i, n, pos
    if table.dim > MAXDIM or table.raw_dim > MAXRAW:
        return None
    t.table = table
    t.dim = table.dim
    t.raw_dim = table.raw_dim
    t.bound_factor = table.bound_factor
    t.offs = <int *> malloc(t.dim * sizeof(int))
    for i in range(t.dim):
        t.offs[i] = table.raw_offsets[i]
    n = sum(len(r) for r in table.reduction)
    t.red_start = <int *> malloc((t.raw_dim + 1) * sizeof(int))
    t.red_k = <int *> malloc(max(n, 1) * sizeof(int))
    t.red_c = <long long *> malloc(max(n, 1) * sizeof(long long))
    pos = 0
    for i in range(t.raw_dim):
        t.red_start[i] = pos
        for k, c in table.reduction[i]:
            t.red_k[pos] = k
            t.red_c[pos] = c
            pos += 1
    t.red_start[t.raw_dim] = pos
    return t


cdef bint _load(object vec, long long *out, int dim, long long *vmax):
    """Copy ``vec`` into ``out``; False if an entry does not fit."""
    cdef int i
    cdef long long v, m = 0
    for i in range(dim):
        try:
            v = vec[i]
        except OverflowError:
            return False
        if v > LIMIT or v < -LIMIT:
            return False
        out[i] = v
        if v < 0:
            v = -v
        if v > m:
            m = v
    vmax[0] = m
    return True


cdef inline bint _fits(long long ma, long long mb, long long factor):
    if ma == 0 or mb == 0:
        return True
    if ma > LIMIT // mb:
        return False
    return ma * mb <= LIMIT // factor


cdef list _reduce_c(NativeTable t, long long *raw):
    cdef long long out[MAXDIM]
    cdef int r, p, k
    cdef long long v
    memset(out, 0, t.dim * sizeof(long long))
    for r in range(t.raw_dim):
        v = raw[r]
        if v != 0:
            for p in range(t.red_start[r], t.red_start[r + 1]):
                out[t.red_k[p]] += t.red_c[p] * v
    return [out[k] for k in range(t.dim)]


def mul(table, a, b):
    cdef NativeTable t = table.native
    cdef long long ca[MAXDIM]
    cdef long long cb[MAXDIM]
    cdef long long raw[MAXRAW]
    cdef long long ma, mb, ai
    cdef int i, j, oi
    if t is None:
        return _kernels_py.mul(table, a, b)
    if not (_load(a, ca, t.dim, &ma) and _load(b, cb, t.dim, &mb)) \
            or not _fits(ma, mb, t.bound_factor):
        return _kernels_py.mul(table, a, b)
    memset(raw, 0, t.raw_dim * sizeof(long long))
    for i in range(t.dim):
        ai = ca[i]
        if ai != 0:
            oi = t.offs[i]
            for j in range(t.dim):
                if cb[j] != 0:
                    raw[oi + t.offs[j]] += ai * cb[j]
    return _reduce_c(t, raw)


def dot(table, terms):
    cdef NativeTable t = table.native
    cdef long long ca[MAXDIM]
    cdef long long cb[MAXDIM]
    cdef long long raw[MAXRAW]
    cdef long long ma, mb, ai, s, sabs, total = 0
    cdef int i, j, oi
    if t is None:
        return _kernels_py.dot(table, terms)
    memset(raw, 0, t.raw_dim * sizeof(long long))
    for a, b, s_obj in terms:
        try:
            s = s_obj
        except OverflowError:
            return _kernels_py.dot(table, terms)
        sabs = s if s >= 0 else -s
        if not (_load(a, ca, t.dim, &ma) and _load(b, cb, t.dim, &mb)):
            return _kernels_py.dot(table, terms)
        if sabs > 1:
            if mb != 0 and sabs > LIMIT // mb:
                return _kernels_py.dot(table, terms)
            mb *= sabs
        if not _fits(ma, mb, t.bound_factor):
            return _kernels_py.dot(table, terms)
        # the running sum must stay bounded too
        total += ma * mb
        if total > LIMIT // t.bound_factor:
            return _kernels_py.dot(table, terms)
        for i in range(t.dim):
            ai = ca[i]
            if ai != 0:
                oi = t.offs[i]
                for j in range(t.dim):
                    if cb[j] != 0:
                        raw[oi + t.offs[j]] += ai * cb[j] * s
    return _reduce_c(t, raw)


def mul_matrix(table, a):
    cdef int dim = table.dim
    cdef int i, j
    cols = []
    unit = [0] * dim
    for j in range(dim):
        unit[j] = 1
        cols.append(mul(table, a, unit))
        unit[j] = 0
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def reduce_raw(table, raw):
    return _kernels_py.reduce_raw(table, raw)


def solve(list matrix, list rhs):
    """Fraction-free Gauss-Jordan; same contract as the pure version."""
    cdef Py_ssize_t n = len(matrix)
    cdef Py_ssize_t i, j, k, p
    cdef list a = [list(row) + [r] for row, r in zip(matrix, rhs)]
    cdef list rk, ri
    cdef object prev = 1, pivot, f
    for k in range(n):
        p = k
        while p < n and (<list> a[p])[k] == 0:
            p += 1
        if p == n:
            return None
        if p != k:
            a[k], a[p] = a[p], a[k]
        rk = a[k]
        pivot = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            f = ri[k]
            if f:
                for j in range(n + 1):
                    if j != k:
                        ri[j] = (pivot * ri[j] - f * rk[j]) // prev
            else:
                for j in range(n + 1):
                    if j != k:
                        ri[j] = (pivot * ri[j]) // prev
            ri[k] = 0
        prev = pivot
    return [(<list> a[i])[n] for i in range(n)], prev
