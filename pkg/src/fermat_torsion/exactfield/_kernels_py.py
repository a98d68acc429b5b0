"""Pure-Python integer kernels for tower arithmetic.

Every function works on integer coefficient vectors; denominators are the
caller's business.  The compiled module ``_ckernels`` exposes the same names
and must agree bit-for-bit.
"""

from __future__ import annotations


def reduce_raw(table, raw):
    out = [0] * table.dim
    red = table.reduction
    for r, v in enumerate(raw):
        if v:
            for k, c in red[r]:
                out[k] += c * v
    return out


def mul(table, a, b):
    """Reduced product of two integer coefficient vectors."""
    offs = table.raw_offsets
    nzb = [(offs[j], bj) for j, bj in enumerate(b) if bj]
    if not nzb:
        return [0] * table.dim
    raw = [0] * table.raw_dim
    for i, ai in enumerate(a):
        if ai:
            oi = offs[i]
            for oj, bj in nzb:
                raw[oi + oj] += ai * bj
    return reduce_raw(table, raw)


def dot(table, terms):
    """Reduced sum of s * a * b over ``terms`` = [(a, b, s), ...]."""
    offs = table.raw_offsets
    raw = [0] * table.raw_dim
    for a, b, s in terms:
        nzb = [(offs[j], bj * s) for j, bj in enumerate(b) if bj]
        if not nzb:
            continue
        for i, ai in enumerate(a):
            if ai:
                oi = offs[i]
                for oj, bj in nzb:
                    raw[oi + oj] += ai * bj
    return reduce_raw(table, raw)


def mul_matrix(table, a):
    """Matrix (list of rows) of multiplication by ``a`` in the monomial basis."""
    dim = table.dim
    cols = []
    unit = [0] * dim
    for j in range(dim):
        unit[j] = 1
        cols.append(mul(table, a, unit))
        unit[j] = 0
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` over the rationals by fraction-free elimination.

    Returns ``(numerators, denominator)`` with an unnormalized common
    denominator, or ``None`` when the matrix is singular.
    """
    n = len(matrix)
    a = [list(row) + [r] for row, r in zip(matrix, rhs)]
    prev = 1
    for k in range(n):
        p = k
        while p < n and a[p][k] == 0:
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
    return [a[i][n] for i in range(n)], prev
