# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: GF(p) row reduction and integer Laurent convolution.

Mirrors ``_pure.py``.  Matrices are tiny (dimensions bounded by the ambient
space, <= ~16) but the oracle reduces millions of them, so the per-call
overhead is what matters.
"""

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "compiled"


cdef inline long mod_inv(long a, long p):
    # Fermat; p is prime and a != 0 mod p.
    cdef long result = 1
    cdef long base = a % p
    cdef long e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef long _reduce(long* m, Py_ssize_t nrows, Py_ssize_t ncols, long p,
                  bint full):
    cdef Py_ssize_t rank = 0, col, i, j, piv
    cdef long inv, c, tmp
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i * ncols + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                tmp = m[rank * ncols + j]
                m[rank * ncols + j] = m[piv * ncols + j]
                m[piv * ncols + j] = tmp
        inv = mod_inv(m[rank * ncols + col], p)
        for j in range(col, ncols):
            m[rank * ncols + j] = (m[rank * ncols + j] * inv) % p
        for i in range(nrows):
            if i == rank:
                continue
            if not full and i < rank:
                continue
            c = m[i * ncols + col]
            if c != 0:
                for j in range(col, ncols):
                    m[i * ncols + j] = (m[i * ncols + j] - c * m[rank * ncols + j]) % p
                    if m[i * ncols + j] < 0:
                        m[i * ncols + j] += p
        rank += 1
        if rank == nrows:
            break
    return rank


cdef long* _load(rows, Py_ssize_t nrows, Py_ssize_t ncols, long p) except NULL:
    cdef long* m = <long*> malloc(nrows * ncols * sizeof(long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0, j
    cdef long x
    for row in rows:
        j = 0
        for entry in row:
            x = entry % p
            if x < 0:
                x += p
            m[i * ncols + j] = x
            j += 1
        i += 1
    return m


def rref(rows, ncols, p):
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nc = ncols
    cdef long pp = p
    if nrows == 0:
        return (), 0
    cdef long* m = _load(rows, nrows, nc, pp)
    cdef Py_ssize_t rank
    try:
        rank = _reduce(m, nrows, nc, pp, True)
        out = tuple(tuple(m[i * nc + j] for j in range(nc)) for i in range(rank))
    finally:
        free(m)
    return out, rank


def rank(rows, ncols, p):
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nc = ncols
    cdef long pp = p
    if nrows == 0:
        return 0
    cdef long* m = _load(rows, nrows, nc, pp)
    cdef Py_ssize_t rk
    try:
        rk = _reduce(m, nrows, nc, pp, False)
    finally:
        free(m)
    return rk


def rank2(rows_a, rows_b, ncols, p):
    return rank(list(rows_a) + list(rows_b), ncols, p)


def poly_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    cdef long ea, eb, e
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out
