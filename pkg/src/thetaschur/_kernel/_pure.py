"""Pure-Python kernel: GF(p) row reduction and integer Laurent convolution.

Same surface as the compiled kernel in ``_speedups.pyx``; used as the
fallback when the extension is unavailable or ``THETASCHUR_PURE=1``.
"""

IMPLEMENTATION = "pure"


def rref(rows, ncols, p):
    """Reduced row-echelon form over GF(p).

    Returns ``(rows, rank)`` where ``rows`` is a canonical tuple of pivot
    row tuples (zero rows dropped).  The input may contain entries outside
    [0, p); they are reduced mod p.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    for r in mat:
        for j in range(ncols):
            r[j] %= p
    rank = 0
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if mat[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        row = mat[rank]
        for j in range(col, ncols):
            row[j] = (row[j] * inv) % p
        for i in range(nrows):
            if i != rank and mat[i][col]:
                c = mat[i][col]
                ri = mat[i]
                for j in range(col, ncols):
                    ri[j] = (ri[j] - c * row[j]) % p
        rank += 1
        if rank == nrows:
            break
    return tuple(tuple(r) for r in mat[:rank]), rank


def rank(rows, ncols, p):
    """Rank over GF(p) (forward elimination only)."""
    mat = [[x % p for x in r] for r in rows]
    nrows = len(mat)
    rk = 0
    for col in range(ncols):
        piv = -1
        for i in range(rk, nrows):
            if mat[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        inv = pow(mat[rk][col], p - 2, p)
        row = mat[rk]
        for j in range(col, ncols):
            row[j] = (row[j] * inv) % p
        for i in range(rk + 1, nrows):
            if mat[i][col]:
                c = mat[i][col]
                ri = mat[i]
                for j in range(col, ncols):
                    ri[j] = (ri[j] - c * row[j]) % p
        rk += 1
        if rk == nrows:
            break
    return rk


def rank2(rows_a, rows_b, ncols, p):
    """Rank of the vertical stack of two row lists over GF(p)."""
    return rank(list(rows_a) + list(rows_b), ncols, p)


def poly_mul(a, b):
    """Convolution of two integer Laurent polynomials as exponent->coeff dicts."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out
