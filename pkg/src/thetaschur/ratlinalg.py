"""Exact linear algebra over Q, plus mod-p rank bounds.

Commutant dimensions are certified exactly from two sides: an exhibited
family of commuting operators gives a lower bound through an exact rational
rank, and a mod-p elimination of the commutant constraint system gives an
upper bound on its nullity (rank mod p never exceeds rank over Q).  When
the two meet, the dimension is proved.
"""

from fractions import Fraction

import numpy as np

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction


def rank_exact(rows):
    """Rank over Q of a list of rational rows (destructive on a copy)."""
    mat = [[QQ(x) for x in r] for r in rows]
    nrows = len(mat)
    if nrows == 0:
        return 0
    ncols = len(mat[0])
    rk = 0
    for col in range(ncols):
        piv = None
        for i in range(rk, nrows):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        prow = mat[rk]
        inv = 1 / prow[col]
        mat[rk] = [x * inv for x in prow]
        prow = mat[rk]
        for i in range(rk + 1, nrows):
            c = mat[i][col]
            if c:
                mat[i] = [x - c * y for x, y in zip(mat[i], prow)]
        rk += 1
        if rk == nrows:
            break
    return rk


def _scale_rows_to_int(rows):
    """Clear denominators rowwise; returns integer rows and the set of primes
    dividing any scaling factor (those p are unusable for mod-p bounds)."""
    out = []
    bad = set()
    for r in rows:
        fr = [Fraction(x.numerator, x.denominator) if not isinstance(x, Fraction)
              else x for x in r]
        lcm = 1
        for x in fr:
            d = x.denominator
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        out.append([int(x * lcm) for x in fr])
        m = lcm
        k = 2
        while k * k <= m:
            if m % k == 0:
                bad.add(k)
                while m % k == 0:
                    m //= k
            k += 1
        if m > 1:
            bad.add(m)
    return out, bad


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank_modp(int_rows, p):
    """Rank over GF(p) of integer rows, vectorized elimination."""
    if not int_rows:
        return 0
    A = np.array(int_rows, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[r + 1:, c]
        mask = col != 0
        if mask.any():
            A[r + 1:][mask] = (A[r + 1:][mask] - col[mask, None] * A[r][None, :]) % p
        r += 1
        if r == nrows:
            break
    return r


MODP_PRIMES = (1048573, 2097143)


def nullity_upper_bound(rational_rows, primes=MODP_PRIMES):
    """min over usable primes of (ncols - rank mod p): an upper bound for the
    nullity over Q."""
    int_rows, bad = _scale_rows_to_int(rational_rows)
    ncols = len(int_rows[0]) if int_rows else 0
    best = ncols
    used = 0
    for p in primes:
        if p in bad:
            continue
        best = min(best, ncols - rank_modp(int_rows, p))
        used += 1
    if used == 0:
        raise RuntimeError("no usable prime for the mod-p bound")
    return best


def commutant_constraints(ops):
    """Rows of the linear system [X, G] = 0 for all G in ops (m x m rational)."""
    m = len(ops[0])
    rows = []
    for G in ops:
        for i in range(m):
            for j in range(m):
                row = [Fraction(0)] * (m * m)
                for k in range(m):
                    # + X[i,k] G[k,j]
                    if G[k][j]:
                        row[i * m + k] += G[k][j]
                    # - G[i,k] X[k,j]
                    if G[i][k]:
                        row[k * m + j] -= G[i][k]
                if any(row):
                    rows.append(row)
    return rows


def certified_commutant_dim(constraint_ops, exhibited):
    """Certified dimension of the commutant of ``constraint_ops``.

    ``exhibited`` is a list of m x m matrices known (exactly) to commute with
    every constraint op; their span gives the lower bound.  Returns
    (dim, certified) where certified means lower == upper.
    """
    m = len(constraint_ops[0])
    flat = [[x for row in M for x in row] for M in exhibited]
    lower = rank_exact(flat)
    rows = commutant_constraints(constraint_ops)
    upper = nullity_upper_bound(rows)
    return (lower, lower == upper)


def mat_mul(A, B):
    m = len(A)
    k = len(B)
    n = len(B[0])
    out = [[Fraction(0)] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        for kk in range(k):
            a = Ai[kk]
            if a:
                Bk = B[kk]
                row = out[i]
                for j in range(n):
                    if Bk[j]:
                        row[j] += a * Bk[j]
    return out


def mat_commute(A, B):
    return mat_mul(A, B) == mat_mul(B, A)


def span_closure_dim(seeds, generators):
    """Dimension of the unital algebra generated: closes the span of ``seeds``
    under right multiplication by ``generators``; returns (dim, basis)."""
    m = len(seeds[0])
    basis_rows = []
    basis_mats = []

    def try_add(M):
        flat = [x for row in M for x in row]
        if rank_exact(basis_rows + [flat]) > len(basis_rows):
            basis_rows.append(flat)
            basis_mats.append(M)
            return True
        return False

    frontier = []
    for M in seeds:
        if try_add(M):
            frontier.append(M)
    while frontier:
        nxt = []
        for M in frontier:
            for G in generators:
                P = mat_mul(M, G)
                if try_add(P):
                    nxt.append(P)
        frontier = nxt
    return len(basis_mats), basis_mats
