"""Matrix index sets for the type-B/C Schur algebras and their limits.

All basis labels are N x N integer matrices (N = 2n+1) with the symmetry
a_{ij} = a_{N+1-i,N+1-j}.  This module owns the label sets, the row/column
weights, the orbit-dimension statistics d(A), r(A), d_A, the partial orders,
and the enumerators.  Matrix indices are 0-based internally; the public
``e_theta`` keeps the 1-based convention of the formulas.
"""

import itertools
from dataclasses import dataclass


class ThetaMatrix:
    """Immutable N x N integer matrix with a_{ij} = a_{N+1-i,N+1-j}."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n, rows):
        N = 2 * n + 1
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if len(rows) != N or any(len(r) != N for r in rows):
            raise ValueError(f"expected {N}x{N} matrix")
        for i in range(N):
            for j in range(N):
                if rows[i][j] != rows[N - 1 - i][N - 1 - j]:
                    raise ValueError("matrix is not theta-symmetric")
        self.n = n
        self.rows = rows
        self._hash = hash((n, rows))

    @property
    def N(self):
        return 2 * self.n + 1

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return (isinstance(other, ThetaMatrix)
                and self.n == other.n and self.rows == other.rows)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        return ThetaMatrix(self.n, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return ThetaMatrix(self.n, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __mul__(self, k):
        return ThetaMatrix(self.n, tuple(
            tuple(k * a for a in r) for r in self.rows))

    __rmul__ = __mul__

    def ro(self):
        return tuple(sum(r) for r in self.rows)

    def co(self):
        return tuple(sum(r[j] for r in self.rows) for j in range(self.N))

    def total(self):
        return sum(sum(r) for r in self.rows)

    def transpose(self):
        N = self.N
        return ThetaMatrix(self.n, tuple(
            tuple(self.rows[j][i] for j in range(N)) for i in range(N)))

    def is_diagonal(self):
        return all(self.rows[i][j] == 0
                   for i in range(self.N) for j in range(self.N) if i != j)

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(self.N))

    def center(self):
        return self.rows[self.n][self.n]

    def key(self):
        """Canonical tie-break order: strict upper triangle row-major, then diagonal."""
        N = self.N
        upper = tuple(self.rows[i][j] for i in range(N) for j in range(i + 1, N))
        return (upper, self.diagonal())

    def to_json(self):
        return {"n": self.n, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["n"]), data["rows"])

    def __repr__(self):
        return "ThetaMatrix(n=%d, %s)" % (self.n, [list(r) for r in self.rows])


def e_theta(n, i, j):
    """E^theta_{ij} = E_{ij} + E_{N+1-i,N+1-j} (1-based i, j)."""
    N = 2 * n + 1
    if not (1 <= i <= N and 1 <= j <= N):
        raise ValueError("index out of range")
    rows = [[0] * N for _ in range(N)]
    rows[i - 1][j - 1] += 1
    rows[N - i][N - j] += 1
    return ThetaMatrix(n, rows)


def diag_matrix(n, lam):
    N = 2 * n + 1
    if len(lam) != N:
        raise ValueError("weight vector has wrong length")
    return ThetaMatrix(n, tuple(
        tuple(lam[i] if i == j else 0 for j in range(N)) for i in range(N)))


def is_symmetric_weight(lam):
    N = len(lam)
    return all(lam[i] == lam[N - 1 - i] for i in range(N))


# ---------------------------------------------------------------------------
# set tags and membership


@dataclass(frozen=True)
class SetTag:
    kind: str          # Xi | iXi | TildeXi | TildeXiGt | TildeXiLt | iTildeXi
    n: int
    d: int | None = None


def Xi(n, d):
    return SetTag("Xi", n, d)


def iXi(n, d):
    return SetTag("iXi", n, d)


def TildeXi(n):
    return SetTag("TildeXi", n)


def TildeXiGt(n):
    return SetTag("TildeXiGt", n)


def TildeXiLt(n):
    return SetTag("TildeXiLt", n)


def iTildeXi(n):
    return SetTag("iTildeXi", n)


def _iota_row_ok(A):
    """(n+1)st row and column vanish except the center entry."""
    n, N = A.n, A.N
    return all(A.rows[n][j] == 0 and A.rows[j][n] == 0
               for j in range(N) if j != n)


def member(A, tag):
    if A.n != tag.n:
        return False
    n, N = A.n, A.N
    if A.center() % 2 == 0:
        return False
    if any(A.rows[i][j] < 0 for i in range(N) for j in range(N) if i != j):
        return False
    kind = tag.kind
    if kind in ("Xi", "iXi"):
        if any(A.rows[i][i] < 0 for i in range(N)):
            return False
        if A.total() != 2 * tag.d + 1:
            return False
        return kind == "Xi" or (_iota_row_ok(A) and A.center() == 1)
    if kind == "TildeXi":
        return True
    if kind == "TildeXiGt":
        return A.center() > 0
    if kind == "TildeXiLt":
        return A.center() < 0
    if kind == "iTildeXi":
        return _iota_row_ok(A) and A.center() == 1
    raise ValueError(f"unknown tag {tag}")


# ---------------------------------------------------------------------------
# enumeration

def compositions(total, parts):
    """Weak compositions of ``total`` into ``parts`` nonnegative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _free_cells(n, iota):
    """Free cells of a theta-symmetric matrix outside the diagonal center.

    Rows 1..n over all columns, plus the left half of row n+1 (dropped in
    the iota case, where that row vanishes).
    """
    N = 2 * n + 1
    cells = [(i, j) for i in range(n) for j in range(N)]
    if not iota:
        cells += [(n, j) for j in range(n)]
    if iota:
        cells = [(i, j) for (i, j) in cells if j != n]
    return cells


def _build_from_cells(n, cells, values, center):
    N = 2 * n + 1
    rows = [[0] * N for _ in range(N)]
    for (i, j), val in zip(cells, values):
        rows[i][j] += val
        rows[N - 1 - i][N - 1 - j] += val
    rows[n][n] += center
    return ThetaMatrix(n, rows)


_enum_cache = {}


def enumerate_tag(tag):
    """Complete duplicate-free list for a finite tag, in canonical order."""
    key = (tag.kind, tag.n, tag.d)
    if key in _enum_cache:
        return _enum_cache[key]
    n, d = tag.n, tag.d
    if tag.kind == "Xi":
        cells = _free_cells(n, iota=False)
        out = []
        for k in range(d + 1):
            center = 2 * k + 1
            for vals in compositions(d - k, len(cells)):
                out.append(_build_from_cells(n, cells, vals, center))
    elif tag.kind == "iXi":
        cells = _free_cells(n, iota=True)
        out = [_build_from_cells(n, cells, vals, 1)
               for vals in compositions(d, len(cells))]
    else:
        raise ValueError(f"cannot enumerate infinite set {tag}")
    out.sort(key=ThetaMatrix.key)
    _enum_cache[key] = out
    return out


def xi_diag_weights(n, d):
    """Weights of the diagonal idempotents of Xi_d, canonical order."""
    return [A.diagonal() for A in enumerate_tag(Xi(n, d)) if A.is_diagonal()]


def ixi_diag_weights(n, d):
    return [A.diagonal() for A in enumerate_tag(iXi(n, d)) if A.is_diagonal()]


# ---------------------------------------------------------------------------
# words (the set Pi and its iota variant)

def words_pi(n, d):
    return list(itertools.product(range(1, 2 * n + 2), repeat=d))


def words_ipi(n, d):
    letters = [r for r in range(1, 2 * n + 2) if r != n + 1]
    return list(itertools.product(letters, repeat=d))


def full_word(word, n):
    """Extend r_1..r_d to length D = 2d+1 via r_c + r_{D+1-c} = N+1."""
    N = 2 * n + 1
    return tuple(word) + (n + 1,) + tuple(N + 1 - r for r in reversed(word))


def word_weight(word, n):
    """ro of the associated Pi-matrix: letter multiplicities of the full word."""
    N = 2 * n + 1
    fw = full_word(word, n)
    return tuple(sum(1 for r in fw if r == a) for a in range(1, N + 1))


def pi_of_word(word, n):
    """The N x D column-monomial matrix of a word (plain tuple of tuples)."""
    fw = full_word(word, n)
    N, D = 2 * n + 1, len(fw)
    rows = [[0] * D for _ in range(N)]
    for c, r in enumerate(fw):
        rows[r - 1][c] = 1
    return tuple(tuple(r) for r in rows)


def word_of_pi(B, n):
    """Inverse of pi_of_word; raises on a malformed matrix."""
    N = 2 * n + 1
    D = len(B[0])
    if D % 2 != 1:
        raise ValueError("D must be odd")
    d = (D - 1) // 2
    word = []
    for c in range(D):
        col = [B[i][c] for i in range(N)]
        if sum(col) != 1 or any(x not in (0, 1) for x in col):
            raise ValueError("column is not a standard basis vector")
        word.append(col.index(1) + 1)
    for c in range(D):
        if word[c] + word[D - 1 - c] != N + 1:
            raise ValueError("matrix violates the word symmetry")
    return tuple(word[:d])


# ---------------------------------------------------------------------------
# orbit statistics

_dim_cache = {}


def dim_orbit(A):
    """Orbit dimension d(A) by the closed three-sum formula."""
    if A in _dim_cache:
        return _dim_cache[A]
    a = A.rows
    n, N = A.n, A.N
    total = 0
    for i in range(N):
        for k in range(N):
            s1 = i + k < N - 1
            s2 = i + k == N - 1
            if not (s1 or s2):
                continue
            for j in range(N):
                aij = a[i][j]
                if not aij:
                    continue
                for l in range(N):
                    if not (i < k or j < l):
                        continue
                    if s1 or (j + l < N - 1):
                        total += aij * a[k][l]
    for i in range(N):
        for j in range(N):
            if i < n or j < n:
                total += a[i][j] * (a[i][j] - 1) // 2
    _dim_cache[A] = total
    return total


def dim_image(A):
    """r(A): dimension of the first-projection image, as d(diag(ro(A)))."""
    return dim_orbit(diag_matrix(A.n, A.ro()))


def d_lower(A):
    """d_A = d(A) - r(A), the fiber dimension of the first projection."""
    return dim_orbit(A) - dim_image(A)


# ---------------------------------------------------------------------------
# partial orders

def _sigma(A, i, j):
    """sum_{r <= i, s >= j} a_{rs} (0-based, i < j)."""
    return sum(A.rows[r][s] for r in range(i + 1) for s in range(j, A.N))


def preceq(A, B):
    """The partial order defined by the upper-corner partial sums."""
    N = A.N
    for i in range(N):
        for j in range(i + 1, N):
            if _sigma(A, i, j) > _sigma(B, i, j):
                return False
    return True


def preceq_lower(A, B):
    """The redundant mirror condition (lower-corner partial sums)."""
    N = A.N
    for i in range(N):
        for j in range(i):
            sa = sum(A.rows[r][s] for r in range(i, N) for s in range(j + 1))
            sb = sum(B.rows[r][s] for r in range(i, N) for s in range(j + 1))
            if sa > sb:
                return False
    return True


def sqsubseteq(A, B):
    return A.ro() == B.ro() and A.co() == B.co() and preceq(A, B)


def sigma_total(A):
    """Strictly monotone along sqsubseteq within a block; used as a linear extension."""
    return sum(_sigma(A, i, j) for i in range(A.N) for j in range(i + 1, A.N))


def down_set(A, tag):
    """All A' in the tagged set with A' sqsubseteq A, canonical order."""
    if tag.kind in ("Xi", "iXi"):
        return [B for B in enumerate_tag(tag) if sqsubseteq(B, A)]
    return down_set_block(A, tag)


def down_set_block(A, tag):
    """Down-set of A inside its (ro, co) block of a stabilized set.

    Off-diagonal entries of every A' below A are bounded by the partial sums
    of A, so the block search is finite; the DFS assigns the strict upper
    triangle row by row, columns descending, pruning each partial sum as
    soon as it is complete.
    """
    n, N = A.n, A.N
    ro, co = A.ro(), A.co()
    bound = {(i, j): _sigma(A, i, j) for i in range(N) for j in range(i + 1, N)}
    cells = [(i, j) for i in range(N) for j in range(N - 1, i, -1)]
    out = []
    rowtail = [[0] * (N + 1) for _ in range(N)]  # rowtail[r][j] = sum_{s>=j} upper entries

    def assign(idx, upper):
        if idx == len(cells):
            rows = [[0] * N for _ in range(N)]
            for (i, j), val in upper.items():
                rows[i][j] = val
                rows[N - 1 - i][N - 1 - j] = val
            for i in range(N):
                rows[i][i] = ro[i] - sum(rows[i][j] for j in range(N) if j != i)
            try:
                cand = ThetaMatrix(n, rows)
            except ValueError:
                return
            if cand.co() != co:
                return
            if member(cand, tag) and sqsubseteq(cand, A):
                out.append(cand)
            return
        i, j = cells[idx]
        sigma_rest = sum(rowtail[r][j] for r in range(i))
        for val in range(bound[(i, j)] + 1):
            rowtail[i][j] = rowtail[i][j + 1] + val
            if sigma_rest + rowtail[i][j] > bound[(i, j)]:
                break
            upper[(i, j)] = val
            assign(idx + 1, upper)
        upper.pop((i, j), None)
        rowtail[i][j] = 0

    assign(0, {})
    out.sort(key=ThetaMatrix.key)
    return out
