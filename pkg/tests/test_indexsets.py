from math import comb

import pytest

from thetaschur import indexsets as ix
from thetaschur.indexsets import ThetaMatrix


def test_e_theta_examples():
    A = ix.e_theta(1, 1, 2)
    assert A.rows == ((0, 1, 0), (0, 0, 0), (0, 1, 0))
    assert ix.e_theta(1, 2, 2).rows == ((0, 0, 0), (0, 2, 0), (0, 0, 0))
    assert ix.e_theta(1, 1, 3).rows == ((0, 0, 1), (0, 0, 0), (1, 0, 0))
    with pytest.raises(ValueError):
        ix.e_theta(1, 0, 2)


def test_theta_symmetry_enforced():
    with pytest.raises(ValueError):
        ThetaMatrix(1, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])


def test_ro_co_examples():
    A = ix.diag_matrix(1, (1, 1, 1))
    assert A.ro() == A.co() == (1, 1, 1)
    B = ix.e_theta(1, 1, 3) + ix.diag_matrix(1, (0, 1, 0))
    assert B.ro() == B.co() == (1, 1, 1)
    C = ix.diag_matrix(1, (0, 1, 0)) + ix.e_theta(1, 2, 1)
    assert C.ro() == (0, 3, 0) and C.co() == (1, 1, 1)


def test_membership():
    assert ix.member(ix.diag_matrix(1, (1, 1, 1)), ix.Xi(1, 1))
    assert ix.member(ix.diag_matrix(1, (-1, 3, -1)), ix.TildeXi(1))
    B = ix.e_theta(1, 1, 2) + ix.diag_matrix(1, (0, 1, 0))
    assert not ix.member(B, ix.iXi(1, 1))
    assert ix.member(ix.e_theta(1, 1, 3) + ix.diag_matrix(1, (0, 1, 0)),
                     ix.iXi(1, 1))


def test_counting_formulas():
    for n in (1, 2, 3):
        for d in (1, 2, 3, 4):
            assert len(ix.enumerate_tag(ix.Xi(n, d))) == comb(
                2 * n * n + 2 * n + d, d)
            assert len(ix.enumerate_tag(ix.iXi(n, d))) == comb(
                2 * n * n + d - 1, d)
            assert len(ix.words_pi(n, d)) == (2 * n + 1) ** d
            assert len(ix.words_ipi(n, d)) == (2 * n) ** d


def test_word_pi_bijection():
    for n, d in ((1, 1), (2, 2)):
        for w in ix.words_pi(n, d):
            B = ix.pi_of_word(w, n)
            assert ix.word_of_pi(B, n) == w
    B = ix.pi_of_word((1,), 1)
    assert B[0][0] == 1 and B[1][1] == 1 and B[2][2] == 1
    B2 = ix.pi_of_word((2,), 1)
    assert all(B2[1][c] == 1 for c in range(3))


def test_dims_examples():
    D = ix.diag_matrix(1, (1, 1, 1))
    assert ix.dim_orbit(D) == 1
    assert ix.dim_image(D) == 1
    for A in ix.enumerate_tag(ix.Xi(1, 2)):
        if A.is_diagonal():
            assert ix.dim_orbit(A) == ix.dim_image(A)
    B = ix.e_theta(1, 1, 2) + ix.diag_matrix(1, (0, 1, 0))
    assert ix.d_lower(B) == 0


def test_d_lower_identity():
    # 2(d_A - d_tA) = (sum ro^2 - co^2)/2 - (ro_{n+1} - co_{n+1})/2
    for (n, d) in ((1, 1), (1, 2), (2, 1)):
        for A in ix.enumerate_tag(ix.Xi(n, d)):
            lhs = 2 * (ix.d_lower(A) - ix.d_lower(A.transpose()))
            ro, co = A.ro(), A.co()
            rhs2 = (sum(r * r - c * c for r, c in zip(ro, co))
                    - (ro[n] - co[n]))
            assert 2 * lhs == rhs2, A


def test_partial_orders():
    D = ix.diag_matrix(1, (1, 1, 1))
    E = ix.e_theta(1, 1, 3) + ix.diag_matrix(1, (0, 1, 0))
    assert ix.sqsubseteq(D, E)
    for A in ix.enumerate_tag(ix.Xi(1, 2)):
        assert ix.sqsubseteq(A, A)
    got = ix.down_set(E, ix.Xi(1, 1))
    assert set(got) == {D, E}


def test_rs_b_redundant():
    # the mirrored partial-sum condition follows from the upper one
    for (n, d) in ((1, 1), (1, 2)):
        labels = ix.enumerate_tag(ix.Xi(n, d))
        for A in labels:
            for B in labels:
                if ix.preceq(A, B):
                    assert ix.preceq_lower(A, B), (A, B)


def test_down_set_downward_closed():
    for A in ix.enumerate_tag(ix.Xi(1, 2)):
        ds = ix.down_set(A, ix.Xi(1, 2))
        assert A in ds
        for B in ds:
            for C in ix.down_set(B, ix.Xi(1, 2)):
                assert C in ds


def test_down_set_block_contains_negative_centers():
    W = ThetaMatrix(1, [[0, 1, 0], [1, -1, 1], [0, 1, 0]])
    block = ix.down_set_block(W, ix.TildeXi(1))
    assert W in block
    assert ix.diag_matrix(1, (1, 1, 1)) in block
    for B in block:
        assert ix.sqsubseteq(B, W)


def test_down_set_block_stress_and_completeness():
    import random
    rng = random.Random(0)
    for trial in range(120):
        n = rng.choice([1, 1, 2])
        N = 2 * n + 1
        rows = [[0] * N for _ in range(N)]
        ups = [(i, j) for i in range(N) for j in range(i + 1, N)]
        for (i, j) in rng.sample(ups, min(3, len(ups))):
            v = rng.randint(0, 2)
            rows[i][j] = v
            rows[N - 1 - i][N - 1 - j] = v
        for i in range(n):
            rows[i][i] = rows[N - 1 - i][N - 1 - i] = rng.randint(-1, 2)
        rows[n][n] = rng.randint(-1, 1) * 2 + 1
        A = ThetaMatrix(n, rows)
        ds = ix.down_set_block(A, ix.TildeXi(n))
        assert A in ds
        assert all(ix.sqsubseteq(B, A) for B in ds)
        if n == 1:
            # completeness: brute force over the bounded upper-entry box
            bounds = [ix._sigma(A, i, j) for (i, j) in ups]
            found = set()
            import itertools
            for vals in itertools.product(*(range(b + 1) for b in bounds)):
                m = [[0] * N for _ in range(N)]
                for (i, j), v in zip(ups, vals):
                    m[i][j] = v
                    m[N - 1 - i][N - 1 - j] = v
                for i in range(N):
                    m[i][i] = A.ro()[i] - sum(m[i][j]
                                              for j in range(N) if j != i)
                try:
                    cand = ThetaMatrix(n, m)
                except ValueError:
                    continue
                if cand.co() == A.co() and ix.member(cand, ix.TildeXi(n)) \
                        and ix.sqsubseteq(cand, A):
                    found.add(cand)
            assert found == set(ds), A


def test_transpose():
    C = ix.e_theta(1, 2, 1) + ix.diag_matrix(1, (0, 1, 0))
    B = ix.e_theta(1, 1, 2) + ix.diag_matrix(1, (0, 1, 0))
    assert C.transpose() == B
    for A in ix.enumerate_tag(ix.Xi(1, 1)):
        assert A.transpose().transpose() == A
        assert ix.member(A.transpose(), ix.Xi(1, 1))


def test_enumeration_canonical_order_deterministic():
    a = ix.enumerate_tag(ix.Xi(2, 2))
    b = sorted(a, key=ThetaMatrix.key)
    assert a == b


def test_json_round_trip():
    for A in ix.enumerate_tag(ix.Xi(1, 2))[:5]:
        assert ThetaMatrix.from_json(A.to_json()) == A
