"""The compiled kernel and the pure fallback must agree everywhere."""

import random

import pytest

from thetaschur import _kernel


def _both():
    pure = _kernel.load("pure")
    try:
        compiled = _kernel.load("compiled")
    except ImportError:
        pytest.skip("compiled kernel not built")
    return pure, compiled


def test_rref_parity():
    pure, compiled = _both()
    rng = random.Random(0)
    for _ in range(200):
        p = rng.choice([3, 5, 7, 13])
        rows = rng.randint(0, 6)
        cols = rng.randint(1, 7)
        mat = [[rng.randint(-10, 10) for _ in range(cols)]
               for _ in range(rows)]
        assert pure.rref(mat, cols, p) == compiled.rref(mat, cols, p)
        assert pure.rank(mat, cols, p) == compiled.rank(mat, cols, p)


def test_rank2_parity():
    pure, compiled = _both()
    rng = random.Random(1)
    for _ in range(100):
        p = rng.choice([3, 5, 11])
        cols = rng.randint(1, 6)
        a = [[rng.randint(0, p - 1) for _ in range(cols)]
             for _ in range(rng.randint(0, 4))]
        b = [[rng.randint(0, p - 1) for _ in range(cols)]
             for _ in range(rng.randint(0, 4))]
        assert pure.rank2(a, b, cols, p) == compiled.rank2(a, b, cols, p)


def test_poly_mul_parity():
    pure, compiled = _both()
    rng = random.Random(2)
    for _ in range(200):
        a = {rng.randint(-8, 8): rng.randint(-9, 9) for _ in range(4)}
        b = {rng.randint(-8, 8): rng.randint(-9, 9) for _ in range(4)}
        a = {e: c for e, c in a.items() if c}
        b = {e: c for e, c in b.items() if c}
        assert pure.poly_mul(a, b) == compiled.poly_mul(a, b)


def test_rref_canonical():
    pure, _ = _both()
    red, rank = pure.rref([[2, 4, 0], [1, 2, 1]], 3, 5)
    assert rank == 2
    # pivots normalized to 1, reduced above and below
    for i, row in enumerate(red):
        lead = next(j for j, x in enumerate(row) if x)
        assert row[lead] == 1
        for k, other in enumerate(red):
            if k != i:
                assert other[lead] == 0
