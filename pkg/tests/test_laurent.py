import random

import pytest

from thetaschur.laurent import (Laurent, ZERO, ONE, v_pow, qint, qfact,
                                gauss_bracket, gauss_binom, bar_gauss_binom,
                                InexactDivision, OddExponent)


def rand_poly(rng, width=4, span=6):
    return Laurent({rng.randint(-span, span): rng.randint(-5, 5)
                    for _ in range(width)})


def test_addition_examples():
    assert v_pow(1) + v_pow(-1) == Laurent({1: 1, -1: 1})
    p = Laurent({3: 2, 0: -1})
    assert p + ZERO == p
    assert (v_pow(2) + 1) + Laurent({0: -1}) == v_pow(2)


def test_multiplication_examples():
    assert (v_pow(1) - v_pow(-1)) * qint(2) == v_pow(2) - v_pow(-2)
    p = Laurent({5: 3, -2: 1})
    assert p * ONE == p
    assert qint(2) * qint(2) == Laurent({2: 1, 0: 2, -2: 1})


def test_ring_axioms_random():
    rng = random.Random(0)
    for _ in range(40):
        p, q, r = (rand_poly(rng) for _ in range(3))
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_bar_examples():
    assert (v_pow(2) + 1).bar() == v_pow(-2) + 1
    for r in range(-5, 6):
        assert qint(r).bar() == qint(r)


def test_bar_is_ring_involution():
    rng = random.Random(1)
    for _ in range(30):
        p, q = rand_poly(rng), rand_poly(rng)
        assert (p * q).bar() == p.bar() * q.bar()
        assert p.bar().bar() == p


def test_qint():
    assert qint(1) == ONE
    assert qint(0) == ZERO
    assert qint(2) == v_pow(1) + v_pow(-1)
    assert qint(-3) == -(v_pow(2) + 1 + v_pow(-2))
    assert qfact(3) == qint(3) * qint(2)


def test_gauss_brackets():
    assert gauss_binom(3, 1) == v_pow(4) + v_pow(2) + 1
    assert gauss_bracket(3) == gauss_binom(3, 1)
    for a in range(-4, 5):
        assert gauss_binom(a, 0) == ONE
    assert gauss_binom(2, 1) == v_pow(2) + 1
    assert gauss_binom(2, 3) == ZERO
    # [r] = v^{r-1} [[r]] for r >= 0, hence bar([r]) = v^{-2(r-1)}[r]
    for r in range(0, 9):
        assert gauss_bracket(r) == v_pow(r - 1) * qint(r) or r == 0
        assert gauss_bracket(r).bar() == v_pow(-2 * (r - 1)) * gauss_bracket(r)
    # nonnegative integer coefficients for a >= b >= 0
    for a in range(0, 11):
        for b in range(0, a + 1):
            assert all(c > 0 for _, c in gauss_binom(a, b).items())
    assert bar_gauss_binom(3, 2) == gauss_binom(3, 2).bar()


def test_negative_upper_binomial_is_laurent():
    p = gauss_binom(-2, 1)
    assert p == gauss_bracket(-2)
    assert min(e for e, _ in p.items()) < 0


def test_exact_division():
    num = gauss_bracket(6)
    assert num.exact_div(gauss_bracket(2)) * gauss_bracket(2) == num
    with pytest.raises(InexactDivision):
        (v_pow(2) + 1).exact_div(v_pow(1) + 1 + v_pow(-1))
    with pytest.raises(ZeroDivisionError):
        ONE.exact_div(ZERO)
    rng = random.Random(2)
    for _ in range(20):
        p, q = rand_poly(rng), rand_poly(rng)
        if q.is_zero():
            continue
        assert (p * q).exact_div(q) == p


def test_eval_q():
    assert gauss_bracket(2).eval_q(3) == 4
    assert ONE.eval_q(5) == 1
    prod = gauss_binom(1, 1) * gauss_bracket(3)
    assert prod.eval_q(3) == 13
    with pytest.raises(OddExponent):
        v_pow(1).eval_q(3)
    even, odd = (v_pow(1) + v_pow(2)).eval_q(3, strict=False)
    assert even == 3 and odd == 1


def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        p = rand_poly(rng)
        data = p.to_json()
        assert data == sorted(data)
        assert Laurent.from_json(data) == p
