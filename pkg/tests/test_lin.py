"""Tests for exact lattice linear algebra."""

from __future__ import annotations

import random

import pytest

from realred import lin


def random_matrix(rng: random.Random, m: int, n: int) -> lin.Matrix:
    return lin.freeze(
        [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
    )


def diag_matrix(diag: lin.Vector, m: int, n: int) -> lin.Matrix:
    return lin.freeze(
        [[diag[i] if i == j and i < len(diag) else 0 for j in range(n)]
         for i in range(m)]
    )


def test_smith_form_random() -> None:
    rng = random.Random(20260815)
    for _ in range(200):
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        a = random_matrix(rng, m, n)
        sf = lin.smith_form(a)
        d = diag_matrix(sf.diag, m, n)
        assert lin.mat_mul(lin.mat_mul(sf.u, d), sf.v) == a
        assert lin.mat_mul(sf.u, sf.uinv) == lin.identity(m)
        assert lin.mat_mul(sf.v, sf.vinv) == lin.identity(n)
        assert abs(lin.det(sf.u)) == 1
        assert abs(lin.det(sf.v)) == 1
        nonzero = [x for x in sf.diag if x]
        assert all(x > 0 for x in nonzero)
        assert list(sf.diag) == nonzero + [0] * (len(sf.diag) - len(nonzero))
        assert all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))


def test_smith_form_deterministic() -> None:
    rng = random.Random(7)
    a = random_matrix(rng, 5, 4)
    assert lin.smith_form(a) == lin.smith_form(a)


def test_smith_form_known() -> None:
    a = lin.freeze([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert lin.smith_form(a).diag == (2, 2, 156)
    assert lin.smith_form(lin.identity(3)).diag == (1, 1, 1)
    assert lin.smith_form(((0, 0), (0, 0))).diag == (0, 0)


def test_smith_form_empty_rows() -> None:
    sf = lin.smith_form((), ncols=3)
    assert sf.diag == ()
    assert sf.v == lin.identity(3)


def test_kernel_basis() -> None:
    rng = random.Random(99)
    for _ in range(100):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        basis = lin.kernel_basis(a, n)
        for vec in basis:
            assert lin.is_zero(lin.mat_vec(a, vec))
        assert len(basis) == n - lin.smith_form(a).rank
        if basis:
            # Saturation: the basis spans a direct summand of Z^n.
            assert all(d == 1 for d in lin.smith_form(lin.freeze(basis)).diag)
    assert len(lin.kernel_basis((), 4)) == 4


def test_solve_int() -> None:
    rng = random.Random(5)
    for _ in range(100):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        x = tuple(rng.randint(-5, 5) for _ in range(n))
        b = lin.mat_vec(a, x)
        got = lin.solve_int(a, b)
        assert got is not None
        assert lin.mat_vec(a, got) == b
    assert lin.solve_int(((2,),), (1,)) is None
    assert lin.solve_int(((0,),), (3,)) is None


def test_solve_mod() -> None:
    rng = random.Random(13)
    for _ in range(100):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        mod = rng.choice([2, 3, 4, 8, 12])
        a = random_matrix(rng, m, n)
        x = tuple(rng.randint(-5, 5) for _ in range(n))
        b = lin.mat_vec(a, x)
        got = lin.solve_mod(a, b, mod)
        assert got is not None
        assert all(r % mod == 0 for r in lin.vec_sub(lin.mat_vec(a, got), b))
    assert lin.solve_mod(((2,),), (1,), 4) is None
    assert lin.solve_mod(((2,),), (1,), 3) == (2,)


def test_row_hnf_canonical() -> None:
    rng = random.Random(31)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = random_matrix(rng, m, n)
        h = lin.row_hnf(a)
        # Unimodular row operations leave the form unchanged.
        rows = [list(r) for r in a]
        rng.shuffle(rows)
        if len(rows) >= 2:
            rows[0] = [x + 3 * y for x, y in zip(rows[0], rows[1])]
        assert lin.row_hnf(lin.freeze(rows)) == h
        for i, row in enumerate(h):
            piv = next(j for j in range(n) if row[j])
            assert row[piv] > 0
            assert all(0 <= h[k][piv] < row[piv] for k in range(i))


def test_row_hnf_examples() -> None:
    assert lin.row_hnf(((2, 1), (0, 3))) == ((2, 1), (0, 3))
    assert lin.row_hnf(((0, 3), (2, 1))) == ((2, 1), (0, 3))
    assert lin.row_hnf(((1, 1), (-1, -1))) == ((1, 1),)
    assert lin.row_hnf(((0, 0),)) == ()


def test_f2_rank() -> None:
    assert lin.f2_rank(lin.identity(4)) == 4
    assert lin.f2_rank(((2, 4), (6, 8))) == 0
    assert lin.f2_rank(((1, 1), (1, 1))) == 1
    assert lin.f2_rank(((1, 0, 1), (0, 1, 1), (1, 1, 0))) == 2


def test_det() -> None:
    assert lin.det(lin.identity(3)) == 1
    assert lin.det(((2, 0), (0, 3))) == 6
    assert lin.det(((1, 2), (2, 4))) == 0
    assert lin.det(((0, 1), (1, 0))) == -1


def test_mat_inverse_rational() -> None:
    rng = random.Random(77)
    found = 0
    while found < 40:
        n = rng.randint(1, 4)
        a = random_matrix(rng, n, n)
        if lin.det(a) == 0:
            continue
        found += 1
        num, den = lin.mat_inverse_rational(a)
        prod = lin.mat_mul(a, num)
        assert prod == lin.freeze(
            [[den if i == j else 0 for j in range(n)] for i in range(n)]
        )
    with pytest.raises(ValueError):
        lin.mat_inverse_rational(((1, 2), (2, 4)))


def test_vector_helpers() -> None:
    assert lin.vec_add((1, 2), (3, 4)) == (4, 6)
    assert lin.vec_sub((1, 2), (3, 4)) == (-2, -2)
    assert lin.vec_scale((1, -2), 3) == (3, -6)
    assert lin.vec_dot((1, 2), (3, 4)) == 11
    assert lin.vec_mod((-1, 5), 4) == (3, 1)
    assert lin.transpose(((1, 2), (3, 4))) == ((1, 3), (2, 4))
    assert lin.mat_vec(((1, 0), (1, 1)), (2, 3)) == (2, 5)
