"""Arithmetic over F_p: scalars, matrices, rank, linear solving, circulants."""

import random

import pytest

from ggslab.errors import InputError
from ggslab.fp import (
    FpMatrix,
    FpScalar,
    circulant,
    circulant_rank,
    gaussian_rank,
    solve_linear_mod_p,
    validate_odd_prime,
)


def test_validate_odd_prime_accepts_small_primes():
    for p in (3, 5, 7, 11, 13, 17, 101):
        assert validate_odd_prime(p) == p


@pytest.mark.parametrize("bad", [2, 4, 9, 15, 1, 0, -3, -7, 3.0, "3", True, None])
def test_validate_odd_prime_rejects(bad):
    with pytest.raises(InputError):
        validate_odd_prime(bad)


def test_scalar_arithmetic_matches_int_arithmetic():
    rng = random.Random(7)
    for _ in range(300):
        p = rng.choice((3, 5, 7, 11))
        x, y = rng.randrange(-40, 40), rng.randrange(-40, 40)
        sx, sy = FpScalar(x, p), FpScalar(y, p)
        assert int(sx + sy) == (x + y) % p
        assert int(sx - sy) == (x - y) % p
        assert int(sx * sy) == (x * y) % p
        assert int(-sx) == (-x) % p
        # mixing with plain ints coerces
        assert sx + y == sx + sy
        assert x - sy == sx - sy
        assert y * sx == sy * sx


def test_scalar_inverse_exhaustive():
    for p in (3, 5, 7):
        for x in range(1, p):
            s = FpScalar(x, p)
            assert int(s.inverse() * s) == 1
    with pytest.raises(InputError):
        FpScalar(0, 5).inverse()


def test_scalar_pow():
    s = FpScalar(2, 5)
    assert int(s ** 0) == 1
    assert int(s ** 4) == 1  # Fermat
    assert int(s ** -1) == int(s.inverse())
    assert int(s ** -3) == int((s.inverse()) ** 3)


def test_scalar_modulus_mismatch_rejected():
    with pytest.raises(InputError):
        FpScalar(1, 3) + FpScalar(1, 5)
    with pytest.raises(InputError):
        FpScalar(1, 3) * FpScalar(1, 5)


def test_scalar_equality_and_hash():
    assert FpScalar(7, 5) == FpScalar(2, 5)
    assert FpScalar(2, 5) != FpScalar(2, 7)
    assert FpScalar(2, 5) == 2
    assert hash(FpScalar(7, 5)) == hash(FpScalar(2, 5))
    assert FpScalar(1, 3) != "1"


def test_scalar_immutable():
    s = FpScalar(1, 3)
    with pytest.raises(AttributeError):
        s.value = 2


def test_matrix_identity_and_known_product():
    ident = FpMatrix.identity(2, 3)
    m = FpMatrix.from_rows([[1, 2], [0, 1]], 3)
    assert m * ident == m
    assert ident * m == m
    # [[1,2],[0,1]] * [[1,2],[0,1]] = [[1,4],[0,1]] = [[1,1],[0,1]] mod 3
    assert (m * m).to_rows() == [[1, 1], [0, 1]]


def test_matrix_product_associative_sampled():
    rng = random.Random(11)
    p = 5
    for _ in range(40):
        mats = [
            FpMatrix.from_rows([[rng.randrange(p) for _ in range(3)] for _ in range(3)], p)
            for _ in range(3)
        ]
        x, y, z = mats
        assert (x * y) * z == x * (y * z)


def test_matrix_shape_and_modulus_checks():
    a = FpMatrix.from_rows([[1, 0], [0, 1]], 3)
    b = FpMatrix.from_rows([[1, 0, 0]], 3)
    with pytest.raises(InputError):
        a * b  # 2x2 times 1x3
    c = FpMatrix.from_rows([[1, 0], [0, 1]], 5)
    with pytest.raises(InputError):
        a * c
    with pytest.raises(InputError):
        FpMatrix.from_rows([[1, 0], [1]], 3)  # ragged rows


def test_matrix_immutable():
    m = FpMatrix.identity(2, 3)
    with pytest.raises(AttributeError):
        m.entries = ()


def test_gaussian_rank_known_values():
    assert gaussian_rank(FpMatrix.identity(4, 5)) == 4
    assert gaussian_rank(FpMatrix.from_rows([[0, 0], [0, 0]], 3)) == 0
    # second row is twice the first mod 5
    assert gaussian_rank(FpMatrix.from_rows([[1, 2, 3], [2, 4, 6]], 5)) == 1
    # rank 2: rows [1,1,1] and [1,2,4] independent, third = 2*second - first
    m = FpMatrix.from_rows([[1, 1, 1], [1, 2, 4], [1, 3, 7]], 5)
    assert gaussian_rank(m) == 2


def test_circulant_row_structure():
    c = circulant((1, 2, 0), 3)
    assert c.to_rows() == [[1, 2, 0], [0, 1, 2], [2, 0, 1]]


def test_circulant_rank_examples():
    # all-ones: every row equal, rank 1
    assert circulant_rank((1, 1, 1), 3) == 1
    # sum = 0 mod 3 forces a nontrivial kernel
    assert circulant_rank((1, 2, 0), 3) == 2
    # single 1: a permutation matrix, full rank
    assert circulant_rank((1, 0, 0), 3) == 3
    assert circulant_rank((1, 0, 2, 4, 0), 5) == 5


def test_circulant_rank_full_iff_nonzero_sum_p3():
    # exhaustive over all 27 first rows
    for v0 in range(3):
        for v1 in range(3):
            for v2 in range(3):
                row = (v0, v1, v2)
                r = circulant_rank(row, 3)
                if (v0 + v1 + v2) % 3 != 0:
                    assert r == 3, row
                else:
                    assert r < 3, row


def test_circulant_length_check():
    with pytest.raises(InputError):
        circulant((1, 2), 3)


def _check_solution(rows, rhs, sol, p):
    for row, want in zip(rows, rhs):
        assert sum(r * x for r, x in zip(row, sol)) % p == want % p


def test_solve_linear_known_solutions_recovered():
    rng = random.Random(23)
    for _ in range(60):
        p = rng.choice((3, 5, 7))
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
        hidden = [rng.randrange(p) for _ in range(n)]
        rhs = [sum(r * x for r, x in zip(row, hidden)) % p for row in rows]
        out = solve_linear_mod_p(rows, rhs, p)
        assert out is not None
        particular, basis = out
        _check_solution(rows, rhs, particular, p)
        # every basis vector solves the homogeneous system
        for vec in basis:
            _check_solution(rows, [0] * m, vec, p)


def test_solve_linear_affine_space_is_complete():
    # enumerate the full solution set and compare with brute force
    p = 3
    rows = [[1, 1, 0], [0, 0, 1]]
    rhs = [1, 2]
    particular, basis = solve_linear_mod_p(rows, rhs, p)
    assert len(basis) == 1
    got = set()
    for c in range(p):
        sol = tuple((particular[i] + c * basis[0][i]) % p for i in range(3))
        got.add(sol)
    brute = {
        (x, y, z)
        for x in range(p) for y in range(p) for z in range(p)
        if (x + y) % p == 1 and z % p == 2
    }
    assert got == brute


def test_solve_linear_inconsistent_returns_none():
    assert solve_linear_mod_p([[1, 1], [2, 2]], [1, 0], 3) is None
    assert solve_linear_mod_p([[0, 0]], [1], 5) is None


def test_solve_linear_zero_columns():
    particular, basis = solve_linear_mod_p([[0, 0]], [0], 3)
    assert particular == (0, 0)
    assert len(basis) == 2
