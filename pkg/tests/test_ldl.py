"""Exact LDL^T factorisation"""

import random
from fractions import Fraction

import numpy as np
import pytest

from turanflag.core.exact import FieldElement, ZERO
from turanflag.sdp.ldl import is_psd, is_symmetric, ldl_decompose, ldl_reassemble

SQRT5 = FieldElement(0, 1, 5)


def test_positive_definite():
    A = [[4, 2], [2, 3]]
    result = ldl_decompose(A)
    assert result.is_psd
    assert result.D == (4, 2)
    assert result.L[1][0] == Fraction(1, 2)
    assert ldl_reassemble(result.L, result.D) == [[4, 2], [2, 3]]


def test_negative_pivot():
    result = ldl_decompose([[1, 2], [2, 1]])
    assert not result.is_psd
    assert result.failed_pivot == 1
    assert result.failed_value == -3
    assert "negative" in result.reason


def test_singular_psd():
    A = [[Fraction(1, 4), Fraction(1, 2)], [Fraction(1, 2), 1]]
    result = ldl_decompose(A)
    assert result.is_psd
    assert result.D == (Fraction(1, 4), ZERO)
    assert is_psd([[0, 0], [0, 1]])


def test_zero_pivot_with_nonzero_column():
    result = ldl_decompose([[0, 1], [1, 0]])
    assert not result.is_psd
    assert result.failed_pivot == 0
    assert result.failed_value == 1


def test_quadratic_field_entries():
    assert is_psd([[2, SQRT5], [SQRT5, 3]])
    result = ldl_decompose([[2, SQRT5], [SQRT5, 2]])
    assert not result.is_psd
    assert result.failed_value == Fraction(-1, 2)


def test_reassembles_larger_matrix():
    # L L^T for a unit lower triangular L with rational entries
    L = [[1, 0, 0], [Fraction(1, 3), 1, 0], [Fraction(-2, 5), Fraction(1, 7), 1]]
    D = [Fraction(2), Fraction(1, 9), Fraction(5)]
    A = ldl_reassemble(L, D)
    result = ldl_decompose(A)
    assert result.is_psd
    assert list(result.D) == D
    assert ldl_reassemble(result.L, result.D) == A


def test_empty_and_non_square():
    assert ldl_decompose([]).is_psd
    with pytest.raises(ValueError):
        ldl_decompose([[1, 2]])


def test_is_symmetric():
    assert is_symmetric([[1, 2], [2, 1]])
    assert not is_symmetric([[1, 2], [3, 1]])


def _random_symmetric(rng, size):
    kind = rng.randrange(3)
    if kind == 0:
        # Gram matrix, PSD and often singular
        rank = rng.randint(1, size)
        V = [[Fraction(rng.randint(-4, 4), rng.randint(1, 5)) for _ in range(rank)] for _ in range(size)]
        return [[sum((V[i][k] * V[j][k] for k in range(rank)), Fraction(0)) for j in range(size)]
                for i in range(size)]
    A = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            A[i][j] = A[j][i] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    if kind == 1:
        # diagonally dominant, so positive definite
        for i in range(size):
            A[i][i] = sum((abs(v) for v in A[i]), Fraction(1))
    return A


def test_agrees_with_eigenvalues():
    rng = random.Random(20240601)
    checked = 0
    for _ in range(1000):
        A = _random_symmetric(rng, 5)
        smallest = np.linalg.eigvalsh(np.array(A, dtype=float)).min()
        result = ldl_decompose(A)
        if result.is_psd:
            assert ldl_reassemble(result.L, result.D) == A
        if abs(smallest) < 1e-9:
            # singular to working precision
            continue
        assert result.is_psd == (smallest > 0)
        checked += 1
    assert checked > 500
