from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpplab.strassen import (
    STRASSEN,
    OpCounter,
    op_count,
    schoolbook_scheme,
    strassen_2x2,
    strassen_recursive,
    verify_scheme,
)


def loops(A, B):
    A, B = np.asarray(A).tolist(), np.asarray(B).tolist()
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_2x2_examples():
    assert strassen_2x2([[1, 0], [0, 1]], [[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    assert strassen_2x2([[1, 2], [3, 4]], [[5, 6], [7, 8]]) == [[19, 22], [43, 50]]


def test_2x2_exhaustive_binary():
    for bits in itertools.product((0, 1), repeat=8):
        A = [list(bits[0:2]), list(bits[2:4])]
        B = [list(bits[4:6]), list(bits[6:8])]
        c = OpCounter()
        assert strassen_2x2(A, B, c) == loops(A, B)
        assert c.mults == 7 and c.adds == 18


def test_scheme_verification():
    assert STRASSEN.rank == 7 and STRASSEN.shape == (2, 2, 2)
    assert verify_scheme(STRASSEN)
    assert verify_scheme(schoolbook_scheme())
    assert schoolbook_scheme().rank == 8
    for i in range(7):
        assert not verify_scheme(STRASSEN.drop(i))


def test_scheme_evaluate_matches_2x2():
    rng = np.random.default_rng(0)
    A = rng.integers(-9, 10, (2, 2))
    B = rng.integers(-9, 10, (2, 2))
    assert STRASSEN.evaluate(A, B).tolist() == strassen_2x2(A.tolist(), B.tolist())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 16, 32])
def test_recursive_matches_loops(n):
    rng = np.random.default_rng(n)
    for _ in range(5 if n >= 16 else 20):
        A = rng.integers(-100, 101, (n, n))
        B = rng.integers(-100, 101, (n, n))
        assert strassen_recursive(A, B).tolist() == loops(A, B)


@settings(max_examples=50, deadline=None)
@given(k=st.integers(1, 4), seed=st.integers(0, 2**32 - 1), cutoff=st.sampled_from([1, 2, 4]))
def test_recursive_property(k, seed, cutoff):
    n = 2**k
    rng = np.random.default_rng(seed)
    A = rng.integers(-(10**6), 10**6, (n, n))
    B = rng.integers(-(10**6), 10**6, (n, n))
    assert strassen_recursive(A, B, cutoff=cutoff).tolist() == loops(A, B)


def test_large_integers_do_not_overflow():
    A = np.full((4, 4), 2**40, dtype=np.int64)
    got = strassen_recursive(A, A)
    assert got[0, 0] == 4 * 2**80


def test_float_input():
    rng = np.random.default_rng(1)
    A = rng.normal(size=(5, 5))
    B = rng.normal(size=(5, 5))
    assert np.allclose(strassen_recursive(A, B), A @ B)


@pytest.mark.parametrize("k", range(0, 7))
def test_operation_counts(k):
    n = 2**k
    c = OpCounter()
    strassen_recursive(np.ones((n, n), dtype=int), np.ones((n, n), dtype=int), counter=c)
    assert c.mults == 7**k
    bound = 18 * sum(7 ** (k - j) * 4 ** (j - 1) for j in range(1, k + 1))
    assert c.adds <= bound
    assert c.total <= op_count(n)


def test_op_count_recursion():
    assert op_count(1) == 1
    assert op_count(2) == 25
    assert op_count(4) == 247
    with pytest.raises(ValueError):
        op_count(6)
    k = 20
    assert math.log(op_count(2**k)) / (k * math.log(2)) == pytest.approx(math.log2(7), abs=0.2)
    growth = [math.log(op_count(2**k)) / (k * math.log(2)) for k in (10, 20, 40)]
    assert abs(growth[-1] - math.log2(7)) < abs(growth[0] - math.log2(7))


def test_bad_inputs():
    with pytest.raises(ValueError):
        strassen_recursive(np.ones((2, 3)), np.ones((3, 2)))
    with pytest.raises(ValueError):
        strassen_recursive(np.ones((2, 2)), np.ones((2, 2)), cutoff=0)
