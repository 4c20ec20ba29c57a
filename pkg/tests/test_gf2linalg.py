import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbfbox.gf2linalg import BitMatrix, mat_vec, nullspace_basis, rank


def int_rank(rows):
    # elimination on python ints, one int per row
    basis = {}
    for r in rows:
        while r:
            p = r.bit_length() - 1
            if p not in basis:
                basis[p] = r
                break
            r ^= basis[p]
    return len(basis)


@st.composite
def dense(draw, max_rows=40, max_cols=150):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.05, 0.3, 0.5]))
    return (np.random.default_rng(seed).random((r, c)) < density).astype(np.uint8)


@given(dense())
def test_rank_against_int_elimination(a):
    m = BitMatrix.from_dense(a)
    want = int_rank([int("".join(map(str, row[::-1])) or "0", 2) for row in a])
    assert rank(m) == want


@given(dense())
def test_nullspace(a):
    m = BitMatrix.from_dense(a)
    ns = nullspace_basis(m)
    assert ns.rows == m.cols - m.rank()
    assert rank(ns) == ns.rows
    for i in range(ns.rows):
        v = ns.to_dense()[i]
        assert not mat_vec(m, v).any()


@given(dense())
def test_dense_round_trip(a):
    m = BitMatrix.from_dense(a)
    assert np.array_equal(m.to_dense(), a.reshape(m.rows, m.cols))
    assert BitMatrix.from_text(m.to_text()) == m


@settings(max_examples=50)
@given(dense(max_rows=30, max_cols=70), st.integers(0, 2**32 - 1))
def test_solve_consistent(a, seed):
    m = BitMatrix.from_dense(a)
    x0 = np.random.default_rng(seed).integers(0, 2, m.cols).astype(np.uint8)
    b = mat_vec(m, x0) if m.rows else np.zeros(0, np.uint8)
    x = m.solve(b)
    assert x is not None
    assert np.array_equal(mat_vec(m, x) if m.rows else b, b)


def test_solve_inconsistent():
    m = BitMatrix.from_dense([[1, 1], [1, 1]])
    assert m.solve(np.array([1, 0])) is None


def test_rref_pivots():
    m = BitMatrix.from_dense([[0, 1, 1], [0, 1, 0], [0, 0, 1]])
    red, piv = m.rref()
    assert piv == [1, 2]
    assert red.to_dense().tolist() == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]


def test_word_boundaries():
    m = BitMatrix.from_supports([[0, 63, 64, 127, 128]], 129)
    assert [m[0, j] for j in (0, 63, 64, 127, 128, 1)] == [1, 1, 1, 1, 1, 0]
    assert m.row_int(0) == (1 | 1 << 63 | 1 << 64 | 1 << 127 | 1 << 128)
    assert BitMatrix.from_ints([m.row_int(0)], 129) == m
    assert m.row_weights().tolist() == [5]


def test_identity_and_products():
    i = BitMatrix.identity(70)
    assert i.rank() == 70 and i.nullspace_basis().rows == 0
    a = BitMatrix.from_dense(np.random.default_rng(1).integers(0, 2, (5, 70)))
    assert np.array_equal(a.mat_mul_t(i).to_dense(), a.to_dense())


def test_errors():
    m = BitMatrix.zeros(2, 3)
    with pytest.raises(ValueError):
        m.mat_vec([1, 0])
    with pytest.raises(IndexError):
        BitMatrix.from_supports([[3]], 3)
    with pytest.raises(ValueError):
        BitMatrix.from_text("2 3\n7\n")
    with pytest.raises(ValueError):
        m.vstack(BitMatrix.zeros(1, 4))


def test_text_format():
    m = BitMatrix.from_dense([[1, 0, 0, 0, 1], [0, 1, 0, 0, 0]])
    assert m.to_text() == "2 5\n11\n02\n"
