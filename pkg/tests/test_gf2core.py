import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from msnumber.algebra.gf2core import (
    BitMatrix,
    BitVector,
    format_matrix,
    has_full_row_rank,
    is_nonsingular,
    mat_mul,
    mat_vec,
    parse_matrix,
    rank,
    row_echelon,
    span_decompose,
    symplectic_decompose,
    symplectic_form,
    vec_add,
)
from msnumber.errors import CapExceededError, DimensionError, DomainError, ParseError

from conftest import graph_h

A_K3 = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
PRINTED_T = [[1, 1, 0, 0], [1, 1, 1, 0], [1, 1, 0, 1]]


def naive_rank(dense: np.ndarray) -> int:
    a = dense.copy() % 2
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def random_alternating(n: int, rng: np.random.Generator) -> BitMatrix:
    upper = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.uint8), k=1)
    return BitMatrix.from_array(upper | upper.T)


class TestBitVector:

    def test_padding_is_canonical(self):
        v = BitVector.from_indices(70, [0, 69])
        assert v.words.shape == (2,)
        assert v.indices() == [0, 69]
        assert v.weight() == 2

    def test_nonzero_padding_rejected(self):
        with pytest.raises(DimensionError):
            BitVector(3, np.array([0b1000], dtype="<u8"))

    def test_characteristic_two(self):
        x = BitVector.from_bits([1, 0, 1, 1])
        assert vec_add(x, x).is_zero()

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            vec_add(BitVector.zeros(3), BitVector.zeros(4))

    def test_indexing_and_xor(self):
        x = BitVector.from_bits([1, 0, 1])
        assert len(x) == 3
        assert [x[i] for i in range(3)] == [1, 0, 1]
        assert (x ^ BitVector.unit(3, 1)).to_text() == "111"
        with pytest.raises(IndexError):
            x[3]


class TestBitMatrix:

    def test_from_rows(self):
        rows = [BitVector.from_bits(r) for r in PRINTED_T]
        assert BitMatrix.from_rows(rows) == BitMatrix.from_array(PRINTED_T)
        assert BitMatrix.from_rows([], cols=4).shape == (0, 4)
        with pytest.raises(DimensionError):
            BitMatrix.from_rows([BitVector.zeros(2), BitVector.zeros(3)])

    def test_alternating(self):
        assert BitMatrix.from_array(A_K3).is_alternating()
        assert not BitMatrix.from_array([[1, 1], [1, 0]]).is_alternating()
        assert not BitMatrix.from_array(PRINTED_T).is_alternating()

    def test_transpose_across_words(self, rng):
        dense = rng.integers(0, 2, size=(5, 130), dtype=np.uint8)
        assert np.array_equal(BitMatrix.from_array(dense).transpose().to_array(), dense.T)


class TestRank:

    def test_zero_matrix(self):
        assert rank(BitMatrix.zeros(3, 3)) == 0

    def test_graph_h(self):
        assert rank(graph_h().adjacency) == 2

    def test_triangle(self):
        assert rank(BitMatrix.from_array(A_K3)) == 2

    def test_input_untouched(self):
        m = BitMatrix.from_array(A_K3)
        before = m.words.copy()
        rank(m)
        assert np.array_equal(m.words, before)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 16), st.integers(1, 16), st.integers(0, 2**32 - 1))
    def test_matches_naive_elimination(self, rows, cols, seed):
        dense = np.random.default_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)
        assert rank(BitMatrix.from_array(dense)) == naive_rank(dense)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 2**32 - 1))
    def test_invariant_under_row_operations(self, n, seed):
        rng = np.random.default_rng(seed)
        dense = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        expected = rank(BitMatrix.from_array(dense))
        i, j = rng.choice(n, size=2, replace=False)
        dense[[i, j]] = dense[[j, i]]
        assert rank(BitMatrix.from_array(dense)) == expected
        dense[i] ^= dense[j]
        assert rank(BitMatrix.from_array(dense)) == expected

    def test_wide_matrix_across_words(self, rng):
        dense = rng.integers(0, 2, size=(10, 150), dtype=np.uint8)
        assert rank(BitMatrix.from_array(dense)) == naive_rank(dense)


class TestNonsingular:

    def test_identity(self):
        assert is_nonsingular(BitMatrix.identity(4))

    def test_duplicated_row(self):
        assert not is_nonsingular(BitMatrix.from_array([[1, 0, 1], [0, 1, 1], [1, 0, 1]]))

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            is_nonsingular(BitMatrix.from_array(PRINTED_T))

    def test_printed_certificate_has_full_row_rank(self):
        assert has_full_row_rank(BitMatrix.from_array(PRINTED_T))


class TestProducts:

    def test_identity_times_vector(self):
        x = BitVector.from_bits([1, 0, 1, 1, 0])
        assert mat_vec(BitMatrix.identity(5), x) == x

    def test_printed_certificate_on_first_unit_vector(self):
        y = mat_vec(BitMatrix.from_array(PRINTED_T), BitVector.from_bits([1, 0, 0, 0]))
        assert vec_add(y, BitVector.zeros(3)).to_array().tolist() == [1, 1, 1]

    def test_mat_mul_matches_dense(self, rng):
        a = rng.integers(0, 2, size=(7, 70), dtype=np.uint8)
        b = rng.integers(0, 2, size=(70, 9), dtype=np.uint8)
        product = mat_mul(BitMatrix.from_array(a), BitMatrix.from_array(b))
        assert np.array_equal(product.to_array(), (a.astype(int) @ b) % 2)

    def test_mat_mul_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mat_mul(BitMatrix.zeros(2, 3), BitMatrix.zeros(2, 3))


class TestEchelonAndSpan:

    def test_row_echelon_pivots(self):
        echelon, pivots = row_echelon(BitMatrix.from_array(A_K3))
        assert pivots == [0, 1]
        assert echelon.to_array().tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]

    def test_span_decompose_reconstructs_rows(self, rng):
        dense = rng.integers(0, 2, size=(9, 6), dtype=np.uint8)
        dense[4] = dense[0] ^ dense[1]
        m = BitMatrix.from_array(dense)
        basis, k = span_decompose(m)
        assert len(basis) == rank(m)
        assert mat_mul(k, m.select(basis, range(m.cols))) == m


class TestSymplecticDecompose:

    def test_zero_matrix(self):
        c, m = symplectic_decompose(BitMatrix.zeros(4, 4))
        assert m == 0
        assert c.shape == (0, 4)

    def test_single_edge(self):
        c, m = symplectic_decompose(BitMatrix.from_array([[0, 1], [1, 0]]))
        assert m == 2
        assert c == BitMatrix.identity(2)

    def test_triangle(self):
        a = BitMatrix.from_array(A_K3)
        c, m = symplectic_decompose(a)
        assert m == 2
        assert mat_mul(mat_mul(c.transpose(), symplectic_form(m)), c) == a

    def test_rejects_non_symmetric(self):
        with pytest.raises(DomainError):
            symplectic_decompose(BitMatrix.from_array([[0, 1], [0, 0]]))

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(DomainError):
            symplectic_decompose(BitMatrix.from_array([[1, 1], [1, 0]]))

    def test_random_alternating_matrices(self, rng):
        for _ in range(300):
            n = int(rng.integers(1, 65))
            a = random_alternating(n, rng)
            c, m = symplectic_decompose(a)
            assert m % 2 == 0
            assert m == rank(a)
            assert rank(c) == m
            assert mat_mul(mat_mul(c.transpose(), symplectic_form(m)), c) == a


class TestTextDump:

    def test_round_trip(self):
        m = BitMatrix.from_array(PRINTED_T)
        assert format_matrix(m) == "1100\n1110\n1101"
        assert parse_matrix(format_matrix(m)) == m

    def test_bad_character(self):
        with pytest.raises(ParseError) as excinfo:
            parse_matrix("10\n1x")
        assert excinfo.value.line == 2


def test_dimension_cap(monkeypatch):
    from msnumber.config.settings import config

    monkeypatch.setattr(config.limits, "matrix_max_dim", 8)
    with pytest.raises(CapExceededError):
        BitMatrix.zeros(2, 9)
