"""Dense GF(2) linear algebra on bit-packed rows.

Rows are stored as little-endian ``uint64`` words: column ``j`` lives in word
``j // 64`` at bit ``j % 64``. Bits past the last column are always zero, so
two values are equal exactly when their word arrays are equal.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from msnumber.config.settings import config
from msnumber.errors import CapExceededError, DimensionError, DomainError, ParseError

logger = logging.getLogger(__name__)

WORD_DTYPE = np.dtype("<u8")
WORD_BITS = 64

_ONE = np.uint64(1)
_FOLDS = tuple(np.uint64(s) for s in (32, 16, 8, 4, 2, 1))


def word_count(length: int) -> int:
    """Number of 64-bit words needed for ``length`` bits."""
    return (length + WORD_BITS - 1) // WORD_BITS


def _check_dim(value: int, what: str):
    cap = config.limits.matrix_max_dim
    if value > cap:
        raise CapExceededError(what, value, cap, "MSN_MATRIX_MAX_DIM")


def _pack(dense: np.ndarray, cols: int) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, words) little-endian words."""
    rows = dense.shape[0]
    words = word_count(cols)
    if words == 0:
        return np.zeros((rows, 0), dtype=WORD_DTYPE)
    packed = np.packbits(dense.astype(np.uint8) & 1, axis=1, bitorder="little")
    buffer = np.zeros((rows, words * 8), dtype=np.uint8)
    buffer[:, :packed.shape[1]] = packed
    return buffer.view(WORD_DTYPE).reshape(rows, words)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    """Inverse of :func:`_pack`, returning a (rows, cols) uint8 array."""
    rows = words.shape[0]
    if cols == 0 or words.shape[1] == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(words, dtype=WORD_DTYPE).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


def word_parity(values: np.ndarray) -> np.ndarray:
    """Parity of every uint64 in ``values`` (elementwise, returns uint8)."""
    v = np.array(values, dtype=WORD_DTYPE, copy=True)
    for shift in _FOLDS:
        v ^= v >> shift
    return (v & _ONE).astype(np.uint8)


def row_parity(words: np.ndarray) -> np.ndarray:
    """Parity of each packed row of a (rows, words) array."""
    if words.shape[1] == 0:
        return np.zeros(words.shape[0], dtype=np.uint8)
    return word_parity(np.bitwise_xor.reduce(words, axis=1))


def column_bits(words: np.ndarray, col: int) -> np.ndarray:
    """Bit ``col`` of every packed row, as a uint8 array."""
    return ((words[:, col >> 6] >> np.uint64(col & 63)) & _ONE).astype(np.uint8)


def _lowest_bit(row: np.ndarray) -> Optional[int]:
    nonzero = np.flatnonzero(row)
    if nonzero.size == 0:
        return None
    w = int(nonzero[0])
    word = int(row[w])
    return w * WORD_BITS + (word & -word).bit_length() - 1


class BitVector:
    """Immutable GF(2) vector packed into little-endian words."""

    __slots__ = ("_len", "_words")

    def __init__(self, length: int, words: Optional[np.ndarray] = None):
        if length < 0:
            raise DimensionError(f"Negative vector length: {length}")
        self._len = length
        if words is None:
            words = np.zeros(word_count(length), dtype=WORD_DTYPE)
        else:
            words = np.array(words, dtype=WORD_DTYPE, copy=True).reshape(-1)
            if words.size != word_count(length):
                raise DimensionError(
                    f"Expected {word_count(length)} words for {length} bits, got {words.size}"
                )
            spare = length % WORD_BITS
            if spare and int(words[-1]) >> spare:
                raise DimensionError("Padding bits beyond the vector length must be zero")
        words.setflags(write=False)
        self._words = words

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        dense = np.asarray(list(bits), dtype=np.uint8).reshape(1, -1)
        if np.any(dense > 1):
            raise DomainError("Bit vectors take 0/1 entries only")
        return cls(dense.shape[1], _pack(dense, dense.shape[1])[0])

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        dense = np.zeros((1, length), dtype=np.uint8)
        for i in indices:
            if not 0 <= i < length:
                raise DimensionError(f"Index {i} out of range for length {length}")
            dense[0, i] ^= 1
        return cls(length, _pack(dense, length)[0])

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        return cls.from_indices(length, [index])

    @property
    def len(self) -> int:
        return self._len

    @property
    def words(self) -> np.ndarray:
        return self._words

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self._len:
            raise IndexError(f"Bit index {index} out of range for length {self._len}")
        return int(self._words[index >> 6] >> np.uint64(index & 63)) & 1

    def to_array(self) -> np.ndarray:
        return _unpack(self._words.reshape(1, -1), self._len)[0]

    def indices(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.to_array())]

    def weight(self) -> int:
        return int(self.to_array().sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def to_text(self) -> str:
        return "".join(str(int(b)) for b in self.to_array())

    def __xor__(self, other: "BitVector") -> "BitVector":
        return vec_add(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._len == other._len and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self._len, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector({self.to_text()!r})"


class BitMatrix:
    """Immutable dense GF(2) matrix, one packed word row per matrix row."""

    __slots__ = ("_rows", "_cols", "_words")

    def __init__(self, rows: int, cols: int, words: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"Negative matrix shape: {rows}x{cols}")
        _check_dim(cols, "Matrix construction")
        self._rows = rows
        self._cols = cols
        if words is None:
            words = np.zeros((rows, word_count(cols)), dtype=WORD_DTYPE)
        else:
            words = np.array(words, dtype=WORD_DTYPE, copy=True).reshape(rows, word_count(cols))
            spare = cols % WORD_BITS
            if spare and rows and np.any(words[:, -1] >> np.uint64(spare)):
                raise DimensionError("Padding bits beyond the last column must be zero")
        words.setflags(write=False)
        self._words = words

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_array(cls, dense) -> "BitMatrix":
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            raise DimensionError(f"Expected a 2-D array, got shape {dense.shape}")
        if np.any(dense > 1):
            raise DomainError("Bit matrices take 0/1 entries only")
        rows, cols = dense.shape
        return cls(rows, cols, _pack(dense, cols))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: Optional[int] = None) -> "BitMatrix":
        if not rows:
            return cls(0, cols or 0)
        width = rows[0].len if cols is None else cols
        if any(r.len != width for r in rows):
            raise DimensionError("All rows must have the same length")
        return cls(len(rows), width, np.stack([r.words for r in rows]))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    @property
    def words(self) -> np.ndarray:
        return self._words

    def row(self, i: int) -> BitVector:
        return BitVector(self._cols, self._words[i])

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(f"Entry ({i}, {j}) outside a {self._rows}x{self._cols} matrix")
        return int(self._words[i, j >> 6] >> np.uint64(j & 63)) & 1

    def to_array(self) -> np.ndarray:
        return _unpack(self._words, self._cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def is_square(self) -> bool:
        return self._rows == self._cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def has_zero_diagonal(self) -> bool:
        return not np.any(np.diagonal(self.to_array()))

    def is_alternating(self) -> bool:
        return self.is_symmetric() and self.has_zero_diagonal()

    def select(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "BitMatrix":
        """Submatrix on the given rows and columns, in the given order."""
        dense = self.to_array()
        sub = dense[np.ix_(list(row_indices), list(col_indices))]
        return BitMatrix.from_array(sub.reshape(len(row_indices), len(col_indices)))

    def to_text(self) -> str:
        return format_matrix(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols})"


def vec_add(x: BitVector, y: BitVector) -> BitVector:
    """x + y over GF(2)."""
    if x.len != y.len:
        raise DimensionError(f"Cannot add vectors of length {x.len} and {y.len}")
    return BitVector(x.len, x.words ^ y.words)


def mat_vec(a: BitMatrix, x: BitVector) -> BitVector:
    """A·x over GF(2)."""
    if a.cols != x.len:
        raise DimensionError(f"Cannot multiply a {a.rows}x{a.cols} matrix by a length-{x.len} vector")
    bits = row_parity(a.words & x.words[np.newaxis, :])
    return BitVector(a.rows, _pack(bits.reshape(1, -1), a.rows)[0])


def mat_mul_words(a_words: np.ndarray, a_cols: int, b: BitMatrix) -> np.ndarray:
    """Packed product of raw row words (a_cols wide) with ``b``.

    Row ``s`` of the result is the XOR of the rows of ``b`` selected by row
    ``s`` of ``a``; one vectorised pass per column of ``a``.
    """
    out = np.zeros((a_words.shape[0], b.words.shape[1]), dtype=WORD_DTYPE)
    for j in range(a_cols):
        selected = column_bits(a_words, j).astype(bool)
        if selected.any():
            out[selected] ^= b.words[j]
    return out


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """A·B over GF(2)."""
    if a.cols != b.rows:
        raise DimensionError(f"Cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return BitMatrix(a.rows, b.cols, mat_mul_words(a.words, a.cols, b))


def row_echelon(m: BitMatrix) -> Tuple[BitMatrix, List[int]]:
    """Reduced row echelon form and pivot columns.

    The pivot for each column is the first nonzero row at or below the current
    position; rows are swapped, never reordered otherwise.
    """
    words = m.words.copy()
    pivots: List[int] = []
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        hits = np.flatnonzero(column_bits(words[r:], col))
        if hits.size == 0:
            continue
        pivot = r + int(hits[0])
        if pivot != r:
            words[[r, pivot]] = words[[pivot, r]]
        targets = np.flatnonzero(column_bits(words, col))
        targets = targets[targets != r]
        if targets.size:
            words[targets] ^= words[r]
        pivots.append(col)
        r += 1
    return BitMatrix(m.rows, m.cols, words), pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank by forward elimination on a working copy."""
    words = m.words.copy()
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        hits = np.flatnonzero(column_bits(words[r:], col))
        if hits.size == 0:
            continue
        pivot = r + int(hits[0])
        if pivot != r:
            words[[r, pivot]] = words[[pivot, r]]
        below = r + 1 + np.flatnonzero(column_bits(words[r + 1:], col))
        if below.size:
            words[below] ^= words[r]
        r += 1
    return r


def is_nonsingular(m: BitMatrix) -> bool:
    if not m.is_square():
        raise DimensionError(f"Nonsingularity needs a square matrix, got {m.rows}x{m.cols}")
    return rank(m) == m.cols


def has_full_row_rank(m: BitMatrix) -> bool:
    return rank(m) == m.rows


def span_decompose(m: BitMatrix) -> Tuple[List[int], BitMatrix]:
    """Greedy row basis and the coefficients expressing every row in it.

    Returns ``(basis, k)`` with ``m[j] == sum_i k[j, i] * m[basis[i]]``.
    """
    width = word_count(m.rows)
    pivots: List[Tuple[int, np.ndarray, np.ndarray]] = []
    basis: List[int] = []
    coeffs = np.zeros((m.rows, width), dtype=WORD_DTYPE)
    for j in range(m.rows):
        vec = m.words[j].copy()
        combo = np.zeros(width, dtype=WORD_DTYPE)
        for col, p_vec, p_combo in pivots:
            if (int(vec[col >> 6]) >> (col & 63)) & 1:
                vec ^= p_vec
                combo ^= p_combo
        lead = _lowest_bit(vec)
        if lead is None:
            coeffs[j] = combo
            continue
        k = len(basis)
        basis.append(j)
        unit = np.zeros(width, dtype=WORD_DTYPE)
        unit[k >> 6] = _ONE << np.uint64(k & 63)
        pivots.append((lead, vec, combo ^ unit))
        coeffs[j] = unit
    dense = _unpack(coeffs, m.rows)[:, :len(basis)]
    return basis, BitMatrix.from_array(dense.reshape(m.rows, len(basis)))


def symplectic_form(m: int) -> BitMatrix:
    """N_m: m/2 diagonal blocks [[0, 1], [1, 0]]."""
    if m % 2:
        raise DomainError(f"N_m needs even m, got {m}")
    dense = np.zeros((m, m), dtype=np.uint8)
    for k in range(0, m, 2):
        dense[k, k + 1] = dense[k + 1, k] = 1
    return BitMatrix.from_array(dense)


def leading_pair(work: np.ndarray) -> Optional[Tuple[int, int]]:
    """Lexicographically smallest (a, b), a < b, with work[a, b] set."""
    nonzero_rows = np.flatnonzero(work.any(axis=1))
    if nonzero_rows.size == 0:
        return None
    a = int(nonzero_rows[0])
    b = _lowest_bit(work[a])
    return a, b


def hyperbolic_split(work: np.ndarray, a: int, b: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Extract the hyperbolic pair on (a, b) from a packed alternating matrix.

    With p = row a and q = row b restricted away from {a, b}, the matrix is
    rewritten in place as A' = A|_rest + p qᵀ + q pᵀ so that
    A = u vᵀ + v uᵀ + A' with u = e_a + q and v = e_b + p. Returns (p, q).
    The diagonal stays zero: a row in both p and q is toggled twice there.
    """
    wa, ba = a >> 6, np.uint64(a & 63)
    wb, bb = b >> 6, np.uint64(b & 63)
    clear_a = ~(_ONE << ba)
    clear_b = ~(_ONE << bb)
    p = work[a].copy()
    q = work[b].copy()
    p[wa] &= clear_a
    p[wb] &= clear_b
    q[wa] &= clear_a
    q[wb] &= clear_b
    work[a] = 0
    work[b] = 0
    work[:, wa] &= clear_a
    work[:, wb] &= clear_b
    p_rows = _unpack(p.reshape(1, -1), n)[0].astype(bool)
    q_rows = _unpack(q.reshape(1, -1), n)[0].astype(bool)
    if p_rows.any():
        work[p_rows] ^= q
    if q_rows.any():
        work[q_rows] ^= p
    return p, q


def symplectic_decompose(a: BitMatrix) -> Tuple[BitMatrix, int]:
    """Decompose an alternating matrix as A = Cᵀ N_m C.

    Greedy hyperbolic-pair extraction: take the smallest (a, b) with
    A[a, b] = 1, emit rows u = e_a + q and v = e_b + p, fold the remainder
    and repeat. C has m = rank(A) rows and full row rank.
    """
    if not a.is_square():
        raise DimensionError(f"Alternating matrices are square, got {a.rows}x{a.cols}")
    if not a.is_symmetric():
        raise DomainError("Symplectic decomposition needs a symmetric matrix")
    if not a.has_zero_diagonal():
        raise DomainError("Symplectic decomposition needs a zero diagonal")
    n = a.cols
    work = a.words.copy()
    rows: List[np.ndarray] = []
    while True:
        pair = leading_pair(work)
        if pair is None:
            break
        i, j = pair
        p, q = hyperbolic_split(work, i, j, n)
        u = q.copy()
        u[i >> 6] |= _ONE << np.uint64(i & 63)
        v = p.copy()
        v[j >> 6] |= _ONE << np.uint64(j & 63)
        rows.extend((u, v))
    m = len(rows)
    c_words = np.stack(rows) if rows else np.zeros((0, word_count(n)), dtype=WORD_DTYPE)
    logger.debug(f"Symplectic decomposition of a {n}x{n} matrix: m={m}")
    return BitMatrix(m, n, c_words), m


def format_matrix(m: BitMatrix) -> str:
    """Rows as 0/1 strings, one per line."""
    return "\n".join("".join(str(int(b)) for b in row) for row in m.to_array())


def parse_matrix(text: str, cols: Optional[int] = None) -> BitMatrix:
    """Parse the 0/1 row dump produced by :func:`format_matrix`."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    rows = []
    for number, line in enumerate(lines, start=1):
        if set(line) - {"0", "1"}:
            raise ParseError(f"matrix rows take 0/1 characters only: {line!r}", line=number)
        rows.append([int(ch) for ch in line])
    if not rows:
        return BitMatrix(0, cols or 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("matrix rows have different lengths")
    if cols is not None and width != cols:
        raise ParseError(f"expected {cols} columns, got {width}")
    return BitMatrix.from_array(np.array(rows, dtype=np.uint8))
