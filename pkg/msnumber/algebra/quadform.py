"""Quadratic polynomials over GF(2), readonce reduction and exact weights."""

import logging
import re
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from msnumber.algebra import gf2core
from msnumber.algebra.gf2core import (
    WORD_DTYPE,
    BitMatrix,
    BitVector,
    hyperbolic_split,
    leading_pair,
    mat_mul_words,
    rank,
    row_parity,
    word_count,
)
from msnumber.config.schema import ReadonceForm, ReadonceKind
from msnumber.config.settings import config
from msnumber.errors import CapExceededError, DimensionError, DomainError, ParseError

logger = logging.getLogger(__name__)

_ONE = np.uint64(1)


class QuadraticPolynomial:
    """f(x) = xᵀUx + l·x + c0 over GF(2), U strictly upper triangular."""

    __slots__ = ("_n", "_u", "_l", "_c0")

    def __init__(self, n: int, u: BitMatrix, l: BitVector, c0: int = 0):
        if u.shape != (n, n):
            raise DimensionError(f"Quadratic part must be {n}x{n}, got {u.rows}x{u.cols}")
        if l.len != n:
            raise DimensionError(f"Linear part must have length {n}, got {l.len}")
        if c0 not in (0, 1):
            raise DomainError(f"Constant must be 0 or 1, got {c0}")
        if np.any(np.tril(u.to_array())):
            raise DomainError("Quadratic coefficients must be strictly upper triangular")
        self._n = n
        self._u = u
        self._l = l
        self._c0 = int(c0)

    @classmethod
    def zero(cls, n: int) -> "QuadraticPolynomial":
        return cls(n, BitMatrix.zeros(n, n), BitVector.zeros(n), 0)

    @classmethod
    def from_terms(
        cls,
        n: int,
        quad: Iterable[Tuple[int, int]] = (),
        lin: Iterable[int] = (),
        const: int = 0,
    ) -> "QuadraticPolynomial":
        """Build from 0-based terms; repeated terms cancel, x_i·x_i folds into x_i."""
        upper = np.zeros((n, n), dtype=np.uint8)
        linear = np.zeros(n, dtype=np.uint8)
        for i, j in quad:
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"Term x{i + 1}x{j + 1} outside {n} variables")
            if i == j:
                linear[i] ^= 1
            else:
                upper[min(i, j), max(i, j)] ^= 1
        for i in lin:
            if not 0 <= i < n:
                raise DomainError(f"Term x{i + 1} outside {n} variables")
            linear[i] ^= 1
        return cls(n, BitMatrix.from_array(upper), BitVector.from_bits(linear), const & 1)

    @property
    def n(self) -> int:
        return self._n

    @property
    def U(self) -> BitMatrix:
        return self._u

    @property
    def l(self) -> BitVector:
        return self._l

    @property
    def c0(self) -> int:
        return self._c0

    def symmetric(self) -> BitMatrix:
        """U + Uᵀ, the alternating matrix of the polar form."""
        dense = self._u.to_array()
        return BitMatrix.from_array(dense ^ dense.T)

    def quadratic_terms(self) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self._u.to_array())]

    def is_homogeneous(self) -> bool:
        return self._l.is_zero() and self._c0 == 0

    def is_zero(self) -> bool:
        return self.is_homogeneous() and not self._u.words.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadraticPolynomial):
            return NotImplemented
        return (self._n, self._u, self._l, self._c0) == (other._n, other._u, other._l, other._c0)

    def __hash__(self) -> int:
        return hash((self._n, self._u, self._l, self._c0))

    def __repr__(self) -> str:
        return f"QuadraticPolynomial({format_polynomial(self)!r})"


class ReductionCertificate:
    """Affine substitution y = Tx + c witnessing g(Tx + c) = f(x)."""

    __slots__ = ("T", "c")

    def __init__(self, T: BitMatrix, c: BitVector):
        if c.len != T.rows:
            raise DimensionError(f"Certificate offset has length {c.len}, T has {T.rows} rows")
        self.T = T
        self.c = c

    def apply(self, x: BitVector) -> BitVector:
        return gf2core.vec_add(gf2core.mat_vec(self.T, x), self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReductionCertificate):
            return NotImplemented
        return self.T == other.T and self.c == other.c

    def __repr__(self) -> str:
        return f"ReductionCertificate(T={self.T.rows}x{self.T.cols})"


def from_graph(graph) -> QuadraticPolynomial:
    """f_G(x) = Σ_{i<j} A(G)_ij x_i x_j."""
    dense = graph.adjacency.to_array()
    n = graph.n
    return QuadraticPolynomial(n, BitMatrix.from_array(np.triu(dense, k=1)), BitVector.zeros(n), 0)


def evaluate_batch(f: QuadraticPolynomial, assignments: np.ndarray) -> np.ndarray:
    """Evaluate f on every packed row of ``assignments`` (shape (k, words)).

    Row s holds x with x_i at bit i. Uses xᵀUx = parity(x & Ux) with the
    products computed for the whole batch at once.
    """
    assignments = np.asarray(assignments, dtype=WORD_DTYPE)
    if assignments.shape[1] != word_count(f.n):
        raise DimensionError(
            f"Assignments carry {assignments.shape[1]} words, f needs {word_count(f.n)}"
        )
    ux = mat_mul_words(assignments, f.n, f.U.transpose())
    values = row_parity(assignments & ux)
    values ^= row_parity(assignments & f.l.words[np.newaxis, :])
    if f.c0:
        values ^= 1
    return values


def evaluate(f: QuadraticPolynomial, x: BitVector) -> int:
    """f(x) over GF(2)."""
    if x.len != f.n:
        raise DimensionError(f"Assignment has length {x.len}, f has {f.n} variables")
    return int(evaluate_batch(f, x.words.reshape(1, -1))[0])


def _bit_reverse(values: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(values)
    for i in range(n):
        out |= ((values >> np.uint64(i)) & _ONE) << np.uint64(n - 1 - i)
    return out


def assignment_block(n: int, start: int, stop: int, msb_first: bool = False) -> np.ndarray:
    """Packed assignments for basis indices start..stop-1 (n ≤ 64).

    With ``msb_first`` the index reads x₁ as its most significant bit, the
    basis-state convention; otherwise x₁ is the least significant bit.
    """
    if n == 0:
        return np.zeros((stop - start, 0), dtype=WORD_DTYPE)
    values = np.arange(start, stop, dtype=WORD_DTYPE)
    if msb_first:
        values = _bit_reverse(values, n)
    return values.reshape(-1, 1)


def _check_cap(n: int, cap: int, what: str, env_key: str):
    if n > cap:
        raise CapExceededError(what, n, cap, env_key)


def truth_table(f: QuadraticPolynomial, max_n: Optional[int] = None) -> np.ndarray:
    """Values of f at every basis index, x₁ the most significant bit."""
    cap = config.limits.amplitude_max_n if max_n is None else max_n
    _check_cap(f.n, cap, "Truth table", "MSN_AMPLITUDE_MAX_N")
    total = 1 << f.n
    chunk = config.limits.brute_force_chunk
    parts = [
        evaluate_batch(f, assignment_block(f.n, start, min(start + chunk, total), msb_first=True))
        for start in range(0, total, chunk)
    ]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)


def brute_force_weight(f: QuadraticPolynomial, max_n: Optional[int] = None) -> int:
    """|f| by exhaustive count over all 2ⁿ assignments, block by block."""
    cap = config.limits.brute_force_max_n if max_n is None else max_n
    _check_cap(f.n, cap, "Brute-force weight", "MSN_BRUTE_FORCE_MAX_N")
    total = 1 << f.n
    chunk = config.limits.brute_force_chunk
    count = 0
    for start in range(0, total, chunk):
        block = assignment_block(f.n, start, min(start + chunk, total))
        count += int(evaluate_batch(f, block).sum())
    return count


def readonce_polynomial(g: ReadonceForm) -> QuadraticPolynomial:
    """g itself as a polynomial in m variables: yᵀR_m y + z."""
    offset = 1 if g.kind == ReadonceKind.TYPE_I else 0
    pairs = [(k, k + 1) for k in range(offset, g.m, 2)]
    linear = [0] if g.kind == ReadonceKind.TYPE_I else []
    return QuadraticPolynomial.from_terms(g.m, pairs, linear, g.z)


def evaluate_readonce(g: ReadonceForm, y: BitVector) -> int:
    return evaluate(readonce_polynomial(g), y)


def reduce_to_readonce(f: QuadraticPolynomial) -> Tuple[ReadonceForm, ReductionCertificate]:
    """Reduce f to an equivalent readonce form with a certificate.

    Repeatedly takes the smallest quadratic term x_a x_b, writes
    f = (x_a + Q)(x_b + P) + (R + PQ) and emits y = x_a + Q, y' = x_b + P.
    Expanding PQ folds x_i² into x_i, which feeds the linear part. A nonzero
    linear remainder L + c0 becomes the Type I variable y₁ = L·x + c0.
    """
    n = f.n
    width = word_count(n)
    work = f.symmetric().words.copy()
    lin = f.l.words.copy()
    const = f.c0
    rows: List[np.ndarray] = []
    offsets: List[int] = []
    while True:
        pair = leading_pair(work)
        if pair is None:
            break
        a, b = pair
        p0 = int(lin[a >> 6] >> np.uint64(a & 63)) & 1
        q0 = int(lin[b >> 6] >> np.uint64(b & 63)) & 1
        p, q = hyperbolic_split(work, a, b, n)
        u = q.copy()
        u[a >> 6] |= _ONE << np.uint64(a & 63)
        v = p.copy()
        v[b >> 6] |= _ONE << np.uint64(b & 63)
        lin[a >> 6] &= ~(_ONE << np.uint64(a & 63))
        lin[b >> 6] &= ~(_ONE << np.uint64(b & 63))
        lin ^= p & q
        if p0:
            lin ^= q
        if q0:
            lin ^= p
        const ^= p0 & q0
        rows.extend((u, v))
        offsets.extend((q0, p0))

    if lin.any():
        kind = ReadonceKind.TYPE_I
        rows.insert(0, lin.copy())
        offsets.insert(0, const)
        z = 0
    else:
        kind = ReadonceKind.TYPE_II
        z = const

    m = len(rows)
    t_words = np.stack(rows) if rows else np.zeros((0, width), dtype=WORD_DTYPE)
    g = ReadonceForm(m=m, kind=kind, z=z)
    cert = ReductionCertificate(BitMatrix(m, n, t_words), BitVector.from_bits(offsets))
    logger.debug(f"Reduced {n}-variable form to Type {kind.value}, m={m}, z={z}")
    return g, cert


def readonce_weight(g: ReadonceForm) -> int:
    """|g|: 2^{m-1} for Type I, 2^{m-1} - (-1)^z 2^{(m-2)/2} for Type II."""
    if g.m == 0:
        # the empty form is the constant z
        return g.z
    if g.kind == ReadonceKind.TYPE_I:
        return 1 << (g.m - 1)
    half = 1 << ((g.m - 2) // 2)
    return (1 << (g.m - 1)) + half if g.z else (1 << (g.m - 1)) - half


def weight(f: QuadraticPolynomial) -> int:
    """|f| = |g|·2^{n-m} through the readonce reduction."""
    g, _ = reduce_to_readonce(f)
    return readonce_weight(g) << (f.n - g.m)


def _probe_assignments(n: int, rng: np.random.Generator) -> np.ndarray:
    verification = config.verification
    if n <= verification.cert_exhaustive_max_n:
        return assignment_block(n, 0, 1 << n)
    width = word_count(n)
    blocks = []
    samples = rng.integers(0, np.iinfo(np.uint64).max, size=(verification.cert_random_samples, width),
                           dtype=np.uint64, endpoint=True)
    spare = n % 64
    if spare:
        samples[:, -1] &= (_ONE << np.uint64(spare)) - _ONE
    blocks.append(samples.astype(WORD_DTYPE))
    blocks.append(BitMatrix.identity(n).words)
    if n <= verification.cert_pair_max_n:
        i, j = np.triu_indices(n, k=1)
        dense = np.zeros((i.size, n), dtype=np.uint8)
        dense[np.arange(i.size), i] = 1
        dense[np.arange(i.size), j] = 1
        blocks.append(BitMatrix.from_array(dense).words)
    else:
        logger.warning(f"Skipping weight-2 probes for n={n} (above MSN_CERT_PAIR_MAX_N)")
    return np.concatenate(blocks, axis=0)


def verify_certificate(
    f: QuadraticPolynomial,
    g: ReadonceForm,
    cert: ReductionCertificate,
    seed: Optional[int] = None,
) -> bool:
    """Check g(Tx + c) == f(x) and rank(T) == m.

    Exhaustive up to MSN_CERT_EXHAUSTIVE_MAX_N variables; beyond that, seeded
    uniform samples plus every weight-1 and weight-2 assignment.
    """
    if cert.T.rows != g.m or cert.c.len != g.m:
        raise DimensionError(f"Certificate has {cert.T.rows} rows, readonce form has m={g.m}")
    if cert.T.cols != f.n:
        raise DimensionError(f"Certificate has {cert.T.cols} columns, f has {f.n} variables")
    if rank(cert.T) != g.m:
        logger.debug("Certificate rejected: T is not of full row rank")
        return False
    rng = np.random.default_rng(config.verification.seed if seed is None else seed)
    xs = _probe_assignments(f.n, rng)
    ys = mat_mul_words(xs, f.n, cert.T.transpose()) ^ cert.c.words[np.newaxis, :]
    lhs = evaluate_batch(readonce_polynomial(g), ys)
    rhs = evaluate_batch(f, xs)
    return bool(np.array_equal(lhs, rhs))


def certificate_decomposition(
    f: QuadraticPolynomial, g: ReadonceForm, cert: ReductionCertificate
) -> Tuple[BitMatrix, int]:
    """C with U + Uᵀ = Cᵀ N_r C, read off a certificate.

    Type II: C = T. Type I: the linear variable contributes nothing to the
    polar form, so C is T without its first row.
    """
    if cert.T.cols != f.n or cert.T.rows != g.m:
        raise DimensionError("Certificate does not match the polynomial and readonce form")
    if g.kind == ReadonceKind.TYPE_I:
        c = BitMatrix(g.m - 1, f.n, cert.T.words[1:])
    else:
        c = cert.T
    return c, c.rows


_POLY_SECTION = re.compile(r"^\s*(quad|lin|const)\s*:\s*(.*)$", re.IGNORECASE)


def parse_polynomial(text: str) -> QuadraticPolynomial:
    """Parse "n; quad: i j, i j; lin: i, ...; const: 0|1" (1-based indices)."""
    parts = [p.strip() for p in text.strip().split(";")]
    if not parts or not parts[0]:
        raise ParseError("empty polynomial text")
    try:
        n = int(parts[0])
    except ValueError:
        raise ParseError(f"variable count must be an integer, got {parts[0]!r}")
    if n < 0:
        raise ParseError(f"variable count must be non-negative, got {n}")
    quad: List[Tuple[int, int]] = []
    lin: List[int] = []
    const = 0
    seen = set()
    for part in parts[1:]:
        if not part:
            continue
        match = _POLY_SECTION.match(part)
        if not match:
            raise ParseError(f"unknown polynomial section {part!r}")
        name, body = match.group(1).lower(), match.group(2).strip()
        if name in seen:
            raise ParseError(f"section {name!r} given twice")
        seen.add(name)
        items = [item.strip() for item in body.split(",") if item.strip()]
        try:
            if name == "quad":
                for item in items:
                    tokens = item.split()
                    if len(tokens) != 2:
                        raise ParseError(f"quadratic term needs two indices, got {item!r}")
                    quad.append((_index(tokens[0], n), _index(tokens[1], n)))
            elif name == "lin":
                lin.extend(_index(item, n) for item in items)
            else:
                if body not in ("0", "1"):
                    raise ParseError(f"constant must be 0 or 1, got {body!r}")
                const = int(body)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"bad index in section {name!r}: {e}")
    return QuadraticPolynomial.from_terms(n, quad, lin, const)


def _index(token: str, n: int) -> int:
    value = int(token)
    if not 1 <= value <= n:
        raise ParseError(f"index {value} outside 1..{n}")
    return value - 1


def format_polynomial(f: QuadraticPolynomial) -> str:
    quad = ", ".join(f"{i + 1} {j + 1}" for i, j in f.quadratic_terms())
    lin = ", ".join(str(i + 1) for i in f.l.indices())
    return f"{f.n}; quad: {quad}; lin: {lin}; const: {f.c0}"


def format_certificate(f: QuadraticPolynomial, g: ReadonceForm, cert: ReductionCertificate) -> str:
    """Text dump of a reduction: header lines, the offset c, then the rows of T."""
    lines = [
        f"n {f.n}",
        f"m {g.m}",
        f"kind {g.kind.value}",
        f"z {g.z}",
        f"c {cert.c.to_text()}",
        "T",
    ]
    if g.m:
        lines.append(gf2core.format_matrix(cert.T))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Tuple[int, ReadonceForm, ReductionCertificate]:
    """Inverse of :func:`format_certificate`; returns (n, g, certificate)."""
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    header = {}
    body_start = None
    for number, line in enumerate(lines):
        if line == "T":
            body_start = number + 1
            break
        key, _, value = line.partition(" ")
        header[key] = value.strip()
    missing = {"n", "m", "kind", "z"} - set(header)
    if body_start is None or missing:
        raise ParseError(f"certificate is missing {sorted(missing) or ['T']}")
    try:
        n, m, z = int(header["n"]), int(header["m"]), int(header["z"])
        g = ReadonceForm(m=m, kind=ReadonceKind(header["kind"]), z=z)
    except ValueError as e:
        raise ParseError(f"bad certificate header: {e}")
    offset_text = header.get("c", "")
    if set(offset_text) - {"0", "1"} or len(offset_text) != m:
        raise ParseError(f"offset c must be {m} bits, got {offset_text!r}")
    c = BitVector.from_bits(int(ch) for ch in offset_text)
    t = gf2core.parse_matrix("\n".join(lines[body_start:]), cols=n) if m else BitMatrix(0, n)
    if t.rows != m:
        raise ParseError(f"T has {t.rows} rows, header says m={m}")
    return n, g, ReductionCertificate(t, c)


def random_polynomial(n: int, rng: np.random.Generator, density: float = 0.5) -> QuadraticPolynomial:
    """Uniform-ish random degree-≤2 polynomial with linear and constant parts."""
    upper = np.triu((rng.random((n, n)) < density).astype(np.uint8), k=1)
    linear = (rng.random(n) < 0.5).astype(np.uint8)
    return QuadraticPolynomial(
        n, BitMatrix.from_array(upper), BitVector.from_bits(linear), int(rng.integers(0, 2))
    )
