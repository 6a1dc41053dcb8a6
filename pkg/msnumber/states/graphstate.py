"""Graph-state quantities: MS-number, amplitudes, WHT spectrum, bent status, Schmidt rank."""

import logging
from typing import Iterable, Optional, Tuple

import numpy as np

from msnumber.algebra.gf2core import BitMatrix, BitVector, rank, span_decompose
from msnumber.algebra.quadform import (
    QuadraticPolynomial,
    ReductionCertificate,
    brute_force_weight,
    from_graph,
    readonce_polynomial,
    reduce_to_readonce,
    truth_table,
    weight,
)
from msnumber.config.schema import ReadonceDescriptor, ReadonceForm, ReadonceKind
from msnumber.config.settings import config
from msnumber.errors import DomainError
from msnumber.graphs.graph import Graph, bipartition

logger = logging.getLogger(__name__)


class AmplitudeVector:
    """Signs of a graph state in the computational basis.

    Index s is the basis string x read with x₁ as the most significant bit;
    every amplitude has magnitude 2^{-n/2}, so only the signs are kept.
    """

    def __init__(self, n: int, signs: np.ndarray):
        self.n = n
        self.signs = np.asarray(signs, dtype=np.int8)

    @property
    def minus_count(self) -> int:
        return int(np.count_nonzero(self.signs < 0))

    def render(self) -> str:
        return "".join("-" if s < 0 else "+" for s in self.signs)


class SpectrumVector:
    """Walsh–Hadamard spectrum of a 0/1 truth table.

    Coefficient i equals ``numerators[i] · 2^{-n/2}``; numerators are exact
    integers, so every identity on the spectrum is checked without floats.
    """

    def __init__(self, n: int, numerators: np.ndarray):
        self.n = n
        self.numerators = np.asarray(numerators, dtype=np.int64)

    def scaled_zero(self) -> int:
        """f*₀ · 2^{n/2}, which equals the weight of the source function."""
        return int(self.numerators[0])

    def parseval_holds(self) -> bool:
        # input is 0/1, so the sum of squared inputs is the weight
        total = int(np.dot(self.numerators, self.numerators))
        return total == (1 << self.n) * self.scaled_zero()

    def _denominator(self) -> str:
        if self.n % 2:
            return f"2^{self.n // 2}.5"
        return f"2^{self.n // 2}"

    def render(self) -> str:
        denominator = self._denominator()
        return "\n".join(f"{int(v)}/{denominator}" for v in self.numerators)


def ms_number(graph: Graph) -> int:
    """w(G): the number of minus signs of |G⟩, via the readonce reduction."""
    return weight(from_graph(graph))


def plus_number(graph: Graph) -> int:
    return (1 << graph.n) - ms_number(graph)


def amplitudes(graph: Graph, max_n: Optional[int] = None) -> AmplitudeVector:
    table = truth_table(from_graph(graph), max_n=max_n)
    return AmplitudeVector(graph.n, 1 - 2 * table.astype(np.int8))


def fast_walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalised butterfly transform of a length-2ⁿ integer vector."""
    a = np.asarray(values, dtype=np.int64).copy()
    size = a.size
    h = 1
    while h < size:
        blocks = a.reshape(-1, 2, h)
        a = np.stack((blocks[:, 0] + blocks[:, 1], blocks[:, 0] - blocks[:, 1]), axis=1).reshape(-1)
        h *= 2
    return a


def wht_spectrum(f: QuadraticPolynomial, max_n: Optional[int] = None) -> SpectrumVector:
    cap = config.limits.spectrum_max_n if max_n is None else max_n
    table = truth_table(f, max_n=cap)
    return SpectrumVector(f.n, fast_walsh_hadamard(table))


def is_bent(f: QuadraticPolynomial, max_n: Optional[int] = None) -> bool:
    """Bent test on the exact spectrum; false for odd n.

    Scaled by 2^{n/2}: the zero coefficient must be 2^{n-1} ± 2^{n/2-1} and
    every other coefficient ±2^{n/2-1}.
    """
    if f.n % 2 or f.n < 2:
        return False
    spectrum = wht_spectrum(f, max_n=max_n)
    half = 1 << (f.n // 2 - 1)
    zero = spectrum.scaled_zero()
    if abs(zero - (1 << (f.n - 1))) != half:
        return False
    return bool(np.all(np.abs(spectrum.numerators[1:]) == half))


def max_rank_bent_check(graph: Graph) -> Tuple[int, bool]:
    """(brank(G), is_bent(f_G)) computed independently of each other."""
    return rank(graph.adjacency), is_bent(from_graph(graph))


def schmidt_rank_cut(graph: Graph, side: Iterable[int]) -> int:
    """Rank of the cut block A(G)[side, rest]."""
    chosen = sorted(set(side))
    for v in chosen:
        if not 0 <= v < graph.n:
            raise DomainError(f"Vertex {v} outside 0..{graph.n - 1}")
    rest = [v for v in range(graph.n) if v not in set(chosen)]
    if not chosen or not rest:
        return 0
    return rank(graph.adjacency.select(chosen, rest))


def schmidt_rank_bipartite(graph: Graph) -> int:
    """SR of a bipartite graph state across its own bipartition: brank/2."""
    if bipartition(graph) is None:
        raise DomainError("Schmidt rank via binary rank needs a bipartite graph")
    return rank(graph.adjacency) // 2


def ms_from_schmidt(n: int, r: int) -> int:
    """2^{n-1}(1 - 2^{-r}) = 2^{n-1} - 2^{n-1-r}."""
    if n < 1:
        raise DomainError(f"Order must be at least 1, got {n}")
    if not 0 <= r <= n - 1:
        raise DomainError(f"Schmidt rank must lie in 0..{n - 1}, got {r}")
    return (1 << (n - 1)) - (1 << (n - 1 - r))


def readonce_descriptor(graph: Graph) -> ReadonceDescriptor:
    g, _ = reduce_to_readonce(from_graph(graph))
    return ReadonceDescriptor(m=g.m, kind=g.kind, z=g.z, n_total=graph.n)


def readonce_state_weight(descriptor: ReadonceDescriptor, max_n: Optional[int] = None) -> int:
    """MS-number of |G_(m,z)⟩ ⊗ |+⟩^{n-m}, counted on the readonce polynomial."""
    g = readonce_polynomial(descriptor.form())
    return brute_force_weight(g, max_n=max_n) << (descriptor.n_total - descriptor.m)


def bipartite_certificate(graph: Graph) -> Tuple[ReadonceForm, ReductionCertificate]:
    """Type II certificate built from independent rows of the cut block.

    With M = A(G)[A, B], pick independent rows γ_i of M and coefficients k
    such that M[j] = Σ_i k[j, i] γ_i. Then f_G = Σ_i (k[:, i]·x_A)(γ_i·x_B).
    """
    parts = bipartition(graph)
    if parts is None:
        raise DomainError("Bipartite certificate needs a bipartite graph")
    side_a, side_b = list(parts.side_a), list(parts.side_b)
    n = graph.n
    if not side_a or not side_b:
        return ReadonceForm(m=0, kind=ReadonceKind.TYPE_II, z=0), ReductionCertificate(
            BitMatrix(0, n), BitVector.zeros(0)
        )
    block = graph.adjacency.select(side_a, side_b)
    basis, coefficients = span_decompose(block)
    dense_block = block.to_array()
    dense_k = coefficients.to_array()
    r = len(basis)
    t = np.zeros((2 * r, n), dtype=np.uint8)
    for i, row in enumerate(basis):
        t[2 * i, side_a] = dense_k[:, i]
        t[2 * i + 1, side_b] = dense_block[row]
    logger.debug(f"Bipartite certificate: |A|={len(side_a)}, |B|={len(side_b)}, r={r}")
    return (
        ReadonceForm(m=2 * r, kind=ReadonceKind.TYPE_II, z=0),
        ReductionCertificate(BitMatrix.from_array(t), BitVector.zeros(2 * r)),
    )
