"""Structured records exchanged between the toolkit layers."""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, model_validator


REPRESENTATIVE_POLICY = "fewest edges, then graph6"


class ReadonceKind(str, Enum):
    """Readonce form shapes."""
    TYPE_I = "I"  # one linear variable plus disjoint products
    TYPE_II = "II"  # disjoint products plus a constant


class ReadonceForm(BaseModel):
    """Readonce polynomial g described by (m, kind, z)."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=0, description="Number of readonce variables")
    kind: ReadonceKind = Field(description="Type I or Type II")
    z: int = Field(default=0, ge=0, le=1, description="Constant bit")

    @model_validator(mode="after")
    def _check_shape(self) -> "ReadonceForm":
        if self.kind == ReadonceKind.TYPE_I:
            if self.m % 2 == 0:
                raise ValueError(f"Type I forms have odd m, got m={self.m}")
            if self.z != 0:
                raise ValueError("Type I forms are canonicalised to z=0")
        elif self.m % 2:
            raise ValueError(f"Type II forms have even m, got m={self.m}")
        return self

    def describe(self) -> str:
        return f"m={self.m} kind={self.kind.value} z={self.z}"


class ReadonceDescriptor(ReadonceForm):
    """Readonce form padded with |+> qubits up to ``n_total``."""

    n_total: int = Field(ge=0, description="Qubit count of the product state")

    @model_validator(mode="after")
    def _check_total(self) -> "ReadonceDescriptor":
        if self.m > self.n_total:
            raise ValueError(f"m={self.m} exceeds n_total={self.n_total}")
        return self

    def form(self) -> ReadonceForm:
        return ReadonceForm(m=self.m, kind=self.kind, z=self.z)


class Bipartition(BaseModel):
    """Two disjoint vertex sides covering a graph, no edge inside a side.

    Without a graph the sides must cover 0..order-1. Validating with
    ``context={"graph": g}`` also checks the order and every edge.
    """

    model_config = ConfigDict(frozen=True)

    side_a: Tuple[int, ...]
    side_b: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_sides(self, info: ValidationInfo) -> "Bipartition":
        if set(self.side_a) & set(self.side_b):
            raise ValueError("Bipartition sides must be disjoint")
        if sorted(self.side_a + self.side_b) != list(range(self.order)):
            raise ValueError(f"Bipartition sides must cover vertices 0..{self.order - 1}")
        graph = (info.context or {}).get("graph")
        if graph is not None:
            if graph.n != self.order:
                raise ValueError(f"Bipartition covers {self.order} vertices, graph has {graph.n}")
            for side in (self.side_a, self.side_b):
                for i, u in enumerate(side):
                    for v in side[i + 1:]:
                        if graph.has_edge(u, v):
                            raise ValueError(f"Edge ({u}, {v}) lies inside one side")
        return self

    @property
    def order(self) -> int:
        return len(self.side_a) + len(self.side_b)


class Family(str, Enum):
    """Graph families with closed-form MS-numbers."""
    COMPLETE = "complete"
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    COMPLETE_BIPARTITE = "complete_bipartite"
    QMAX = "qmax"
    TREE = "tree"


class FamilySpec(BaseModel):
    """A family member: order ``n``, sides ``(p, q)`` or an explicit tree."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    family: Family
    n: Optional[int] = Field(default=None, ge=0)
    p: Optional[int] = Field(default=None, ge=0)
    q: Optional[int] = Field(default=None, ge=0)
    tree: Optional[object] = Field(default=None, description="Graph instance for the tree family")

    @model_validator(mode="after")
    def _check_parameters(self) -> "FamilySpec":
        if self.family == Family.COMPLETE_BIPARTITE:
            if self.p is None or self.q is None:
                raise ValueError("complete_bipartite needs both p and q")
        elif self.family == Family.TREE:
            if self.tree is None:
                raise ValueError("tree family needs an explicit tree")
        elif self.n is None:
            raise ValueError(f"{self.family.value} needs an order n")
        return self


class ClassEntry(BaseModel):
    """One (order, MS-number) class of a classified stream."""

    n: int
    w: int
    count: int = Field(ge=0)
    representatives: List[str] = Field(default_factory=list)


class RecordError(BaseModel):
    """A malformed stream record."""

    line: int
    message: str


class ClassificationReport(BaseModel):
    """Classes sorted by (n, w) plus the malformed records seen on the way."""

    classes: List[ClassEntry] = Field(default_factory=list)
    representative_policy: str = Field(
        default=REPRESENTATIVE_POLICY, description="Order in which representatives are kept"
    )
    total: int = 0
    malformed: int = 0
    errors: List[RecordError] = Field(default_factory=list)

    def as_mapping(self) -> Dict[Tuple[int, int], ClassEntry]:
        return {(entry.n, entry.w): entry for entry in self.classes}


class Mismatch(BaseModel):
    """A graph on which the algorithm and an oracle disagreed."""

    graph6: str
    check: str
    expected: str
    actual: str


class VerificationSummary(BaseModel):
    """Outcome of an oracle-versus-algorithm sweep."""

    checked: int = 0
    by_order: Dict[int, int] = Field(default_factory=dict)
    mismatches: List[Mismatch] = Field(default_factory=list)
    malformed: int = 0
    elapsed_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.malformed
