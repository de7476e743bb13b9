from __future__ import annotations
from math import gcd
from typing import Annotated, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from .constants import DEFAULT_NODE_BUDGET, DEFAULT_PMAX, DEFAULT_WORKERS, MIN_NODE_BUDGET, MIN_PMAX, SCHEMA_VERSION
from .errors import FractionParseError

Weight = Annotated[int, Field(ge=2)]
Row = Tuple[int, ...]
Verdict = Literal["pass", "fail"]
RigidityStatus = Literal["rigid", "not_rigid", "budget_exceeded"]


class Fraction(BaseModel):
    """A reduced fraction p/q with p > q > 0, naming the lens space L(p, q)."""
    model_config = ConfigDict(frozen=True)

    p: int
    q: int

    @model_validator(mode="after")
    def _reduced(self) -> "Fraction":
        if not self.p > self.q > 0:
            raise ValueError(f"need p > q > 0, got {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not reduced")
        return self

    @classmethod
    def parse(cls, token: str) -> "Fraction":
        """
        Parse a ``p/q`` token.

        :param token: Text such as ``"64/23"``
        :type token: str
        :return: The validated fraction
        :rtype: Fraction
        :raises FractionParseError: If the token is not two integers separated by a slash,
            or they do not satisfy p > q > 0 with gcd 1
        """
        parts = token.strip().split("/")
        if len(parts) != 2:
            raise FractionParseError(token, "expected p/q")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise FractionParseError(token, "p and q must be integers") from None
        if not p > q > 0:
            raise FractionParseError(token, "need p > q > 0")
        if gcd(p, q) != 1:
            raise FractionParseError(token, "p and q must be coprime")
        return cls(p=p, q=q)

    def orientation_reversed(self) -> "Fraction":
        """Return p/(p-q), the fraction of -L(p, q)."""
        return Fraction(p=self.p, q=self.p - self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


class NegCF(BaseModel):
    """Coefficients of a negative continued fraction [a_1, ..., a_n]^-, all a_i >= 2."""
    model_config = ConfigDict(frozen=True)

    coeffs: Tuple[Weight, ...]

    @field_validator("coeffs")
    @classmethod
    def _non_empty(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("a continued fraction needs at least one coefficient")
        return v

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coeffs) + "]"


class BlockForm(BaseModel):
    """([2]^{a_0}, b_1, [2]^{a_1}, ..., b_k, [2]^{a_k}): runs of twos split by entries >= 3."""
    model_config = ConfigDict(frozen=True)

    twos: Tuple[Annotated[int, Field(ge=0)], ...]
    bigs: Tuple[Annotated[int, Field(ge=3)], ...]

    @model_validator(mode="after")
    def _interleaved(self) -> "BlockForm":
        if len(self.twos) != len(self.bigs) + 1:
            raise ValueError("need exactly one more run of twos than large entries")
        return self


class VertexRef(BaseModel):
    model_config = ConfigDict(frozen=True)

    chain: int = Field(ge=0)
    position: int = Field(ge=0)


class Plumbing(BaseModel):
    """
    Disjoint union of weighted linear chains.

    Weights are stored positive: a stored weight w stands for a sphere of
    self-intersection -w in the negative-definite plumbing, and all lattice
    arithmetic is done in the positive-definite form. Vertices are enumerated
    chain by chain, left to right; embedding rows follow that order.
    """
    model_config = ConfigDict(frozen=True)

    chains: Tuple[Tuple[Weight, ...], ...]

    @field_validator("chains")
    @classmethod
    def _non_empty(cls, v: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
        if not v:
            raise ValueError("a plumbing needs at least one chain")
        if any(len(c) == 0 for c in v):
            raise ValueError("chains must be non-empty")
        return v

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(w for c in self.chains for w in c)

    @property
    def num_vertices(self) -> int:
        return sum(len(c) for c in self.chains)

    @property
    def num_edges(self) -> int:
        return sum(len(c) - 1 for c in self.chains)

    @property
    def weight_sum(self) -> int:
        return sum(self.weights)

    def offsets(self) -> List[int]:
        out, acc = [], 0
        for c in self.chains:
            out.append(acc)
            acc += len(c)
        return out

    def vertices(self) -> List[VertexRef]:
        return [VertexRef(chain=i, position=j) for i, c in enumerate(self.chains) for j in range(len(c))]

    def index_of(self, ref: VertexRef) -> int:
        """
        Position of a vertex in the fixed enumeration.

        :param ref: Vertex reference
        :type ref: VertexRef
        :return: Row index of the vertex in Gram and embedding matrices
        :rtype: int
        :raises IndexError: If the reference is out of range for this plumbing
        """
        if ref.chain >= len(self.chains) or ref.position >= len(self.chains[ref.chain]):
            raise IndexError(f"vertex {ref.chain}:{ref.position} not in plumbing")
        return self.offsets()[ref.chain] + ref.position

    def ref_of(self, index: int) -> VertexRef:
        for i, off in reversed(list(enumerate(self.offsets()))):
            if index >= off:
                return VertexRef(chain=i, position=index - off)
        raise IndexError(index)

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for off, c in zip(self.offsets(), self.chains):
            out.extend((off + j, off + j + 1) for j in range(len(c) - 1))
        return out

    def adjacent(self, u: int, v: int) -> bool:
        if abs(u - v) != 1:
            return False
        a, b = self.ref_of(min(u, v)), self.ref_of(max(u, v))
        return a.chain == b.chain

    def __str__(self) -> str:
        return " + ".join("(" + ",".join(str(w) for w in c) + ")" for c in self.chains)


class GramMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Row, ...]

    @model_validator(mode="after")
    def _square_symmetric(self) -> "GramMatrix":
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
            for j in range(i):
                if row[j] != self.entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        return self

    @property
    def size(self) -> int:
        return len(self.entries)


class Embedding(BaseModel):
    """One row per vertex (plumbing enumeration order), one column per unit vector of Z^N."""
    model_config = ConfigDict(frozen=True)

    rows: Tuple[Row, ...]

    @model_validator(mode="after")
    def _rectangular(self) -> "Embedding":
        if not self.rows:
            raise ValueError("an embedding needs at least one row")
        if len({len(r) for r in self.rows}) != 1:
            raise ValueError("embedding rows must all have the same length")
        return self

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])


class CanonicalForm(Embedding):
    """Embedding normalized under signed column permutations (see lattice.canonical)."""


class Violation(BaseModel):
    rule: str
    witness: List[VertexRef] = Field(default_factory=list)
    detail: Optional[str] = None


class ConditionReport(BaseModel):
    verdict: Verdict
    violations: List[Violation] = Field(default_factory=list)

    @model_validator(mode="after")
    def _consistent(self) -> "ConditionReport":
        if (self.verdict == "fail") != bool(self.violations):
            raise ValueError("verdict must be 'fail' exactly when violations are present")
        return self

    @classmethod
    def from_violations(cls, violations: List[Violation]) -> "ConditionReport":
        return cls(verdict="fail" if violations else "pass", violations=violations)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def rules(self) -> List[str]:
        seen: List[str] = []
        for v in self.violations:
            if v.rule not in seen:
                seen.append(v.rule)
        return seen


class RigidityVerdict(BaseModel):
    status: RigidityStatus
    n_max: int
    witness: Optional[Embedding] = None
    embeddings_checked: int = 0
    nodes: int = 0


class EnumerationResult(BaseModel):
    n_cols: int
    embeddings: List[CanonicalForm] = Field(default_factory=list)
    nodes: int = 0
    budget_exceeded: bool = False


class SweepReport(BaseModel):
    checked: int = 0
    failures: List[str] = Field(default_factory=list)
    converse_checked: int = 0
    converse_failures: List[str] = Field(default_factory=list)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.failures


class RigiditySweepReport(BaseModel):
    max_vertices: int
    max_weight_sum: int
    checked: int = 0
    rigid: int = 0
    not_rigid: List[Plumbing] = Field(default_factory=list)
    budget_exceeded: List[Plumbing] = Field(default_factory=list)


class ComplementReport(BaseModel):
    """Orthogonal complement of the standard embedding of the dual chain of p/q."""
    fraction: str
    ambient_dimension: int
    complement_gram: GramMatrix
    congruent: Optional[bool] = None
    basis: Optional[Embedding] = None
    nodes: int = 0
    budget_exceeded: bool = False


class AppendixResult(BaseModel):
    name: str
    chain: List[int]
    marked: List[int]
    expected: int
    found: int
    restricts_standardly: bool
    golden_match: Optional[bool] = None
    embeddings: List[CanonicalForm] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.found == self.expected and self.restricts_standardly and self.golden_match is not False


class LmnSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    n: int = Field(ge=1)


class BoundReport(BaseModel):
    m: int
    n: int
    p: int
    q: int
    b2_canonical: int
    b2_dual: int
    bound_reversed: int = Field(description="lower bound on b2 of negative-definite fillings of -L_{m,n}")
    bound_same: int = Field(description="lower bound on b2 of negative-definite fillings of L_{m,n}")
    balanced_k: Optional[int] = None
    certified_dimension: Optional[int] = None
    budget_exceeded: bool = False

    @model_validator(mode="after")
    def _b2_identities(self) -> "BoundReport":
        if self.b2_canonical != self.n + 5 * self.m:
            raise ValueError("b2(X(p,q)) must equal n + 5m")
        if self.b2_dual != self.m + 7 * self.n + 1:
            raise ValueError("b2(X(p,p-q)) must equal m + 7n + 1")
        return self


class NormFloorReport(BaseModel):
    n: int
    entry_bound: int
    ambient_dimension: int
    shortest_norm: Optional[int] = None
    holds: Optional[bool] = Field(description="None when the budget ran out before the floor was reached")
    nodes: int = 0
    budget_exceeded: bool = False


class ClassifyReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    summands: List[str]
    expansions: List[List[int]]
    plumbing: Plumbing
    dual: Plumbing
    configurations: ConditionReport
    working_conditions: ConditionReport
    rigidity: Optional[RigidityVerdict] = None
    budget_exceeded: bool = False

    @property
    def minimal(self) -> bool:
        return self.configurations.passed


class RunConfig(BaseModel):
    json_output: bool = False
    budget: int = Field(default=DEFAULT_NODE_BUDGET, ge=MIN_NODE_BUDGET)
    workers: int = Field(default=DEFAULT_WORKERS, ge=1)
    pmax: int = Field(default=DEFAULT_PMAX, ge=MIN_PMAX)
    seed: Optional[int] = None
