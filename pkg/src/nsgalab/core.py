"""Genotypes, objective vectors, and the weak-domination order.

All benchmark objectives are integer-valued and maximized; domination is
componentwise ``>=`` with strictness when at least one component is strictly
greater.  Objective values are kept as exact integers throughout so that
domination tests and tie grouping are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ContractViolationError
from .rng import RngStream


class BitString:
    """Immutable fixed-length binary string; the search-space element."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[int] | str | bytes):
        if isinstance(bits, str):
            data = bytes(int(c) for c in bits)
        elif isinstance(bits, bytes):
            data = bits
        else:
            data = bytes(int(b) for b in bits)
        if len(data) < 1:
            raise ContractViolationError("bitstring length must be >= 1")
        if any(b not in (0, 1) for b in data):
            raise ContractViolationError("bits must be 0 or 1")
        self._bits = data

    @property
    def n(self) -> int:
        return len(self._bits)

    @property
    def bits(self) -> bytes:
        return self._bits

    @property
    def count_ones(self) -> int:
        return sum(self._bits)

    @property
    def count_zeros(self) -> int:
        return len(self._bits) - sum(self._bits)

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self._bits, dtype=np.uint8).copy()

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "BitString":
        return cls(arr.astype(np.uint8).tobytes())

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, i: int) -> int:
        return self._bits[i]

    def __iter__(self):
        return iter(self._bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitString) and self._bits == other._bits

    def __hash__(self) -> int:
        return hash(self._bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self._bits)

    def __repr__(self) -> str:
        return f"BitString({str(self)!r})"


class ObjectiveVector(tuple):
    """Tuple of integer objective values (length m >= 2 in real use).

    Subclasses ``tuple`` so vectors hash, sort, and compare exactly.
    """

    def __new__(cls, values: Iterable[int]):
        vec = super().__new__(cls, (int(v) for v in values))
        if len(vec) < 1:
            raise ContractViolationError("objective vector must be non-empty")
        return vec

    @property
    def m(self) -> int:
        return len(self)


@dataclass(frozen=True)
class Individual:
    """A genotype with its objective value, evaluated exactly once at creation."""

    genotype: BitString
    objective: ObjectiveVector


class DominationRelation(enum.Enum):
    """Relation of ``u`` to ``v`` under componentwise maximization.

    ``compare`` on exact integer vectors yields only four of these members:
    any weak domination between distinct vectors is automatically strict
    (some component is strictly greater), so the two `...Properly` members
    cannot occur there.  They are kept to close the taxonomy for callers that
    collapse relations into weak/strict domination queries.
    """

    STRICTLY_DOMINATES = "strictly_dominates"
    WEAKLY_DOMINATES_PROPERLY = "weakly_dominates_properly"
    EQUAL = "equal"
    IS_WEAKLY_DOMINATED_PROPERLY = "is_weakly_dominated_properly"
    IS_STRICTLY_DOMINATED = "is_strictly_dominated"
    INCOMPARABLE = "incomparable"

    def mirror(self) -> "DominationRelation":
        """The relation of ``v`` to ``u`` given the relation of ``u`` to ``v``."""
        table = {
            DominationRelation.STRICTLY_DOMINATES: DominationRelation.IS_STRICTLY_DOMINATED,
            DominationRelation.IS_STRICTLY_DOMINATED: DominationRelation.STRICTLY_DOMINATES,
            DominationRelation.WEAKLY_DOMINATES_PROPERLY: DominationRelation.IS_WEAKLY_DOMINATED_PROPERLY,
            DominationRelation.IS_WEAKLY_DOMINATED_PROPERLY: DominationRelation.WEAKLY_DOMINATES_PROPERLY,
        }
        return table.get(self, self)

    @property
    def weakly_dominates(self) -> bool:
        """True iff ``u >= v`` componentwise (the weak-domination query)."""
        return self in (
            DominationRelation.STRICTLY_DOMINATES,
            DominationRelation.WEAKLY_DOMINATES_PROPERLY,
            DominationRelation.EQUAL,
        )

    @property
    def strictly_dominates(self) -> bool:
        return self in (
            DominationRelation.STRICTLY_DOMINATES,
            DominationRelation.WEAKLY_DOMINATES_PROPERLY,
        )


def compare(u: tuple, v: tuple) -> DominationRelation:
    """Classify the domination relation between two objective vectors."""
    if len(u) != len(v):
        raise ContractViolationError(f"objective length mismatch: {len(u)} vs {len(v)}")
    any_greater = False
    any_less = False
    for a, b in zip(u, v):
        if a > b:
            any_greater = True
        elif a < b:
            any_less = True
    if any_greater and any_less:
        return DominationRelation.INCOMPARABLE
    if any_greater:
        return DominationRelation.STRICTLY_DOMINATES
    if any_less:
        return DominationRelation.IS_STRICTLY_DOMINATED
    return DominationRelation.EQUAL


def strictly_dominates(u: tuple, v: tuple) -> bool:
    return compare(u, v).strictly_dominates


def uniform_bitstring(n: int, rng: RngStream) -> BitString:
    """Uniform random bitstring; bit i is 1 iff the i-th unit draw is < 1/2."""
    if n < 1:
        raise ContractViolationError(f"bitstring length must be >= 1, got {n}")
    units = rng.unit(n)
    return BitString.from_array((units < 0.5).astype(np.uint8))


def mutate(x: BitString, rng: RngStream) -> BitString:
    """Standard bit mutation: flip each bit independently with probability 1/n.

    Consumes exactly ``n`` draws, in bit order; ``x`` is unmodified.
    """
    n = len(x)
    units = rng.unit(n)
    flips = (units < 1.0 / n).astype(np.uint8)
    return BitString.from_array(np.bitwise_xor(x.to_array(), flips))
