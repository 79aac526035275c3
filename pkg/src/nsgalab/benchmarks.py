"""The OneMinMax / LeadingOnesTrailingZeros / OneJumpZeroJump families.

Bi-objective definitions (maximization, ``z``/``o`` = number of 0s/1s):

* ``omm``:   ``x -> (z, o)``.
* ``lotz``:  ``x -> (longest prefix of 1s, longest suffix of 0s)``.
* ``ojzj``:  ``x -> (J1, J0)`` with gap parameter ``k``, where
  ``Ji = k + |x|_i`` if ``|x|_i in [0..n-k] or |x|_i == n`` and
  ``Ji = n - |x|_i`` otherwise.

The ``*-m`` variants lift a bi-objective function to an even number ``m >= 4``
of objectives by splitting the string into ``m/2`` equal blocks and applying
the bi-objective function per block.  ``omm3`` is the 3-objective OneMinMax:
(zeros overall, ones in the first half, ones in the second half), ``n`` even.

Benchmark names used on the CLI and in CSV files are exactly:
``omm``, ``lotz``, ``ojzj``, ``omm-m``, ``lotz-m``, ``ojzj-m``, ``omm3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import BitString, ObjectiveVector, strictly_dominates
from .errors import ConfigurationError, ContractViolationError, EnumerationBudgetError

BENCHMARK_NAMES = ("omm", "lotz", "ojzj", "omm-m", "lotz-m", "ojzj-m", "omm3")

_BRUTE_FORCE_MAX_N = 24


@dataclass(frozen=True)
class BenchmarkSpec:
    """Validated benchmark configuration.

    ``blocks`` is the number of bi-objective blocks (1 for the bi-objective
    functions) and ``n_block`` the per-block length.  Validation happens here,
    at construction; ``evaluate`` assumes a valid spec.
    """

    name: str
    n: int
    m: int
    k: int | None
    blocks: int
    n_block: int

    @property
    def family(self) -> str:
        """Base family: ``omm``, ``lotz``, or ``ojzj``."""
        return "omm" if self.name == "omm3" else self.name.split("-")[0]

    @property
    def is_three_objective(self) -> bool:
        return self.name == "omm3"

    @staticmethod
    def create(name: str, n: int, m: int | None = None, k: int | None = None) -> "BenchmarkSpec":
        if name not in BENCHMARK_NAMES:
            raise ConfigurationError(f"unknown benchmark {name!r}; expected one of {BENCHMARK_NAMES}")
        n = int(n)
        if n < 1:
            raise ConfigurationError(f"problem size must be >= 1, got {n}")
        family = "omm" if name == "omm3" else name.split("-")[0]

        if name == "omm3":
            if m not in (None, 3):
                raise ConfigurationError("omm3 has exactly 3 objectives")
            if n % 2 != 0:
                raise ConfigurationError(f"omm3 requires even n, got {n}")
            m_val, blocks, n_block = 3, 1, n
        elif name.endswith("-m"):
            if m is None:
                raise ConfigurationError(f"{name} requires an explicit objective count m")
            m = int(m)
            if m < 4 or m % 2 != 0:
                raise ConfigurationError(f"{name} requires an even m >= 4, got {m}")
            blocks = m // 2
            if n % blocks != 0:
                raise ConfigurationError(f"number of blocks {blocks} must divide n={n}")
            m_val, n_block = m, n // blocks
        else:
            if m not in (None, 2):
                raise ConfigurationError(f"{name} is bi-objective")
            m_val, blocks, n_block = 2, 1, n

        if family == "ojzj":
            if k is None:
                raise ConfigurationError(f"{name} requires the gap parameter k")
            k = int(k)
            if not 2 <= k <= n_block // 2:
                raise ConfigurationError(
                    f"ojzj gap parameter must satisfy 2 <= k <= {n_block // 2} "
                    f"(block length {n_block}), got {k}"
                )
        elif k is not None:
            raise ConfigurationError(f"{name} takes no gap parameter")

        return BenchmarkSpec(name=name, n=n, m=m_val, k=k, blocks=blocks, n_block=n_block)


def _eval_block_omm(bits: bytes, lo: int, hi: int) -> tuple[int, int]:
    ones = sum(bits[lo:hi])
    return (hi - lo - ones, ones)


def _eval_block_lotz(bits: bytes, lo: int, hi: int) -> tuple[int, int]:
    leading = 0
    for i in range(lo, hi):
        if bits[i] != 1:
            break
        leading += 1
    trailing = 0
    for i in range(hi - 1, lo - 1, -1):
        if bits[i] != 0:
            break
        trailing += 1
    return (leading, trailing)


def _jump(count: int, n: int, k: int) -> int:
    return k + count if (count <= n - k or count == n) else n - count


def _eval_block_ojzj(bits: bytes, lo: int, hi: int, k: int) -> tuple[int, int]:
    nb = hi - lo
    ones = sum(bits[lo:hi])
    return (_jump(ones, nb, k), _jump(nb - ones, nb, k))


def evaluate(spec: BenchmarkSpec, x: BitString) -> ObjectiveVector:
    """Objective value of ``x`` under ``spec`` (scalar path)."""
    if len(x) != spec.n:
        raise ContractViolationError(f"bitstring length {len(x)} does not match spec n {spec.n}")
    bits = x.bits
    if spec.is_three_objective:
        half = spec.n // 2
        ones_lo = sum(bits[:half])
        ones_hi = sum(bits[half:])
        return ObjectiveVector((spec.n - ones_lo - ones_hi, ones_lo, ones_hi))
    out: list[int] = []
    for b in range(spec.blocks):
        lo, hi = b * spec.n_block, (b + 1) * spec.n_block
        if spec.family == "omm":
            out.extend(_eval_block_omm(bits, lo, hi))
        elif spec.family == "lotz":
            out.extend(_eval_block_lotz(bits, lo, hi))
        else:
            out.extend(_eval_block_ojzj(bits, lo, hi, spec.k))
    return ObjectiveVector(out)


def evaluate_matrix(spec: BenchmarkSpec, bits: np.ndarray) -> np.ndarray:
    """Vectorized evaluation of a ``(rows, n)`` uint8 bit matrix -> ``(rows, m)`` int64."""
    if bits.ndim != 2 or bits.shape[1] != spec.n:
        raise ContractViolationError(f"bit matrix must have shape (rows, {spec.n})")
    rows = bits.shape[0]
    if spec.is_three_objective:
        half = spec.n // 2
        ones_lo = bits[:, :half].sum(axis=1, dtype=np.int64)
        ones_hi = bits[:, half:].sum(axis=1, dtype=np.int64)
        return np.stack([spec.n - ones_lo - ones_hi, ones_lo, ones_hi], axis=1)
    blk = bits.reshape(rows, spec.blocks, spec.n_block)
    out = np.empty((rows, spec.blocks, 2), dtype=np.int64)
    if spec.family == "omm":
        ones = blk.sum(axis=2, dtype=np.int64)
        out[:, :, 0] = spec.n_block - ones
        out[:, :, 1] = ones
    elif spec.family == "lotz":
        b64 = blk.astype(np.int64)
        out[:, :, 0] = np.cumprod(b64, axis=2).sum(axis=2)
        out[:, :, 1] = np.cumprod(1 - b64[:, :, ::-1], axis=2).sum(axis=2)
    else:
        nb, k = spec.n_block, spec.k
        ones = blk.sum(axis=2, dtype=np.int64)
        zeros = nb - ones
        out[:, :, 0] = np.where((ones <= nb - k) | (ones == nb), k + ones, nb - ones)
        out[:, :, 1] = np.where((zeros <= nb - k) | (zeros == nb), k + zeros, nb - zeros)
    return out.reshape(rows, spec.m)


class ParetoFront:
    """Exact Pareto front: sorted value sequence plus a hash set for O(1) membership."""

    def __init__(self, values: Iterator[tuple]):
        self.values: tuple[ObjectiveVector, ...] = tuple(
            sorted(ObjectiveVector(v) for v in values)
        )
        self.value_set: frozenset = frozenset(self.values)

    def __contains__(self, value) -> bool:
        return tuple(value) in self.value_set

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParetoFront):
            return self.value_set == other.value_set
        return NotImplemented

    def __hash__(self):
        return hash(self.value_set)


def _block_front_values(spec: BenchmarkSpec) -> list[tuple[int, int]]:
    nb = spec.n_block
    if spec.family in ("omm", "lotz"):
        return [(i, nb - i) for i in range(nb + 1)]
    k = spec.k
    support = [k] + list(range(2 * k, nb + 1)) + [nb + k]
    return [(a, nb + 2 * k - a) for a in support]


@lru_cache(maxsize=None)
def pareto_front(spec: BenchmarkSpec) -> ParetoFront:
    """Closed-form Pareto front of ``spec``."""
    if spec.is_three_objective:
        half = spec.n // 2
        return ParetoFront(
            (spec.n - v2 - v3, v2, v3) for v2 in range(half + 1) for v3 in range(half + 1)
        )
    block_values = _block_front_values(spec)
    return ParetoFront(
        tuple(itertools.chain.from_iterable(combo))
        for combo in itertools.product(block_values, repeat=spec.blocks)
    )


def front_size(spec: BenchmarkSpec) -> int:
    """Closed-form Pareto front size M."""
    if spec.is_three_objective:
        return (spec.n // 2 + 1) ** 2
    if spec.family in ("omm", "lotz"):
        return (spec.n_block + 1) ** spec.blocks
    return (spec.n_block - 2 * spec.k + 3) ** spec.blocks


def _block_front_index(spec: BenchmarkSpec, v1: int, v2: int) -> int:
    """Index of a per-block objective pair on the block front, or -1."""
    nb = spec.n_block
    if spec.family == "omm":
        return v1  # every block value lies on the block front
    if spec.family == "lotz":
        return v1 if v1 + v2 == nb else -1
    k = spec.k
    if v1 + v2 != nb + 2 * k:
        return -1
    if v1 == k:
        return 0
    if 2 * k <= v1 <= nb:
        return v1 - 2 * k + 1
    if v1 == nb + k:
        return nb - 2 * k + 2
    return -1


def front_value_index(spec: BenchmarkSpec, value: tuple) -> int:
    """Map an objective value to a distinct slot in ``[0, front_size)``, or -1.

    This is the closed-form device the run engines use for coverage tracking;
    it is a bijection from the Pareto front onto ``[0, M)``.
    """
    if spec.is_three_objective:
        return value[1] * (spec.n // 2 + 1) + value[2]
    if spec.family in ("omm", "lotz"):
        base = spec.n_block + 1
    else:
        base = spec.n_block - 2 * spec.k + 3
    idx = 0
    for b in range(spec.blocks):
        bi = _block_front_index(spec, value[2 * b], value[2 * b + 1])
        if bi < 0:
            return -1
        idx = idx * base + bi
    return idx


def _nondominated(values: set[tuple]) -> set[tuple]:
    out = set()
    vals = list(values)
    for v in vals:
        if not any(strictly_dominates(u, v) for u in vals):
            out.add(ObjectiveVector(v))
    return out


def pareto_front_bruteforce(spec: BenchmarkSpec) -> set[ObjectiveVector]:
    """Pareto front by full enumeration of {0,1}^n; test oracle only."""
    if spec.n > _BRUTE_FORCE_MAX_N:
        raise EnumerationBudgetError(
            f"refusing to enumerate 2^{spec.n} bitstrings (limit 2^{_BRUTE_FORCE_MAX_N})"
        )
    seen: set[tuple] = set()
    for packed in range(2**spec.n):
        bits = BitString((packed >> i) & 1 for i in range(spec.n))
        seen.add(tuple(evaluate(spec, bits)))
    return _nondominated(seen)


def all_objective_values(spec: BenchmarkSpec) -> set[ObjectiveVector]:
    """All achievable objective values by full enumeration; test oracle only."""
    if spec.n > _BRUTE_FORCE_MAX_N:
        raise EnumerationBudgetError(
            f"refusing to enumerate 2^{spec.n} bitstrings (limit 2^{_BRUTE_FORCE_MAX_N})"
        )
    return {
        ObjectiveVector(evaluate(spec, BitString((packed >> i) & 1 for i in range(spec.n))))
        for packed in range(2**spec.n)
    }
