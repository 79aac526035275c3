"""Seeded random stream with a fixed draw discipline.

Every stochastic operation in this package draws from an :class:`RngStream`,
which wraps numpy's Philox4x64 counter-based bit generator.  Philox has a
documented, platform-independent output stream, so identical seeds yield
bit-identical runs everywhere.  All derived draws are defined in terms of raw
64-bit words so that the compiled kernel and the Python engine consume the
stream identically:

* ``unit``:       ``(u64 >> 11) * 2**-53`` -- a double in ``[0, 1)``.
* ``index(b)``:   ``floor(unit * b)`` -- one raw word per index.
* ``bernoulli(p)``: ``unit < p`` -- one raw word per trial.

Sampling without replacement is a forward Fisher-Yates pass consuming exactly
``k`` index draws for ``k`` sampled elements; a full shuffle is the ``k ==
len`` case.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

from .errors import ContractViolationError

_TWO_NEG_53 = 2.0**-53

T = TypeVar("T")


class RngStream:
    """Single-owner random stream for one trial.

    The stream is never shared between concurrent runs; each trial owns one.
    ``draws`` counts raw 64-bit words consumed through the Python-side
    methods (the compiled kernel consumes the same underlying stream but
    does not report into this counter).
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ContractViolationError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._bitgen = np.random.Philox(key=seed)
        self.draws = 0

    @property
    def bit_generator(self) -> np.random.Philox:
        """Underlying bit generator (handed to the compiled kernel)."""
        return self._bitgen

    def raw(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit words as a uint64 array."""
        self.draws += count
        return self._bitgen.random_raw(count)

    def next_raw(self) -> int:
        self.draws += 1
        return int(self._bitgen.random_raw())

    def next_unit(self) -> float:
        """One double in [0, 1)."""
        return (self.next_raw() >> 11) * _TWO_NEG_53

    def unit(self, count: int) -> np.ndarray:
        """``count`` doubles in [0, 1) as a float64 array."""
        return (self.raw(count) >> 11) * _TWO_NEG_53

    def next_index(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``; consumes one raw word."""
        if bound < 1:
            raise ContractViolationError(f"index bound must be >= 1, got {bound}")
        return int(self.next_unit() * bound)

    def next_bernoulli(self, p: float) -> bool:
        return self.next_unit() < p


def sample_without_replacement(items: Sequence[T], k: int, rng: RngStream) -> list[T]:
    """Uniform sample of ``k`` items, in draw order, consuming ``k`` draws.

    Forward Fisher-Yates: position ``i`` swaps with a uniform position in
    ``[i, len)``.  ``k == len(items)`` yields a full shuffle.
    """
    if not 0 <= k <= len(items):
        raise ContractViolationError(f"cannot sample {k} of {len(items)} items")
    arr = list(items)
    total = len(arr)
    for i in range(k):
        j = i + rng.next_index(total - i)
        arr[i], arr[j] = arr[j], arr[i]
    return arr[:k]


def shuffled(items: Sequence[T], rng: RngStream) -> list[T]:
    """Uniform permutation consuming exactly ``len(items)`` draws."""
    return sample_without_replacement(items, len(items), rng)


def splitmix64(z: int) -> int:
    """SplitMix64 finalizer; used to derive per-trial seeds."""
    z &= 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


_GOLDEN = 0x9E3779B97F4A7C15


def trial_seed(base_seed: int, config_index: int, trial_index: int) -> int:
    """Derive an independent 64-bit trial seed from a sweep's base seed."""
    z = splitmix64((base_seed + _GOLDEN * (config_index + 1)) & 0xFFFFFFFFFFFFFFFF)
    return splitmix64((z + _GOLDEN * (trial_index + 1)) & 0xFFFFFFFFFFFFFFFF)
