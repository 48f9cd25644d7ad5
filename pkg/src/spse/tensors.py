"""Tensor containers shared by the oracle, the approximate counter, and the CLI.

All three tensor types are (n, n, K) stacks. Axis 2 is the path length minus
one: ``counts[i, j, k - 1]`` holds the value for length k, so a K=6 profile for
a pair reads as the lengths 1..6 in order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

U64_MAX = 2**64 - 1


def _check_stack(name: str, arr: np.ndarray, n: int, k_max: int, dtype: type) -> None:
    if arr.shape != (n, n, k_max):
        raise InputError(f"{name} must have shape ({n}, {n}, {k_max}), got {arr.shape}")
    if arr.dtype != np.dtype(dtype):
        raise InputError(f"{name} must have dtype {np.dtype(dtype)}, got {arr.dtype}")


@dataclass(frozen=True)
class PathCountTensor:
    """Simple-path counts per pair and length; unsigned 64-bit, saturating.

    ``saturated`` is True when any entry was clamped at 2**64 - 1 during
    counting. Exact oracles never saturate under their node cap.
    """

    n: int
    k_max: int
    counts: np.ndarray
    saturated: bool = False

    def __post_init__(self) -> None:
        _check_stack("counts", self.counts, self.n, self.k_max, np.uint64)

    def pair_profile(self, i: int, j: int) -> np.ndarray:
        """Counts for lengths 1..k_max between i and j."""
        return np.array(self.counts[i, j, :])

    def length_slice(self, k: int) -> np.ndarray:
        """The n x n matrix of length-k counts (k is 1-based)."""
        if not (1 <= k <= self.k_max):
            raise InputError(f"length {k} outside 1..{self.k_max}")
        return np.array(self.counts[:, :, k - 1])


@dataclass(frozen=True)
class RwTensor:
    """Random-walk landing probabilities: slice k-1 is (D^-1 A)^k."""

    n: int
    k_max: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        _check_stack("probs", self.probs, self.n, self.k_max, np.float64)

    def pair_profile(self, i: int, j: int) -> np.ndarray:
        return np.array(self.probs[i, j, :])


@dataclass(frozen=True)
class EncodedTensor:
    """Double-precision structural-encoding values (log-mapped counts)."""

    n: int
    k_max: int
    values: np.ndarray

    def __post_init__(self) -> None:
        _check_stack("values", self.values, self.n, self.k_max, np.float64)
