"""Numeric kernels with a compiled fast lane and a pure-numpy fallback.

The compiled lane is the Cython extension ``spse._kernels``. It is selected at
import time when present; setting ``SPSE_PURE_PYTHON=1`` forces the fallback.
Both lanes are bit-identical by contract, including saturation behavior and
the saturated flag, and the test suite asserts exactly that.

Saturating arithmetic note: all sums here have non-negative terms, so clamping
each partial sum at 2**64 - 1 (compiled lane) gives the same result as clamping
the exact total (fallback lane).
"""

from __future__ import annotations

import os

import numpy as np

U64_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)
_M32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)

_ext = None
if os.environ.get("SPSE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _ext  # type: ignore
    except ImportError:
        _ext = None

BACKEND = "compiled" if _ext is not None else "python"


def power_stack_python(tri: np.ndarray, k_cap: int) -> tuple[np.ndarray, int, bool]:
    """Successive saturating u64 powers of a strictly upper-triangular 0/1 matrix.

    Returns (stack, k_eff, saturated) where stack has shape (k_cap, n, n),
    stack[k-1] = tri**k with entries clamped at 2**64 - 1, and every slice at
    index >= k_eff is zero (the powers vanish by nilpotency).
    """
    n = tri.shape[0]
    out = np.zeros((k_cap, n, n), dtype=np.uint64)
    if k_cap == 0 or n == 0 or not tri.any():
        return out, 0, False
    b = tri.astype(np.uint64)
    out[0] = b
    cur = b
    saturated = False
    k_eff = 1
    safe_limit = (2**64 - 1) // n
    for k in range(1, k_cap):
        if int(cur.max()) <= safe_limit:
            # No entry of the product can overflow: one exact matmul.
            nxt = cur @ b
        else:
            # Split the left operand into 32-bit halves; the right operand is
            # 0/1 so each half-product stays far below 2**64.
            hi = cur >> _SHIFT32
            lo = cur & _M32
            s_hi = hi @ b
            s_lo = lo @ b
            high_part = (s_hi & _M32) << _SHIFT32
            sat = ((s_hi >> _SHIFT32) > 0) | (s_lo > U64_MAX - high_part)
            nxt = high_part + s_lo  # wraps only where sat is set
            if sat.any():
                saturated = True
                nxt = np.where(sat, U64_MAX, nxt)
        if not nxt.any():
            break
        out[k] = nxt
        cur = nxt
        k_eff = k + 1
    return out, k_eff, saturated


def exact_counts_python(
    adj: np.ndarray, starts: np.ndarray, k_max: int
) -> np.ndarray:
    """Simple-path counts from each start via a visited-set DP over bitmasks.

    ``adj`` is the (n, n) 0/1 uint8 adjacency matrix. The result has shape
    (len(starts), n, k_max) with result[s_idx, v, k-1] counting the length-k
    simple paths from starts[s_idx] to v.
    """
    n = adj.shape[0]
    n_starts = len(starts)
    result = np.zeros((n_starts, n, k_max), dtype=np.uint64)
    if n == 0 or n_starts == 0 or k_max == 0:
        return result
    full = 1 << n
    popcnt = np.zeros(full, dtype=np.uint8)
    for b in range(n):
        popcnt[(1 << b) : (1 << (b + 1))] = popcnt[: (1 << b)] + 1
    max_pc = min(n, k_max + 1)
    layer_masks = [np.flatnonzero(popcnt == c) for c in range(max_pc + 1)]
    nbrs = [np.flatnonzero(adj[u]) for u in range(n)]

    # Batch start nodes so the DP table stays within a memory budget.
    per_start_bytes = full * n * 8
    batch = max(1, int(2**27 // per_start_bytes))
    for lo in range(0, n_starts, batch):
        cols = range(lo, min(lo + batch, n_starts))
        width = len(cols)
        table = np.zeros((full, n, width), dtype=np.uint64)
        for off, si in enumerate(cols):
            table[1 << int(starts[si]), int(starts[si]), off] = 1
        for c in range(2, max_pc + 1):
            rows = layer_masks[c]
            for u in range(n):
                if nbrs[u].size == 0:
                    continue
                rows_t = rows[((rows >> u) & 1) == 1]
                if rows_t.size == 0:
                    continue
                rows_src = rows_t ^ (1 << u)
                gathered = table[rows_src[:, None], nbrs[u][None, :], :].sum(
                    axis=1, dtype=np.uint64
                )
                table[rows_t, u, :] = gathered
                result[lo : lo + width, u, c - 2] += gathered.sum(
                    axis=0, dtype=np.uint64
                )
    return result


def power_stack(tri: np.ndarray, k_cap: int) -> tuple[np.ndarray, int, bool]:
    tri = np.ascontiguousarray(tri, dtype=np.uint8)
    if _ext is not None:
        return _ext.power_stack(tri, k_cap)
    return power_stack_python(tri, k_cap)


def exact_counts(adj: np.ndarray, starts: np.ndarray, k_max: int) -> np.ndarray:
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    if _ext is not None:
        return _ext.exact_counts(adj, starts, k_max)
    return exact_counts_python(adj, starts, k_max)
