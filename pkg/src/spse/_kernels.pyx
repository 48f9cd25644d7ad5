# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: saturating u64 matrix powers and the exact-count DP.

Both functions mirror the numpy fallbacks in spse.kernels bit for bit,
including saturation behavior; the test suite asserts parity.
"""

import numpy as np

cimport numpy as cnp

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 U64_MAX = <u64> 0xFFFFFFFFFFFFFFFFULL


cdef bint _sat_mul_step(u64[:, ::1] a, i64[::1] row_ptr, i64[::1] col_idx,
                        u64[:, ::1] out, bint* sat, Py_ssize_t n) noexcept nogil:
    # out += a @ tri where tri is the 0/1 matrix behind (row_ptr, col_idx).
    # out must arrive zeroed. Sums clamp stickily at U64_MAX.
    cdef Py_ssize_t i, m, idx, j
    cdef u64 av, cv
    cdef bint any_write = False
    for i in range(n):
        for m in range(n):
            av = a[i, m]
            if av == 0:
                continue
            for idx in range(row_ptr[m], row_ptr[m + 1]):
                j = col_idx[idx]
                cv = out[i, j]
                if cv > U64_MAX - av:
                    out[i, j] = U64_MAX
                    sat[0] = True
                else:
                    out[i, j] = cv + av
                any_write = True
    return any_write


def power_stack(cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] tri, int k_cap):
    """Successive saturating powers of a strictly upper-triangular 0/1 matrix.

    Returns (stack, k_eff, saturated); stack[k-1] holds tri**k as uint64 with
    entries clamped at 2**64 - 1, and slices at index >= k_eff are zero.
    """
    cdef Py_ssize_t n = tri.shape[0]
    out_np = np.zeros((k_cap, n, n), dtype=np.uint64)
    if k_cap == 0 or n == 0:
        return out_np, 0, False
    rows, cols = np.nonzero(tri)
    if rows.size == 0:
        return out_np, 0, False
    counts = np.bincount(rows, minlength=n)
    row_ptr_np = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=row_ptr_np[1:])
    col_idx_np = cols.astype(np.int64)

    out_np[0] = tri.astype(np.uint64)
    cdef u64[:, :, ::1] out = out_np
    cdef i64[::1] row_ptr = row_ptr_np
    cdef i64[::1] col_idx = col_idx_np
    cdef bint sat = False
    cdef bint alive
    cdef int k
    cdef int k_eff = 1
    for k in range(1, k_cap):
        with nogil:
            alive = _sat_mul_step(out[k - 1], row_ptr, col_idx, out[k], &sat, n)
        if not alive:
            break
        k_eff = k + 1
    return out_np, k_eff, bool(sat)


def exact_counts(cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] adj,
                 cnp.ndarray[cnp.int64_t, ndim=1] starts, int k_max):
    """Simple-path counts from each start node by a bitmask visited-set DP.

    result[s_idx, v, k-1] is the number of length-k simple paths from
    starts[s_idx] to v. Intended for small n (the DP table is 2**n by n).
    """
    cdef Py_ssize_t n = adj.shape[0]
    cdef Py_ssize_t n_starts = starts.shape[0]
    result_np = np.zeros((n_starts, n, k_max), dtype=np.uint64)
    if n == 0 or n_starts == 0 or k_max == 0:
        return result_np
    if n > 25:
        raise MemoryError("DP table for n > 25 would not fit in memory")

    cdef Py_ssize_t full = (<Py_ssize_t> 1) << n
    popcnt_np = np.zeros(full, dtype=np.uint8)
    cdef Py_ssize_t b
    for b in range(n):
        popcnt_np[(1 << b):(1 << (b + 1))] = popcnt_np[: (1 << b)] + 1

    nbr_counts = adj.sum(axis=1, dtype=np.int64)
    row_ptr_np = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(nbr_counts, out=row_ptr_np[1:])
    col_idx_np = np.nonzero(adj)[1].astype(np.int64)

    table_np = np.zeros((full, n), dtype=np.uint64)

    cdef u64[:, :, ::1] result = result_np
    cdef u64[:, ::1] table = table_np
    cdef cnp.uint8_t[::1] popcnt = popcnt_np
    cdef i64[::1] row_ptr = row_ptr_np
    cdef i64[::1] col_idx = col_idx_np
    cdef i64[::1] starts_v = starts

    cdef Py_ssize_t si, s, mask, sub, u, idx, pc_cap
    cdef int pc
    cdef u64 acc
    pc_cap = k_max + 1
    if pc_cap > n:
        pc_cap = n

    for si in range(n_starts):
        s = starts_v[si]
        if si > 0:
            table_np.fill(0)
        with nogil:
            table[(<Py_ssize_t> 1) << s, s] = 1
            for mask in range(full):
                if not (mask >> s) & 1:
                    continue
                pc = popcnt[mask]
                if pc < 2 or pc > pc_cap:
                    continue
                for u in range(n):
                    if u == s or not (mask >> u) & 1:
                        continue
                    sub = mask ^ ((<Py_ssize_t> 1) << u)
                    acc = 0
                    for idx in range(row_ptr[u], row_ptr[u + 1]):
                        acc += table[sub, col_idx[idx]]
                    if acc != 0:
                        table[mask, u] = acc
                        result[si, u, pc - 2] += acc
    return result_np
