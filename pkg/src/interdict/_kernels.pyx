# Compiled max-plus folds. Semantics and tie-breaking must match _kernels_py.
import numpy as np

from libc.math cimport INFINITY


def maxplus_fold(const double[::1] acc, const double[::1] items):
    """out[c] = max_{0<=j<=c} acc[c-j] + items[j]; arg[c] = first maximizing j."""
    cdef Py_ssize_t L = acc.shape[0]
    cdef Py_ssize_t c, j
    cdef double best, cand
    cdef long long bj
    if items.shape[0] != L:
        raise ValueError("acc and items must have equal length")
    out_arr = np.empty(L, dtype=np.float64)
    arg_arr = np.zeros(L, dtype=np.int64)
    cdef double[::1] out = out_arr
    cdef long long[::1] arg = arg_arr
    for c in range(L):
        best = -INFINITY
        bj = 0
        for j in range(c + 1):
            cand = acc[c - j] + items[j]
            if cand > best:
                best = cand
                bj = j
        out[c] = best
        arg[c] = bj
    return out_arr, arg_arr


def cmckp_fold(const double[::1] a0, const double[::1] a1,
               const double[::1] plain, const double[::1] prop):
    """One bucket of the constrained fold.

    o0[c] = max_j a0[c-j] + plain[j]
    o1[c] = max over j of (a1[c-j] + plain[j], a1[c-j] + prop[j], a0[c-j] + prop[j])
    src1 records which of the three candidates won (0, 1, 2).
    """
    cdef Py_ssize_t L = a0.shape[0]
    cdef Py_ssize_t c, j
    cdef double b0, b1, cand
    cdef long long j0, j1, s1
    if a1.shape[0] != L or plain.shape[0] != L or prop.shape[0] != L:
        raise ValueError("all arrays must have equal length")
    o0_arr = np.empty(L, dtype=np.float64)
    o1_arr = np.empty(L, dtype=np.float64)
    arg0_arr = np.zeros(L, dtype=np.int64)
    arg1_arr = np.zeros(L, dtype=np.int64)
    src1_arr = np.zeros(L, dtype=np.int64)
    cdef double[::1] o0 = o0_arr
    cdef double[::1] o1 = o1_arr
    cdef long long[::1] arg0 = arg0_arr
    cdef long long[::1] arg1 = arg1_arr
    cdef long long[::1] src1 = src1_arr
    for c in range(L):
        b0 = -INFINITY
        b1 = -INFINITY
        j0 = 0
        j1 = 0
        s1 = 0
        for j in range(c + 1):
            cand = a0[c - j] + plain[j]
            if cand > b0:
                b0 = cand
                j0 = j
            cand = a1[c - j] + plain[j]
            if cand > b1:
                b1 = cand
                j1 = j
                s1 = 0
            cand = a1[c - j] + prop[j]
            if cand > b1:
                b1 = cand
                j1 = j
                s1 = 1
            cand = a0[c - j] + prop[j]
            if cand > b1:
                b1 = cand
                j1 = j
                s1 = 2
        o0[c] = b0
        o1[c] = b1
        arg0[c] = j0
        arg1[c] = j1
        src1[c] = s1
    return o0_arr, o1_arr, arg0_arr, arg1_arr, src1_arr
