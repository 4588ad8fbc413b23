"""Numpy implementations of the max-plus folds.

Candidates are scanned in the same order as the compiled kernels and only
strict improvements are taken, so both backends return identical arrays.
"""
import numpy as np


def maxplus_fold(acc, items):
    acc = np.asarray(acc, dtype=np.float64)
    items = np.asarray(items, dtype=np.float64)
    L = acc.shape[0]
    if items.shape[0] != L:
        raise ValueError("acc and items must have equal length")
    out = np.full(L, -np.inf)
    arg = np.zeros(L, dtype=np.int64)
    for j in range(L):
        cand = acc[: L - j] + items[j]
        view = out[j:]
        better = cand > view
        view[better] = cand[better]
        arg[j:][better] = j
    return out, arg


def cmckp_fold(a0, a1, plain, prop):
    a0 = np.asarray(a0, dtype=np.float64)
    a1 = np.asarray(a1, dtype=np.float64)
    plain = np.asarray(plain, dtype=np.float64)
    prop = np.asarray(prop, dtype=np.float64)
    L = a0.shape[0]
    if a1.shape[0] != L or plain.shape[0] != L or prop.shape[0] != L:
        raise ValueError("all arrays must have equal length")
    o0 = np.full(L, -np.inf)
    o1 = np.full(L, -np.inf)
    arg0 = np.zeros(L, dtype=np.int64)
    arg1 = np.zeros(L, dtype=np.int64)
    src1 = np.zeros(L, dtype=np.int64)
    for j in range(L):
        head0 = a0[: L - j]
        head1 = a1[: L - j]
        # per capacity c=j..L-1 the scan order is (a0+plain | a1+plain, a1+prop, a0+prop)
        cand = head0 + plain[j]
        v = o0[j:]
        better = cand > v
        v[better] = cand[better]
        arg0[j:][better] = j
        v1 = o1[j:]
        for src, cand in ((0, head1 + plain[j]), (1, head1 + prop[j]), (2, head0 + prop[j])):
            better = cand > v1
            v1[better] = cand[better]
            arg1[j:][better] = j
            src1[j:][better] = src
    return o0, o1, arg0, arg1, src1
