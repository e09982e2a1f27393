# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; semantics mirror homnet._pykernels exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def pairwise_sqdist(double[:, ::1] x):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                acc = 0.0
                for k in range(d):
                    diff = x[i, k] - x[j, k]
                    acc += diff * diff
                o[i, j] = acc
                o[j, i] = acc
    return out


def ward_chain(double[:, ::1] d2, cnp.int64_t[::1] sizes):
    cdef Py_ssize_t n = d2.shape[0]
    merge_a = np.empty(n - 1, dtype=np.int64)
    merge_b = np.empty(n - 1, dtype=np.int64)
    merge_d2 = np.empty(n - 1, dtype=np.float64)
    chain_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] ma = merge_a
    cdef cnp.int64_t[::1] mb = merge_b
    cdef double[::1] md = merge_d2
    cdef cnp.int64_t[::1] chain = chain_arr
    cdef Py_ssize_t chain_len = 0
    cdef Py_ssize_t t, i, x, y, lo, hi
    cdef double mind, dmin, new_d2
    cdef cnp.int64_t size_lo, size_hi, total, nk

    with nogil:
        for t in range(n - 1):
            if chain_len == 0:
                for i in range(n):
                    if sizes[i] > 0:
                        chain[0] = i
                        break
                chain_len = 1
            while True:
                x = chain[chain_len - 1]
                if chain_len > 1:
                    y = chain[chain_len - 2]
                    mind = d2[x, y]
                else:
                    y = -1
                    mind = INFINITY
                for i in range(n):
                    if sizes[i] > 0 and i != x and d2[x, i] < mind:
                        mind = d2[x, i]
                        y = i
                if chain_len > 1 and y == chain[chain_len - 2]:
                    dmin = mind
                    break
                chain[chain_len] = y
                chain_len += 1
            chain_len -= 2

            if x < y:
                lo = x
                hi = y
            else:
                lo = y
                hi = x
            ma[t] = lo
            mb[t] = hi
            md[t] = dmin

            size_lo = sizes[lo]
            size_hi = sizes[hi]
            total = size_lo + size_hi
            for i in range(n):
                if sizes[i] > 0 and i != lo and i != hi:
                    nk = sizes[i]
                    new_d2 = ((nk + size_lo) * d2[i, lo] + (nk + size_hi) * d2[i, hi] - nk * dmin) / (nk + total)
                    d2[i, lo] = new_d2
                    d2[lo, i] = new_d2
            sizes[lo] = total
            sizes[hi] = 0
    return merge_a, merge_b, merge_d2


def group_sums(double[:, ::1] dmat, cnp.int64_t[::1] labels, Py_ssize_t n_groups):
    cdef Py_ssize_t n = dmat.shape[0]
    out = np.zeros((n, n_groups), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(n):
                o[i, labels[j]] += dmat[i, j]
    return out


def percolation_depths(
    cnp.int64_t[::1] indptr,
    cnp.int64_t[::1] indices,
    cnp.uint8_t[::1] open_mask,
    cnp.int64_t[::1] seeds,
    Py_ssize_t n_nodes,
    cnp.int64_t max_steps,
):
    depth_arr = np.full(n_nodes, -1, dtype=np.int64)
    cur_arr = np.empty(n_nodes, dtype=np.int64)
    nxt_arr = np.empty(n_nodes, dtype=np.int64)
    cdef cnp.int64_t[::1] depth = depth_arr
    cdef cnp.int64_t[::1] cur = cur_arr
    cdef cnp.int64_t[::1] nxt = nxt_arr
    cdef Py_ssize_t n_cur = 0, n_nxt, i, e, s
    cdef cnp.int64_t level = 0, j

    with nogil:
        for i in range(seeds.shape[0]):
            s = seeds[i]
            if depth[s] < 0:
                depth[s] = 0
                cur[n_cur] = s
                n_cur += 1
        while n_cur > 0 and level < max_steps:
            n_nxt = 0
            for i in range(n_cur):
                s = cur[i]
                for e in range(indptr[s], indptr[s + 1]):
                    if open_mask[e] != 0:
                        j = indices[e]
                        if depth[j] < 0:
                            depth[j] = level + 1
                            nxt[n_nxt] = j
                            n_nxt += 1
            for i in range(n_nxt):
                cur[i] = nxt[i]
            n_cur = n_nxt
            level += 1
    return depth_arr
