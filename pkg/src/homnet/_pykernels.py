"""Pure NumPy implementations of the hot kernels.

Fallback backend used when the compiled extension (``homnet._ckernels``)
is unavailable or disabled via ``HOMNET_PURE_PYTHON=1``.  Semantics,
including tie-breaking, must match the compiled versions exactly.
"""

from __future__ import annotations

import numpy as np


def pairwise_sqdist(x: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances between all row pairs of ``x``.

    Returns a symmetric (n, n) float64 matrix with a zero diagonal.
    Computed from explicit coordinate differences (not the expanded
    dot-product identity) so small distances keep full precision.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    diff = x[:, None, :] - x[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, 0.0)
    return d2


def ward_chain(d2: np.ndarray, sizes: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nearest-neighbour-chain agglomeration with the Ward update rule.

    ``d2`` is the squared-distance matrix between current clusters and
    ``sizes`` the per-slot cluster sizes; both are mutated in place.
    Returns ``(left, right, sq_height)`` arrays in merge order, where
    left/right are slot indices (a merged cluster keeps the lower slot).
    Ties in the nearest-neighbour scan resolve to the lowest slot index.
    """
    n = d2.shape[0]
    merge_a = np.empty(n - 1, dtype=np.int64)
    merge_b = np.empty(n - 1, dtype=np.int64)
    merge_d2 = np.empty(n - 1, dtype=np.float64)
    chain = np.empty(n, dtype=np.int64)
    chain_len = 0
    idx = np.arange(n)

    for t in range(n - 1):
        if chain_len == 0:
            chain[0] = idx[sizes > 0][0]
            chain_len = 1
        while True:
            x = chain[chain_len - 1]
            row = np.where((sizes > 0) & (idx != x), d2[x], np.inf)
            y = int(np.argmin(row))
            best = row[y]
            # prefer the previous chain element on exact ties
            if chain_len > 1 and d2[x, chain[chain_len - 2]] <= best:
                y = int(chain[chain_len - 2])
            if chain_len > 1 and y == chain[chain_len - 2]:
                dmin = d2[x, y]
                break
            chain[chain_len] = y
            chain_len += 1
        chain_len -= 2

        lo, hi = (x, y) if x < y else (y, x)
        merge_a[t] = lo
        merge_b[t] = hi
        merge_d2[t] = dmin

        size_lo = sizes[lo]
        size_hi = sizes[hi]
        total = size_lo + size_hi
        active = (sizes > 0) & (idx != lo) & (idx != hi)
        nk = sizes[active]
        new_d2 = ((nk + size_lo) * d2[active, lo] + (nk + size_hi) * d2[active, hi] - nk * dmin) / (nk + total)
        d2[active, lo] = new_d2
        d2[lo, active] = new_d2
        sizes[lo] = total
        sizes[hi] = 0
    return merge_a, merge_b, merge_d2


def group_sums(dmat: np.ndarray, labels: np.ndarray, n_groups: int) -> np.ndarray:
    """Per-node sums of distances into each group: S[i, g] = sum of D[i, j] over j with label g."""
    n = dmat.shape[0]
    onehot = np.zeros((n, n_groups), dtype=np.float64)
    onehot[np.arange(n), labels] = 1.0
    return dmat @ onehot


def percolation_depths(
    indptr: np.ndarray,
    indices: np.ndarray,
    open_mask: np.ndarray,
    seeds: np.ndarray,
    n_nodes: int,
    max_steps: int,
) -> np.ndarray:
    """First-arrival BFS depth from ``seeds`` over the open edges of a CSR graph.

    ``open_mask`` flags which CSR entries conduct in this realisation.
    Returns int64 depths, -1 for nodes never reached; expansion stops
    after ``max_steps`` levels.
    """
    depth = np.full(n_nodes, -1, dtype=np.int64)
    depth[seeds] = 0
    frontier = np.unique(seeds)
    level = 0
    while frontier.size and level < max_steps:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        offsets = np.repeat(np.cumsum(counts) - counts, counts)
        edge_ids = np.arange(total) - offsets + np.repeat(starts, counts)
        targets = indices[edge_ids[open_mask[edge_ids] != 0]]
        fresh = np.unique(targets[depth[targets] < 0])
        depth[fresh] = level + 1
        frontier = fresh
        level += 1
    return depth
