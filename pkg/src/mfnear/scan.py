"""Precomputed scan structures shared by the subspace kernels.

For a given (m, k) the arrays describe every k-dimensional linear subspace
of Z2^m: its 2^k span points and its 2^(m-k) canonical coset
representatives, in the canonical enumeration order of gf2.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .boolfun import all_affine_patterns
from .gf2 import coset_representatives, linear_subspace_bases

MAX_LUT_K = 4


@lru_cache(maxsize=None)
def affine_lut(k: int) -> np.ndarray:
    """uint8 table over all 2^(2^k) restriction patterns: 1 iff affine."""
    if not 0 <= k <= MAX_LUT_K:
        raise ValueError(f"pattern table supports k <= {MAX_LUT_K}")
    lut = np.zeros(1 << (1 << k), dtype=np.uint8)
    for p in all_affine_patterns(k):
        lut[p] = 1
    return lut


@lru_cache(maxsize=None)
def scan_arrays(m: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(spans, reps) uint16 arrays for all k-dim linear subspaces of Z2^m."""
    bases = linear_subspace_bases(m, k)
    rows = len(bases)
    base_mat = np.array(bases, dtype=np.uint16).reshape(rows, k)
    spans = np.zeros((rows, 1 << k), dtype=np.uint16)
    for eps in range(1, 1 << k):
        low = eps & -eps
        spans[:, eps] = spans[:, eps ^ low] ^ base_mat[:, low.bit_length() - 1]

    reps = np.zeros((rows, 1 << (m - k)), dtype=np.uint16)
    pivmask = [0] * rows
    for i, basis in enumerate(bases):
        pm = 0
        for b in basis:
            pm |= b & -b
        pivmask[i] = pm
    by_mask: dict[int, list[int]] = {}
    for i, pm in enumerate(pivmask):
        by_mask.setdefault(pm, []).append(i)
    for pm, idxs in by_mask.items():
        basis = bases[idxs[0]]
        row = np.array(coset_representatives(basis, m), dtype=np.uint16)
        reps[idxs] = row
    return spans, reps
