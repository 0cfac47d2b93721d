"""Numpy fallback for the hot scan kernels.

Both backends take the same inputs: the function values f (uint8, 2^m),
per-subspace span points `spans` (M x 2^k uint16), per-subspace coset
representatives `reps` (M x C uint16) and an affinity lookup table over
2^(2^k) restriction patterns.  Results are bit-identical to the compiled
extension.
"""

from __future__ import annotations

import numpy as np

_CHUNK_ELEMS = 1 << 22


def _patterns(f: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Pack f values at `pts` (..., S) into pattern ints."""
    s = pts.shape[-1]
    weights = (1 << np.arange(s, dtype=np.uint32))
    return (f[pts].astype(np.uint32) * weights).sum(axis=-1)


def coset_affine_bits(
    f: np.ndarray, spans: np.ndarray, reps: np.ndarray, lut: np.ndarray
) -> np.ndarray:
    """For each (subspace, coset) flag whether f restricted there is affine."""
    m_rows, s = spans.shape
    c = reps.shape[1]
    out = np.empty((m_rows, c), dtype=np.uint8)
    chunk = max(1, _CHUNK_ELEMS // (c * s))
    for lo in range(0, m_rows, chunk):
        hi = min(lo + chunk, m_rows)
        pts = reps[lo:hi, :, None] ^ spans[lo:hi, None, :]
        out[lo:hi] = lut[_patterns(f, pts)]
    return out


def coset_affine_all(
    f: np.ndarray, spans: np.ndarray, reps: np.ndarray, lut: np.ndarray
) -> np.ndarray:
    """Flag subspaces on which f is affine on every coset.

    Filters on the first coset (always the subspace itself) before checking
    survivors in full; most rows fail immediately for bent inputs.
    """
    m_rows = spans.shape[0]
    out = np.zeros(m_rows, dtype=np.uint8)
    first = lut[_patterns(f, reps[:, 0:1, None] ^ spans[:, None, :])].reshape(m_rows)
    for i in np.nonzero(first)[0]:
        pts = reps[i][:, None] ^ spans[i][None, :]
        if lut[_patterns(f, pts)].all():
            out[i] = 1
    return out
