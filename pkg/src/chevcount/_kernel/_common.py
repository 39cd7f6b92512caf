"""Shared plumbing for the J-reduced enumeration backends.

Both backends walk the same canonical spanning tree of the set of minimal
coset representatives of W_J \\ W: the parent of w is w s_i where i is the
smallest right descent of w, so every element is visited exactly once with
no deduplication state.  Elements are emitted in chunks of numpy arrays.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np

# count: elements in this chunk
# lengths: uint8[count]
# bits: uint64[count, nw], little-endian packed inversion sets
# words_flat/offsets: uint8 buffer of reduced words, uint32[count+1] offsets
#   (None when words were not requested)
Chunk = namedtuple("Chunk", "count lengths bits words_flat offsets")


def sperm_array(rs) -> np.ndarray:
    """Simple reflection permutations as one int32 matrix (rank, 2N)."""
    arr = getattr(rs, "_sperm_np", None)
    if arr is None:
        arr = np.ascontiguousarray(np.array(rs.simple_perms, dtype=np.int32))
        rs._sperm_np = arr
    return arr


def mask_words(psi_mask, nw: int) -> np.ndarray:
    """Accept a python int bitmask or an array; return uint64[nw]."""
    out = np.zeros(nw, dtype=np.uint64)
    if psi_mask is None:
        return out
    if isinstance(psi_mask, int):
        m = psi_mask
        for w in range(nw):
            out[w] = m & 0xFFFFFFFFFFFFFFFF
            m >>= 64
        if m:
            raise ValueError("psi_mask has bits beyond the root count")
        return out
    arr = np.asarray(psi_mask, dtype=np.uint64)
    out[: len(arr)] = arr
    return out


class QuotientRun:
    """Iterator over emitted chunks plus whole-stream statistics.

    histogram[l] counts every J-reduced element of length l, whether or not
    it passed the psi filter; it is complete only after exhaustion.
    """

    def __init__(self, gen_factory, maxlen: int):
        self.histogram = np.zeros(maxlen + 1, dtype=np.int64)
        self.emitted = 0
        self.exhausted = False
        self._gen = gen_factory(self)

    @property
    def total(self) -> int:
        return int(self.histogram.sum())

    def __iter__(self):
        return self._gen

    def drain(self) -> "QuotientRun":
        for _ in self._gen:
            pass
        return self


def max_quotient_length(rs, J) -> int:
    """Length of the longest J-reduced element: |Phi+| - |Phi_J+|."""
    return rs.n_pos - len(rs.phi_j_positive(J))
