"""Pure-Python fallback for the J-reduced quotient walk.

Same traversal and chunk contract as the compiled backend, roughly an order
of magnitude slower; numpy handles the per-node permutation composition.
"""

from __future__ import annotations

import numpy as np

from ._common import Chunk, QuotientRun, mask_words, max_quotient_length, sperm_array

BACKEND = "pure"


def enumerate_quotient(rs, J, psi_mask=None, want_words: bool = True,
                       emit: bool = True, chunk_size: int = 65536) -> QuotientRun:
    J = tuple(sorted(set(J)))
    maxlen = max_quotient_length(rs, J)
    return QuotientRun(
        lambda run: _walk(run, rs, J, psi_mask, want_words, emit, chunk_size, maxlen),
        maxlen)


def _walk(run, rs, J, psi_mask, want_words, emit, chunk_size, maxlen):
    n = rs.n_pos
    n2 = 2 * n
    rank = rs.rank
    sperm = sperm_array(rs)
    nw = (n + 63) >> 6
    mask = mask_words(psi_mask, nw)
    use_mask = bool(mask.any())

    # DFS stacks; row d holds the element at depth d
    fwd = np.empty((maxlen + 1, n2), dtype=np.int32)
    inv = np.empty((maxlen + 1, n2), dtype=np.int32)
    fwd[0] = np.arange(n2, dtype=np.int32)
    inv[0] = np.arange(n2, dtype=np.int32)
    letters = np.zeros(maxlen + 1, dtype=np.uint8)
    next_letter = np.zeros(maxlen + 2, dtype=np.int32)

    pad = nw * 64 - n
    histogram = run.histogram

    out_len = np.empty(chunk_size, dtype=np.uint8)
    out_bits = np.empty((chunk_size, nw), dtype=np.uint64)
    out_words = bytearray()
    out_offsets = [0]
    filled = 0

    def pack_bits(fwd_row):
        neg = fwd_row[:n] >= n
        if pad:
            neg = np.concatenate([neg, np.zeros(pad, dtype=bool)])
        return np.packbits(neg, bitorder="little").view(np.uint64)

    def flush():
        nonlocal filled, out_words, out_offsets
        if filled == 0:
            return None
        chunk = Chunk(filled, out_len[:filled].copy(), out_bits[:filled].copy(),
                      np.frombuffer(bytes(out_words), dtype=np.uint8) if want_words else None,
                      np.array(out_offsets, dtype=np.uint32) if want_words else None)
        filled = 0
        out_words = bytearray()
        out_offsets = [0]
        return chunk

    def record(depth):
        nonlocal filled
        histogram[depth] += 1
        if not emit:
            return False
        bits = pack_bits(fwd[depth])
        if use_mask and (bits & mask).any():
            return False
        out_len[filled] = depth
        out_bits[filled] = bits
        if want_words:
            out_words.extend(letters[:depth].tobytes())
            out_offsets.append(len(out_words))
        filled += 1
        run.emitted += 1
        return filled == chunk_size

    if record(0):
        c = flush()
        if c:
            yield c
    depth = 0
    next_letter[0] = 0
    while depth >= 0:
        i = next_letter[depth]
        if i >= rank:
            depth -= 1
            continue
        next_letter[depth] = i + 1
        frow = fwd[depth]
        if frow[i] >= n:  # descent, length would drop
            continue
        si = sperm[i]
        # child stays J-reduced: (s_i w^-1)(alpha_j) positive for j in J
        irow = inv[depth]
        ok = True
        for j in J:
            if si[irow[j]] >= n:
                ok = False
                break
        if not ok:
            continue
        # canonical parent: i must be the smallest right descent of w s_i
        for j in range(i):
            if frow[si[j]] >= n:
                ok = False
                break
        if not ok:
            continue
        np.take(frow, si, out=fwd[depth + 1])
        np.take(si, irow, out=inv[depth + 1])
        letters[depth] = i
        depth += 1
        next_letter[depth] = 0
        if record(depth):
            c = flush()
            if c:
                yield c
    c = flush()
    if c:
        yield c
    run.exhausted = True
