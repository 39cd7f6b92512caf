# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled walk over the J-reduced coset representatives.

Mirrors pyenum.py; see _common.py for the traversal description and the
chunk contract.
"""

import numpy as np

from ._common import Chunk, QuotientRun, mask_words, max_quotient_length, sperm_array

BACKEND = "compiled"


def enumerate_quotient(rs, J, psi_mask=None, want_words=True,
                       emit=True, chunk_size=65536):
    J = tuple(sorted(set(J)))
    maxlen = max_quotient_length(rs, J)
    return QuotientRun(
        lambda run: _walk(run, rs, J, psi_mask, want_words, emit, chunk_size, maxlen),
        maxlen)


def _walk(run, rs, J, psi_mask, bint want_words, bint emit, int chunk_size, int maxlen):
    cdef int n = rs.n_pos
    cdef int n2 = 2 * n
    cdef int rank = rs.rank
    cdef int nw = (n + 63) >> 6
    cdef int njr = len(J)

    cdef const int[:, ::1] sperm = sperm_array(rs)
    cdef unsigned long long[::1] mask = mask_words(psi_mask, nw)
    cdef bint use_mask = False
    cdef int w
    for w in range(nw):
        if mask[w]:
            use_mask = True

    jarr_np = np.array(J, dtype=np.int32) if njr else np.zeros(1, dtype=np.int32)
    cdef const int[::1] jarr = jarr_np

    fwd_np = np.empty((maxlen + 1, n2), dtype=np.int32)
    inv_np = np.empty((maxlen + 1, n2), dtype=np.int32)
    cdef int[:, ::1] fwd = fwd_np
    cdef int[:, ::1] inv = inv_np
    letters_np = np.zeros(maxlen + 1, dtype=np.uint8)
    cdef unsigned char[::1] letters = letters_np
    next_np = np.zeros(maxlen + 2, dtype=np.int32)
    cdef int[::1] next_letter = next_np

    cdef long long[::1] histogram = run.histogram

    out_len_np = np.empty(chunk_size, dtype=np.uint8)
    out_bits_np = np.zeros((chunk_size, nw), dtype=np.uint64)
    cdef unsigned char[::1] out_len = out_len_np
    cdef unsigned long long[:, ::1] out_bits = out_bits_np
    cdef int word_cap = chunk_size * (maxlen if maxlen > 0 else 1)
    out_words_np = np.empty(word_cap, dtype=np.uint8)
    out_offsets_np = np.empty(chunk_size + 1, dtype=np.uint32)
    cdef unsigned char[::1] out_words = out_words_np
    cdef unsigned int[::1] out_offsets = out_offsets_np

    cdef int filled = 0
    cdef long long emitted = 0
    cdef unsigned int word_cursor = 0
    out_offsets[0] = 0

    cdef int depth = 0
    cdef int i, j, x, r
    cdef int ok
    cdef unsigned long long bit_word
    cdef const int* frow
    cdef const int* irow
    cdef int* crow
    cdef const int* srow

    for x in range(n2):
        fwd[0, x] = x
        inv[0, x] = x

    # -- emit helper, inlined manually at the two call sites ---------------
    # (record current node at `depth`)

    # identity
    histogram[0] += 1
    if emit:
        out_len[filled] = 0
        for w in range(nw):
            out_bits[filled, w] = 0
        if want_words:
            out_offsets[filled + 1] = word_cursor
        filled += 1
        emitted += 1

    next_letter[0] = 0
    while depth >= 0:
        i = next_letter[depth]
        if i >= rank:
            depth -= 1
            continue
        next_letter[depth] = i + 1
        frow = &fwd[depth, 0]
        if frow[i] >= n:
            continue
        srow = &sperm[i, 0]
        irow = &inv[depth, 0]
        ok = 1
        for j in range(njr):
            if srow[irow[jarr[j]]] >= n:
                ok = 0
                break
        if not ok:
            continue
        for j in range(i):
            if frow[srow[j]] >= n:
                ok = 0
                break
        if not ok:
            continue
        crow = &fwd[depth + 1, 0]
        for x in range(n2):
            crow[x] = frow[srow[x]]
        crow = &inv[depth + 1, 0]
        for x in range(n2):
            crow[x] = srow[irow[x]]
        letters[depth] = <unsigned char> i
        depth += 1
        next_letter[depth] = 0

        # record node at `depth`
        histogram[depth] += 1
        if emit:
            frow = &fwd[depth, 0]
            ok = 1
            for w in range(nw):
                bit_word = 0
                for r in range(w << 6, min(n, (w + 1) << 6)):
                    if frow[r] >= n:
                        bit_word |= (<unsigned long long> 1) << (r & 63)
                out_bits[filled, w] = bit_word
                if use_mask and (bit_word & mask[w]):
                    ok = 0
            if ok:
                out_len[filled] = <unsigned char> depth
                if want_words:
                    for j in range(depth):
                        out_words[word_cursor + j] = letters[j]
                    word_cursor += depth
                    out_offsets[filled + 1] = word_cursor
                filled += 1
                emitted += 1
                if filled == chunk_size:
                    yield Chunk(filled, out_len_np[:filled].copy(),
                                out_bits_np[:filled].copy(),
                                out_words_np[:word_cursor].copy() if want_words else None,
                                out_offsets_np[:filled + 1].copy() if want_words else None)
                    filled = 0
                    word_cursor = 0
                    out_offsets[0] = 0

    if filled:
        yield Chunk(filled, out_len_np[:filled].copy(), out_bits_np[:filled].copy(),
                    out_words_np[:word_cursor].copy() if want_words else None,
                    out_offsets_np[:filled + 1].copy() if want_words else None)
    run.emitted = emitted
    run.exhausted = True
