"""Pure-Python implementations of the kernels in ``_kernels.pyx``.

Same signatures, same results; used when the extension is not built.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _word_masks(n, col_ptr, col_words, mem):
    """Per-column lists of dual-word bitmasks, in word order."""
    masks = []
    for w in range(mem.shape[0]):
        row = np.flatnonzero(mem[w])
        m = 0
        for q in row.tolist():
            m |= 1 << q
        masks.append(m)
    col_ptr = np.asarray(col_ptr).tolist()
    col_words = np.asarray(col_words).tolist()
    return [[masks[w] for w in col_words[col_ptr[p]:col_ptr[p + 1]]] for p in range(n)]


def _peels(positions, by_col):
    erased = 0
    for p in positions:
        erased |= 1 << p
    pending = list(positions)
    while pending:
        for idx, p in enumerate(pending):
            bit = 1 << p
            if any(wm & erased == bit for wm in by_col[p]):
                erased ^= bit
                del pending[idx]
                break
        else:
            return False
    return True


def _next_colex(c, n):
    t = len(c)
    j = 0
    while j < t - 1 and c[j] + 1 == c[j + 1]:
        j += 1
    c[j] += 1
    for i in range(j):
        c[i] = i


def scan_colex(n, t, start, count, col_ptr, col_words, mem, max_fail, fail_out):
    if t == 0 or count <= 0:
        return 0
    by_col = _word_masks(n, col_ptr, col_words, mem)
    c = [int(x) for x in start]
    nfail = 0
    for i in range(count):
        if not _peels(c, by_col):
            if nfail < max_fail:
                fail_out[nfail, :] = c
            nfail += 1
        if i + 1 < count:
            _next_colex(c, n)
    return nfail


def scan_list(n, patterns, col_ptr, col_words, mem, fail_idx):
    patterns = np.asarray(patterns)
    if patterns.shape[0] == 0 or patterns.shape[1] == 0:
        return 0
    by_col = _word_masks(n, col_ptr, col_words, mem)
    cap = len(fail_idx)
    nfail = 0
    for i, row in enumerate(patterns.tolist()):
        if not _peels(row, by_col):
            if nfail < cap:
                fail_idx[nfail] = i
            nfail += 1
    return nfail


def _to_int(words):
    v = 0
    for j, w in enumerate(words):
        v |= int(w) << (64 * j)
    return v


def _to_words(v, nw):
    mask = (1 << 64) - 1
    return tuple((v >> (64 * j)) & mask for j in range(nw))


def gray_scan(basis, offset, wmax):
    basis = np.asarray(basis)
    nw = len(offset)
    rows = [_to_int(r) for r in basis.tolist()]
    k = len(rows)
    if k > 62:
        raise ValueError("gray_scan supports at most 62 basis rows")
    cur = _to_int(offset)
    best = -1
    hits = []
    for step in range(1, (1 << k) + 1):
        w = cur.bit_count()
        if w:
            if best < 0 or w < best:
                best = w
            if w <= wmax:
                hits.append(_to_words(cur, nw))
        if step == 1 << k:
            break
        cur ^= rows[(step & -step).bit_length() - 1]
    return best, hits


def gray_min_weight(basis, offset):
    basis = np.asarray(basis)
    rows = [_to_int(r) for r in basis.tolist()]
    k = len(rows)
    if k > 62:
        raise ValueError("gray_min_weight supports at most 62 basis rows")
    cur = _to_int(offset)
    best = -1
    total = 1 << k
    for step in range(1, total + 1):
        w = cur.bit_count()
        if w and (best < 0 or w < best):
            best = w
        if step == total:
            break
        cur ^= rows[(step & -step).bit_length() - 1]
    return best
