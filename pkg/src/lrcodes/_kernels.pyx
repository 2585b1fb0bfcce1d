# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for erasure-pattern scanning and Gray-code enumeration.

Every function here has a pure-Python twin in :mod:`lrcodes._kernels_py`
with identical signature and results.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

BACKEND = "compiled"


cdef inline int _popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef int _peel_one(
    const int* erased, int t, int n,
    const int* col_ptr, const int* col_words, const unsigned char* mem,
    int* cnt, int* touched, int* stack, char* alive,
) noexcept nogil:
    """Return 1 if the erased positions peel to empty, else 0.

    A dual word whose support meets the erased set in exactly one position
    always recovers that position, so the residual set reached is the same
    for every processing order.
    """
    cdef int j, q, e, w, w2, top = 0, ntouched = 0, remaining = t, pos
    for j in range(t):
        alive[j] = 1
        pos = erased[j]
        for e in range(col_ptr[pos], col_ptr[pos + 1]):
            w = col_words[e]
            if cnt[w] == 0:
                touched[ntouched] = w
                ntouched += 1
            cnt[w] += 1
    for j in range(ntouched):
        if cnt[touched[j]] == 1:
            stack[top] = touched[j]
            top += 1
    while top > 0 and remaining > 0:
        top -= 1
        w = stack[top]
        if cnt[w] != 1:
            continue
        for j in range(t):
            if alive[j] and mem[<int64_t>w * n + erased[j]]:
                break
        else:
            continue
        alive[j] = 0
        remaining -= 1
        pos = erased[j]
        for e in range(col_ptr[pos], col_ptr[pos + 1]):
            w2 = col_words[e]
            cnt[w2] -= 1
            if cnt[w2] == 1:
                stack[top] = w2
                top += 1
    for j in range(ntouched):
        cnt[touched[j]] = 0
    return 1 if remaining == 0 else 0


cdef inline void _next_colex(int* c, int t, int n) noexcept nogil:
    cdef int j = 0, i
    while j < t - 1 and c[j] + 1 == c[j + 1]:
        j += 1
    c[j] += 1
    for i in range(j):
        c[i] = i


def scan_colex(int n, int t, const int[:] start, int64_t count,
               const int[:] col_ptr, const int[:] col_words,
               const unsigned char[:, :] mem, int max_fail, int[:, :] fail_out):
    """Peel ``count`` consecutive colex-ordered size-``t`` patterns from ``start``.

    Returns the total number of unrecoverable patterns; the first
    ``max_fail`` of them are written to ``fail_out`` in scan order.
    """
    cdef int nwords = mem.shape[0]
    cdef int nedges = col_words.shape[0]
    cdef int64_t i, nfail = 0
    cdef int j
    if t == 0 or count <= 0:
        return 0
    cdef int* c = <int*> malloc(t * sizeof(int))
    cdef int* cnt = <int*> malloc((nwords + 1) * sizeof(int))
    cdef int* touched = <int*> malloc((nedges + 1) * sizeof(int))
    cdef int* stack = <int*> malloc((2 * nedges + 1) * sizeof(int))
    cdef char* alive = <char*> malloc(t)
    cdef const unsigned char* memp = &mem[0, 0] if nwords > 0 else NULL
    cdef const int* cwp = &col_words[0] if nedges > 0 else NULL
    try:
        for j in range(t):
            c[j] = start[j]
        for j in range(nwords + 1):
            cnt[j] = 0
        with nogil:
            for i in range(count):
                if not _peel_one(c, t, n, &col_ptr[0], cwp, memp, cnt, touched, stack, alive):
                    if nfail < max_fail:
                        for j in range(t):
                            fail_out[nfail, j] = c[j]
                    nfail += 1
                if i + 1 < count:
                    _next_colex(c, t, n)
    finally:
        free(c)
        free(cnt)
        free(touched)
        free(stack)
        free(alive)
    return nfail


def scan_list(int n, const int[:, :] patterns,
              const int[:] col_ptr, const int[:] col_words,
              const unsigned char[:, :] mem, int64_t[:] fail_idx):
    """Peel each row of ``patterns`` (sorted positions); record failing row indices.

    Returns the number of failures; indices beyond ``len(fail_idx)`` are
    counted but not stored.
    """
    cdef int64_t npat = patterns.shape[0], i, nfail = 0
    cdef int64_t cap = fail_idx.shape[0]
    cdef int t = patterns.shape[1]
    cdef int nwords = mem.shape[0]
    cdef int nedges = col_words.shape[0]
    cdef int j
    if t == 0 or npat == 0:
        return 0
    cdef int* cnt = <int*> malloc((nwords + 1) * sizeof(int))
    cdef int* touched = <int*> malloc((nedges + 1) * sizeof(int))
    cdef int* stack = <int*> malloc((2 * nedges + 1) * sizeof(int))
    cdef char* alive = <char*> malloc(t)
    cdef const unsigned char* memp = &mem[0, 0] if nwords > 0 else NULL
    cdef const int* cwp = &col_words[0] if nedges > 0 else NULL
    try:
        for j in range(nwords + 1):
            cnt[j] = 0
        with nogil:
            for i in range(npat):
                if not _peel_one(&patterns[i, 0], t, n, &col_ptr[0], cwp, memp,
                                 cnt, touched, stack, alive):
                    if nfail < cap:
                        fail_idx[nfail] = i
                    nfail += 1
    finally:
        free(cnt)
        free(touched)
        free(stack)
        free(alive)
    return nfail


def gray_scan(const uint64_t[:, :] basis, const uint64_t[:] offset, int wmax):
    """Walk all 2^k combinations of ``basis`` rows (XOR ``offset``) in Gray order.

    Returns ``(min_weight, hits)``: the least nonzero weight seen (-1 if
    none) and, when ``wmax > 0``, the vectors of nonzero weight ``<= wmax``
    as tuples of 64-bit words.
    """
    cdef int k = basis.shape[0]
    cdef int nw = offset.shape[0]
    cdef uint64_t step, total
    cdef int i, j, w, best = -1
    cdef uint64_t* cur = <uint64_t*> malloc((nw + 1) * sizeof(uint64_t))
    hits = []
    if k > 62:
        free(cur)
        raise ValueError("gray_scan supports at most 62 basis rows")
    total = (<uint64_t> 1) << k
    try:
        for j in range(nw):
            cur[j] = offset[j]
        step = 0
        while True:
            w = 0
            for j in range(nw):
                w += _popcount64(cur[j])
            if w > 0:
                if best < 0 or w < best:
                    best = w
                if w <= wmax:
                    hits.append(tuple([cur[j] for j in range(nw)]))
            step += 1
            if step >= total:
                break
            i = __builtin_ctzll(step)
            for j in range(nw):
                cur[j] ^= basis[i, j]
    finally:
        free(cur)
    return best, hits


def gray_min_weight(const uint64_t[:, :] basis, const uint64_t[:] offset):
    """Least nonzero weight over the Gray walk; GIL released for the walk."""
    cdef int k = basis.shape[0]
    cdef int nw = offset.shape[0]
    cdef uint64_t step, total
    cdef int i, j, w, best = -1
    if k > 62:
        raise ValueError("gray_min_weight supports at most 62 basis rows")
    cdef uint64_t* cur = <uint64_t*> malloc((nw + 1) * sizeof(uint64_t))
    total = (<uint64_t> 1) << k
    try:
        for j in range(nw):
            cur[j] = offset[j]
        with nogil:
            step = 0
            while True:
                w = 0
                for j in range(nw):
                    w += _popcount64(cur[j])
                if w > 0 and (best < 0 or w < best):
                    best = w
                step += 1
                if step >= total:
                    break
                i = __builtin_ctzll(step)
                for j in range(nw):
                    cur[j] ^= basis[i, j]
    finally:
        free(cur)
    return best
