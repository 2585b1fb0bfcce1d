"""Bit-packed linear algebra over GF(2).

Vectors are Python ints: bit ``j`` is coordinate ``j`` (column ``j`` of a
matrix), so XOR/AND/``int.bit_count`` act wordwise on the packed limbs.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_left
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import CapExceeded, EnumerationInfeasible, MatrixFormatError

MIN_DISTANCE_CAP = 26
DUAL_RANK_LIMIT = 24
DUAL_SUPPORT_LIMIT = 10**7


def weight(v: int) -> int:
    return v.bit_count()


def support(v: int) -> tuple[int, ...]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return tuple(out)


def from_support(positions: Iterable[int]) -> int:
    v = 0
    for p in positions:
        v |= 1 << p
    return v


def vec_to_str(v: int, length: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(length))


def words_of(v: int, nwords: int) -> list[int]:
    mask = (1 << 64) - 1
    return [(v >> (64 * j)) & mask for j in range(nwords)]


def int_of_words(words: Sequence[int]) -> int:
    v = 0
    for j, w in enumerate(words):
        v |= int(w) << (64 * j)
    return v


class BitMatrix:
    """Dense binary matrix with one packed int per row.

    Immutable by convention; operations return new matrices.
    """

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        if ncols < 0:
            raise ValueError("ncols must be non-negative")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {ncols} columns")
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(from_support(j for j, b in enumerate(row) if b & 1))
        return cls(rows, ncols)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        return cls.from_lists([[int(ch) for ch in line] for line in lines])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return (self.rows[i] >> j) & 1

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return [vec_to_str(r, self.ncols) for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def to_words(self) -> np.ndarray:
        """Rows as a ``(nrows, ceil(ncols/64))`` uint64 array."""
        nw = max(1, -(-self.ncols // 64))
        out = np.zeros((self.nrows, nw), dtype=np.uint64)
        for i, r in enumerate(self.rows):
            out[i, :] = words_of(r, nw)
        return out

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int over the row index."""
        v = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                v |= 1 << i
        return v

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in support(r):
                cols[j] |= 1 << i
        return cols

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.columns(), self.nrows)

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_weights(self) -> list[int]:
        return [c.bit_count() for c in self.columns()]

    def syndrome(self, v: int) -> int:
        """``M v^T`` packed over the row index."""
        s = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                s |= 1 << i
        return s

    def permute_columns(self, perm: Sequence[int]) -> "BitMatrix":
        """New matrix whose column ``j`` is old column ``perm[j]``."""
        rows = []
        for r in self.rows:
            v = 0
            for j, src in enumerate(perm):
                if (r >> src) & 1:
                    v |= 1 << j
            rows.append(v)
        return BitMatrix(rows, len(perm))

    def hstack(self, *others: "BitMatrix") -> "BitMatrix":
        return hstack(self, *others)

    def vstack(self, *others: "BitMatrix") -> "BitMatrix":
        return vstack(self, *others)


def hstack(*mats: BitMatrix) -> BitMatrix:
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise ValueError("hstack needs equal row counts")
    rows = [0] * nrows
    shift = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            rows[i] |= r << shift
        shift += m.ncols
    return BitMatrix(rows, shift)


def vstack(*mats: BitMatrix) -> BitMatrix:
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise ValueError("vstack needs equal column counts")
    return BitMatrix([r for m in mats for r in m.rows], ncols)


def block_diag(*mats: BitMatrix) -> BitMatrix:
    total = sum(m.ncols for m in mats)
    rows = []
    shift = 0
    for m in mats:
        rows.extend(r << shift for r in m.rows)
        shift += m.ncols
    return BitMatrix(rows, total)


def rank(M: BitMatrix) -> int:
    pivots: dict[int, int] = {}
    for v in M.rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    return len(pivots)


def rref(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form (zero rows last) and ascending pivot columns."""
    rows = list(M.rows)
    pivots = []
    r = 0
    for col in range(M.ncols):
        if r == len(rows):
            break
        bit = 1 << col
        for i in range(r, len(rows)):
            if rows[i] & bit:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
    return BitMatrix(rows, M.ncols), pivots


def row_basis(M: BitMatrix) -> BitMatrix:
    R, pivots = rref(M)
    return BitMatrix(R.rows[: len(pivots)], M.ncols)


def nullspace_basis(M: BitMatrix) -> BitMatrix:
    """Basis of ``{x : M x^T = 0}``, one row per free column of the RREF."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    out = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for i, p in enumerate(pivots):
            if (R.rows[i] >> f) & 1:
                v |= 1 << p
        out.append(v)
    return BitMatrix(out, M.ncols)


def kronecker(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    rows = []
    for a in A.rows:
        cols = support(a)
        for b in B.rows:
            v = 0
            for c in cols:
                v |= b << (c * B.ncols)
            rows.append(v)
    return BitMatrix(rows, A.ncols * B.ncols)


def in_row_space(M: BitMatrix, v: int) -> bool:
    return rank(BitMatrix(M.rows + (v,), M.ncols)) == rank(M)


def same_row_space(A: BitMatrix, B: BitMatrix) -> bool:
    if A.ncols != B.ncols:
        return False
    ra = rank(A)
    return ra == rank(B) and rank(vstack(A, B)) == ra


# -- pchk-v1 text format -----------------------------------------------------


def format_pchk(M: BitMatrix) -> str:
    lines = [f"{M.nrows} {M.ncols}"]
    lines.extend(M.to_strings())
    return "\n".join(lines) + "\n"


def parse_pchk(text: str) -> BitMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MatrixFormatError("empty pchk-v1 input")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise MatrixFormatError(f"bad header line {lines[0]!r}; expected 'rows cols'")
    nrows, ncols = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != nrows:
        raise MatrixFormatError(f"header says {nrows} rows, found {len(body)}")
    for i, ln in enumerate(body):
        if len(ln) != ncols or set(ln) - {"0", "1"}:
            raise MatrixFormatError(f"row {i + 1} is not {ncols} characters of 0/1")
    return BitMatrix.from_strings(body) if nrows else BitMatrix.zeros(0, ncols)


def read_pchk(path: str | os.PathLike) -> BitMatrix:
    return parse_pchk(Path(path).read_text())


def write_pchk(M: BitMatrix, path: str | os.PathLike) -> None:
    Path(path).write_text(format_pchk(M))


# -- enumeration -------------------------------------------------------------


def _parts(C) -> tuple[BitMatrix, BitMatrix]:
    """(parity-check, generator) for a LinearCode or a bare parity-check matrix."""
    if isinstance(C, BitMatrix):
        return C, nullspace_basis(C)
    return C.pchk, C.generator


def _zero_sum_subsets(values: Sequence[int], size: int) -> Iterator[tuple[int, ...]]:
    """Index sets of exactly ``size`` entries of ``values`` that XOR to zero.

    Enumerates the first ``size - 1`` indices and closes with a hash lookup
    for the last, so the cost is C(n, size-1) rather than C(n, size).
    Yields in lexicographic order.
    """
    n = len(values)
    where: dict[int, list[int]] = defaultdict(list)
    for j, v in enumerate(values):
        where[v].append(j)

    def rec(start, acc, chosen):
        if len(chosen) == size - 1:
            hits = where.get(acc)
            if hits:
                for x in hits[bisect_left(hits, start):]:
                    yield chosen + (x,)
            return
        for j in range(start, n - (size - 1 - len(chosen))):
            yield from rec(j + 1, acc ^ values[j], chosen + (j,))

    if size >= 1:
        yield from rec(0, 0, ())


def _gray_partition(basis: BitMatrix, workers: int):
    """Split a Gray walk over ``basis`` into ``2^b`` independent sub-walks."""
    k = basis.nrows
    b = 0
    while (1 << b) < workers and b < k:
        b += 1
    low = BitMatrix(basis.rows[: k - b], basis.ncols)
    top = basis.rows[k - b:]
    offsets = []
    for p in range(1 << b):
        v = 0
        for i in range(b):
            if (p >> i) & 1:
                v ^= top[i]
        offsets.append(v)
    return low, offsets


def min_distance(C, cap: int = MIN_DISTANCE_CAP, workers: int | None = None) -> int:
    """Minimum nonzero codeword weight, by Gray-code walk over all 2^k messages.

    Raises :class:`CapExceeded` when ``k > cap``. Returns 0 for ``k == 0``
    (no nonzero codeword).
    """
    _, G = _parts(C)
    k = G.nrows
    if k > cap:
        raise CapExceeded(f"k = {k} exceeds the enumeration cap {cap}")
    if k == 0:
        return 0
    kern = kernels.active
    nw = max(1, -(-G.ncols // 64))
    workers = workers or os.cpu_count() or 1
    if workers == 1 or k < 16:
        return kern.gray_min_weight(G.to_words(), np.zeros(nw, dtype=np.uint64))
    low, offsets = _gray_partition(G, workers)
    low_words = low.to_words() if low.nrows else np.zeros((0, nw), dtype=np.uint64)

    def run(off):
        return kern.gray_min_weight(low_words, np.array(words_of(off, nw), dtype=np.uint64))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = [w for w in pool.map(run, offsets) if w > 0]
    return min(results)


def min_distance_upto(C, wmax: int) -> int | None:
    """Least number of parity-check columns summing to zero, if ``<= wmax``.

    Works from the column side, so it is usable when ``k`` is far beyond
    the codeword-enumeration cap but the distance is small.
    """
    H, _ = _parts(C)
    cols = H.columns()
    for s in range(1, wmax + 1):
        for _ in _zero_sum_subsets(cols, s):
            return s
    return None


def _dual_sort_key(v: int):
    return (v.bit_count(), support(v))


def low_weight_dual_words(
    C,
    wmax: int,
    *,
    rank_limit: int = DUAL_RANK_LIMIT,
    support_limit: int = DUAL_SUPPORT_LIMIT,
    strategy: str | None = None,
) -> list[int]:
    """All nonzero dual codewords of weight ``<= wmax``.

    Strategy ``"a"`` walks the 2^rank row space of H; strategy ``"b"``
    enumerates supports of size ``<= wmax`` and keeps those orthogonal to a
    generator basis. ``None`` picks ``"a"`` when ``rank <= rank_limit``, else
    ``"b"`` when ``C(n, wmax) <= support_limit``. Output is sorted by weight,
    then lexicographically by support.
    """
    if wmax < 1:
        raise ValueError("wmax must be >= 1")
    H, G = _parts(C)
    n = H.ncols
    basis = row_basis(H)
    rk = basis.nrows
    n_supports = math.comb(n, min(wmax, n))
    if strategy is None:
        if rk <= rank_limit:
            strategy = "a"
        elif n_supports <= support_limit:
            strategy = "b"
        else:
            raise EnumerationInfeasible(rk, rank_limit, n_supports, support_limit)

    if strategy == "a":
        if rk == 0:
            return []
        nw = max(1, -(-n // 64))
        _, hits = kernels.active.gray_scan(basis.to_words(), np.zeros(nw, dtype=np.uint64), wmax)
        words = {int_of_words(h) for h in hits}
    elif strategy == "b":
        cols = G.columns()
        words = set()
        for s in range(1, min(wmax, n) + 1):
            for subset in _zero_sum_subsets(cols, s):
                words.add(from_support(subset))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return sorted(words, key=_dual_sort_key)
