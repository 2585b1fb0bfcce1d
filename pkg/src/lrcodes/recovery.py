"""Sequential and parallel erasure-recovery checks.

Sequential recovery is decided by greedy peeling. Greedy is complete: if
some valid recovery order exists for an erasure set E, then after greedy
recovers any position p, deleting p from that order still leaves a valid
order for E minus p (every word used later meets even fewer erased
positions). So greedy only gets stuck on sets that no order can recover.

Peelability is also monotone under taking subsets (a recovery order for E
restricts to one for any subset), which is why exhaustive verification
only visits patterns of size exactly t.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import gf2, kernels
from .code import LinearCode
from .errors import PatternSpaceTooLarge

PATTERN_CAP = 10**8
MAX_STORED_FAILURES = 100
SAMPLE_BATCH = 1 << 16


def erasure_pattern(positions, n: int) -> tuple[int, ...]:
    positions = list(positions)
    pattern = tuple(sorted(set(positions)))
    if len(pattern) != len(positions):
        raise ValueError("erasure positions must be distinct")
    if pattern and (pattern[0] < 0 or pattern[-1] >= n):
        raise ValueError(f"erasure positions must lie in [0, {n})")
    return pattern


@dataclass
class RecoveryCertificate:
    """Ordered (recovered position, dual word) steps for one erasure set."""

    erased: tuple[int, ...]
    steps: list[tuple[int, int]] = field(default_factory=list)

    def replay(self, C: LinearCode, r: int) -> bool:
        """Re-check every step from scratch; raises AssertionError on a bad step."""
        remaining = gf2.from_support(self.erased)
        for pos, word in self.steps:
            assert word.bit_count() <= r + 1, f"word for {pos} has weight {word.bit_count()} > {r + 1}"
            assert C.in_dual(word), f"word for {pos} is not a dual codeword"
            assert (word >> pos) & 1, f"word does not cover position {pos}"
            assert word & remaining == 1 << pos, f"word meets other erased positions at step {pos}"
            remaining ^= 1 << pos
        assert remaining == 0, "certificate leaves erased positions"
        return True


@dataclass
class PeelFailure:
    erased: tuple[int, ...]
    residual: tuple[int, ...]

    def __bool__(self):
        return False


def peel(C: LinearCode, erased: Sequence[int], dual_words: Sequence[int]) -> RecoveryCertificate | PeelFailure:
    """Greedy peeling with deterministic tie-break.

    At each step the lowest erased position that some word can recover is
    taken, using the first such word in ``dual_words`` order.
    """
    erased = erasure_pattern(erased, C.n)
    by_pos: dict[int, list[int]] = {p: [] for p in erased}
    for w in dual_words:
        for p in erased:
            if (w >> p) & 1:
                by_pos[p].append(w)
    mask = gf2.from_support(erased)
    cert = RecoveryCertificate(erased)
    pending = list(erased)
    while pending:
        for idx, p in enumerate(pending):
            bit = 1 << p
            word = next((w for w in by_pos[p] if w & mask == bit), None)
            if word is not None:
                cert.steps.append((p, word))
                mask ^= bit
                del pending[idx]
                break
        else:
            return PeelFailure(erased, tuple(pending))
    return cert


class DualIndex:
    """Dual words of weight <= r+1, laid out for the scanning kernels."""

    def __init__(self, n: int, words: Sequence[int]):
        self.n = n
        self.words = list(words)
        by_col: list[list[int]] = [[] for _ in range(n)]
        mem = np.zeros((len(self.words), n), dtype=np.uint8)
        for wi, w in enumerate(self.words):
            for p in gf2.support(w):
                by_col[p].append(wi)
                mem[wi, p] = 1
        self.mem = mem
        self.col_ptr = np.zeros(n + 1, dtype=np.int32)
        for p in range(n):
            self.col_ptr[p + 1] = self.col_ptr[p] + len(by_col[p])
        self.col_words = np.array([wi for lst in by_col for wi in lst], dtype=np.int32)

    @classmethod
    def for_code(cls, C: LinearCode, r: int, **kw) -> "DualIndex":
        return cls(C.n, gf2.low_weight_dual_words(C, r + 1, **kw))


@dataclass
class VerificationReport:
    mode: str
    r: int
    t: int
    total_patterns: int
    checked_patterns: int
    failure_count: int = 0
    failures: list[tuple[int, ...]] = field(default_factory=list)
    issues: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    sampled: bool = False
    samples: int | None = None
    seed: int | None = None
    backend: str | None = None
    dual_words: int | None = None
    spec: str | None = None

    @property
    def passed(self) -> bool:
        return not self.failures and not self.issues and self.failure_count == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["failures"] = [[p + 1 for p in f] for f in self.failures]
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        data = dict(data)
        data.pop("passed", None)
        data["failures"] = [tuple(p - 1 for p in f) for f in data.get("failures", [])]
        return cls(**data)


def colex_rank(pattern: Sequence[int]) -> int:
    return sum(math.comb(c, i + 1) for i, c in enumerate(pattern))


def colex_unrank(rank: int, t: int) -> list[int]:
    out = [0] * t
    for i in range(t, 0, -1):
        lo, hi = i - 1, i - 1
        while math.comb(hi + 1, i) <= rank:
            hi = 2 * hi + 1
        # largest x in [lo, hi] with comb(x, i) <= rank
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, i) <= rank:
                lo = mid
            else:
                hi = mid - 1
        out[i - 1] = lo
        rank -= math.comb(lo, i)
    return out


def _resolve_workers(workers: int | None) -> int:
    return max(1, workers or os.cpu_count() or 1)


def _scan_range(kern, idx: DualIndex, t: int, start_rank: int, count: int, max_fail: int):
    start = np.array(colex_unrank(start_rank, t), dtype=np.int32)
    fail_out = np.zeros((max_fail, t), dtype=np.int32)
    nfail = kern.scan_colex(idx.n, t, start, count, idx.col_ptr, idx.col_words, idx.mem, max_fail, fail_out)
    stored = [tuple(int(x) for x in row) for row in fail_out[: min(nfail, max_fail)]]
    return nfail, stored


def verify_sequential(
    C: LinearCode,
    r: int,
    t: int,
    *,
    pattern_cap: int = PATTERN_CAP,
    workers: int | None = None,
    max_stored: int = MAX_STORED_FAILURES,
    index: DualIndex | None = None,
    spec: str | None = None,
) -> VerificationReport:
    """Peel every erasure pattern of size exactly ``t`` (colex order)."""
    t0 = time.perf_counter()
    total = math.comb(C.n, t) if 0 <= t <= C.n else 0
    if total > pattern_cap:
        raise PatternSpaceTooLarge(
            f"C({C.n}, {t}) = {total} patterns exceeds cap {pattern_cap}; use sampled mode"
        )
    if index is None:
        index = DualIndex.for_code(C, r)
    kern = kernels.active
    workers = _resolve_workers(workers)
    if t == 0 or total == 0:
        nfail, stored = 0, []
    elif workers == 1 or total < 4096:
        nfail, stored = _scan_range(kern, index, t, 0, total, max_stored)
    else:
        nchunks = min(total, workers * 8)
        bounds = [total * i // nchunks for i in range(nchunks + 1)]
        jobs = [(bounds[i], bounds[i + 1] - bounds[i]) for i in range(nchunks)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _scan_range(kern, index, t, j[0], j[1], max_stored), jobs))
        nfail = sum(p[0] for p in parts)
        stored = [f for p in parts for f in p[1]][:max_stored]
    return VerificationReport(
        mode="sequential",
        r=r,
        t=t,
        total_patterns=total,
        checked_patterns=total,
        failure_count=nfail,
        failures=stored,
        elapsed=time.perf_counter() - t0,
        backend=kern.BACKEND,
        dual_words=len(index.words),
        spec=spec,
    )


def sample_patterns(n: int, t: int, samples: int, seed: int):
    """Uniform size-``t`` subsets (sorted rows), drawn with replacement across rows.

    Yields int32 batches; the stream depends only on ``(n, t, samples, seed)``.
    """
    rng = np.random.default_rng(seed)
    left = samples
    while left > 0:
        b = min(SAMPLE_BATCH, left)
        batch = np.sort(np.argsort(rng.random((b, n)), axis=1)[:, :t], axis=1).astype(np.int32)
        yield np.ascontiguousarray(batch)
        left -= b


def verify_sequential_sampled(
    C: LinearCode,
    r: int,
    t: int,
    samples: int,
    seed: int,
    *,
    max_stored: int = MAX_STORED_FAILURES,
    index: DualIndex | None = None,
    spec: str | None = None,
) -> VerificationReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not 0 <= t <= C.n:
        raise ValueError(f"t must lie in [0, {C.n}]")
    t0 = time.perf_counter()
    if index is None:
        index = DualIndex.for_code(C, r)
    kern = kernels.active
    nfail = 0
    stored: list[tuple[int, ...]] = []
    if t > 0:
        for batch in sample_patterns(C.n, t, samples, seed):
            fail_idx = np.zeros(max_stored, dtype=np.int64)
            nb = kern.scan_list(C.n, batch, index.col_ptr, index.col_words, index.mem, fail_idx)
            for i in fail_idx[: min(nb, max_stored)]:
                if len(stored) < max_stored:
                    stored.append(tuple(int(x) for x in batch[i]))
            nfail += nb
    return VerificationReport(
        mode="sequential",
        r=r,
        t=t,
        total_patterns=math.comb(C.n, t),
        checked_patterns=samples,
        failure_count=nfail,
        failures=stored,
        elapsed=time.perf_counter() - t0,
        sampled=True,
        samples=samples,
        seed=seed,
        backend=kern.BACKEND,
        dual_words=len(index.words),
        spec=spec,
    )


def spot_check_certificates(C: LinearCode, r: int, t: int, count: int, seed: int = 0, words=None) -> int:
    """Peel ``count`` random size-``t`` patterns and replay each certificate.

    Returns the number of certificates replayed (failures are skipped).
    """
    if words is None:
        words = gf2.low_weight_dual_words(C, r + 1)
    rng = random.Random(seed)
    checked = 0
    for _ in range(count):
        E = sorted(rng.sample(range(C.n), t))
        cert = peel(C, E, words)
        if cert:
            cert.replay(C, r)
            checked += 1
    return checked


def check_parallel(C: LinearCode, r: int, t: int, *, spec: str | None = None) -> VerificationReport:
    """Structural check of the stored H against the orthogonal-parity definition."""
    t0 = time.perf_counter()
    H = C.pchk
    issues: list[str] = []
    for i, w in enumerate(H.row_weights()):
        if w != r + 1:
            issues.append(f"row_weight: row {i + 1} has weight {w}, expected {r + 1}")
    for j, w in enumerate(H.col_weights()):
        if w != t:
            issues.append(f"col_weight: column {j + 1} has weight {w}, expected {t}")
    rows = H.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            s = (rows[a] & rows[b]).bit_count()
            if s > 1:
                issues.append(f"orthogonality: rows {a + 1} and {b + 1} share {s} positions")
    if C.n * t != H.nrows * (r + 1):
        issues.append(f"count_identity: n*t = {C.n * t} but m*(r+1) = {H.nrows * (r + 1)}")
    return VerificationReport(
        mode="parallel",
        r=r,
        t=t,
        total_patterns=0,
        checked_patterns=0,
        issues=issues,
        elapsed=time.perf_counter() - t0,
        spec=spec,
    )


@dataclass
class Classification:
    kind: str  # regular_graph | mds_local | product | violation | not_normal_form
    mds_groups: list[list[int]] = field(default_factory=list)
    pair: tuple[int, int] | None = None
    overlap: int | None = None
    reason: str | None = None


def normal_form(H: gf2.BitMatrix, r: int):
    """Split columns into an identity part and a weight-2 part ``H'``.

    Returns ``(identity_columns, other_columns)`` or a reason string when
    H is not of the form [I | H'] with H' columns of weight 2 and rows of
    weight r.
    """
    m = H.nrows
    if gf2.rank(H) != m:
        return "rows of H are not linearly independent"
    cols = H.columns()
    ident: dict[int, int] = {}
    rest = []
    for j, c in enumerate(cols):
        if c.bit_count() == 1:
            row = c.bit_length() - 1
            if row not in ident:
                ident[row] = j
                continue
        rest.append(j)
    if len(ident) != m:
        return "some row has no private weight-1 column"
    if not rest:
        return "no weight-2 columns (k = 0)"
    for j in rest:
        if cols[j].bit_count() != 2:
            return f"column {j + 1} has weight {cols[j].bit_count()} outside the identity part"
    idmask = gf2.from_support(ident.values())
    for i, row in enumerate(H.rows):
        if (row & ~idmask).bit_count() != r:
            return f"row {i + 1} of H' has weight {(row & ~idmask).bit_count()}, expected {r}"
    return [ident[i] for i in range(m)], rest


def classify_rate_optimal_t2(C: LinearCode, r: int) -> Classification:
    """Sort a rate-r/(r+2) binary code into the three admissible structures.

    Row-support overlaps of the normal-form H decide: all in {0, 1} is a
    regular graph code; cliques of rows overlapping in r positions are the
    MDS-local pattern; both on disjoint symbols is a direct product. Any
    other overlap is reported as a violation.
    """
    nf = normal_form(C.pchk, r)
    if isinstance(nf, str):
        return Classification("not_normal_form", reason=nf)
    rows = C.pchk.rows
    m = len(rows)
    s = [[(rows[a] & rows[b]).bit_count() for b in range(m)] for a in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            if 1 < s[a][b] < r:
                return Classification("violation", pair=(a, b), overlap=s[a][b])
    if r < 2:
        return Classification("regular_graph")
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(m):
        for b in range(a + 1, m):
            if s[a][b] == r:
                parent[find(a)] = find(b)
    comps: dict[int, list[int]] = {}
    for a in range(m):
        comps.setdefault(find(a), []).append(a)
    groups = sorted(g for g in comps.values() if len(g) > 1)
    if not groups:
        return Classification("regular_graph")
    in_group = {a for g in groups for a in g}
    for g in groups:
        for a in g:
            for b in range(m):
                if b == a:
                    continue
                inside = b in g
                if (inside and s[a][b] != r) or (not inside and s[a][b] != 0):
                    pair = (min(a, b), max(a, b))
                    return Classification("violation", mds_groups=groups, pair=pair, overlap=s[a][b])
    kind = "mds_local" if len(in_group) == m else "product"
    return Classification(kind, mds_groups=groups)
