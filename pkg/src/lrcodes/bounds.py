"""Block-length and rate bounds for codes with sequential/parallel recovery.

All arithmetic is exact (ints and Fractions); floats only seed root searches.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ParallelLength:
    m_min: int
    n_min: int
    exact: bool  # t divides r(r+1), so n_min is an integer without rounding


def parallel_min_length(r: int, t: int) -> ParallelLength:
    """Least row count and block length of an (r, t) orthogonal-parity code."""
    if r < 1 or t < 1:
        raise ValueError("r and t must be >= 1")
    m_min = (t - 1) * (r + 1) + 1
    exact = (r * (r + 1)) % t == 0
    n_min = (r + 1) ** 2 - (r * (r + 1)) // t  # floor of the quotient -> ceiling of n
    return ParallelLength(m_min, n_min, exact)


def seq_t2_min_length(k: int, r: int) -> int:
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return k + _ceil_div(2 * k, r)


def song_t3_bound(k: int, r: int) -> int:
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return k + _ceil_div(2 * k + _ceil_div(k, r), r)


def _least_root(b: int, c: int) -> int:
    """Least integer m at or right of the vertex with m^2 + b*m - c >= 0."""

    def q(m):
        return m * m + b * m - c

    disc = b * b + 4 * c
    vertex = -b / 2
    if disc <= 0:
        return math.ceil(vertex)
    m = math.ceil((-b + math.sqrt(disc)) / 2)
    while 2 * (m - 1) >= -b and q(m - 1) >= 0:
        m -= 1
    while q(m) < 0:
        m += 1
    return m


def f1(k: int, r: int, s1: int) -> int:
    return _least_root(2 * r - 5, 6 * k + s1 * s1 - 5 * s1)


def f2(k: int, r: int, s1: int) -> int:
    return _least_root(4 * r - 4 + 2 * s1, 12 * k + 3 * s1 * s1 - 4 * s1 - 7)


@dataclass(frozen=True)
class NewT3Bound:
    n: int
    s1: int
    f1: int
    f2: int


def new_t3_bound(k: int, r: int) -> NewT3Bound:
    """k + min over s1 >= 0 of max(f1(s1), f2(s1), s1).

    The search stops once s1 alone reaches the best value found, since the
    max can then no longer drop below it.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    best = None
    s1 = 0
    while best is None or s1 < best[0]:
        a, b = f1(k, r, s1), f2(k, r, s1)
        val = max(a, b, s1)
        if best is None or val < best[0]:
            best = (val, s1, a, b)
        s1 += 1
    val, s1_star, a, b = best
    return NewT3Bound(k + val, s1_star, a, b)


def t2_rate_cap(r: int) -> Fraction:
    if r < 1:
        raise ValueError("r must be >= 1")
    return Fraction(r, r + 2)


def availability_rate_cap(r: int, t: int) -> Fraction:
    """1 / prod_{j=1..t} (1 + 1/(j r))."""
    if r < 1 or t < 1:
        raise ValueError("r and t must be >= 1")
    out = Fraction(1)
    for j in range(1, t + 1):
        out /= 1 + Fraction(1, j * r)
    return out


def iroot(x: int, q: int) -> int:
    """floor(x ** (1/q)) for x >= 0."""
    if x < 2:
        return x
    y = int(round(x ** (1.0 / q)))
    while y ** q > x:
        y -= 1
    while (y + 1) ** q <= x:
        y += 1
    return y


def k_upper(r: int, exponent: Fraction = Fraction(9, 5)) -> int:
    """floor(r^exponent) - 1, computed exactly."""
    exponent = Fraction(exponent)
    return iroot(r ** exponent.numerator, exponent.denominator) - 1


@dataclass(frozen=True)
class T3Row:
    r: int
    k: int
    song: int
    new: int

    @property
    def delta(self) -> int:
        return self.new - self.song


def compare_t3_bounds(r_max: int, exponent: Fraction = Fraction(9, 5), r_min: int = 1):
    """Rows (r, k, song, new) for r_min <= r <= r_max, r <= k <= floor(r^exponent) - 1.

    Returns ``(rows, new_dominates)`` where the flag says new >= song on every row.
    """
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    rows = []
    for r in range(r_min, r_max + 1):
        for k in range(r, k_upper(r, exponent) + 1):
            rows.append(T3Row(r, k, song_t3_bound(k, r), new_t3_bound(k, r).n))
    return rows, all(row.new >= row.song for row in rows)


@dataclass
class BoundsReport:
    k: int | None
    r: int
    t: int | None
    n_min_parallel: int | None = None
    m_min_parallel: int | None = None
    parallel_exact: bool | None = None
    n_min_seq_t2: int | None = None
    n_song_t3: int | None = None
    n_new_t3: int | None = None
    s1_star: int | None = None
    f1_star: int | None = None
    f2_star: int | None = None
    rate_cap_t2: str | None = None
    rate_cap_availability: str | None = None
    rate_cap_availability_decimal: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BoundsReport":
        return cls(**data)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def bounds_report(r: int, k: int | None = None, t: int | None = None) -> BoundsReport:
    rep = BoundsReport(k=k, r=r, t=t, rate_cap_t2=_frac(t2_rate_cap(r)))
    if t is not None:
        par = parallel_min_length(r, t)
        rep.n_min_parallel, rep.m_min_parallel, rep.parallel_exact = par.n_min, par.m_min, par.exact
        cap = availability_rate_cap(r, t)
        rep.rate_cap_availability = _frac(cap)
        rep.rate_cap_availability_decimal = float(cap)
    if k is not None:
        rep.n_min_seq_t2 = seq_t2_min_length(k, r)
        rep.n_song_t3 = song_t3_bound(k, r)
        nb = new_t3_bound(k, r)
        rep.n_new_t3, rep.s1_star, rep.f1_star, rep.f2_star = nb.n, nb.s1, nb.f1, nb.f2
    return rep
