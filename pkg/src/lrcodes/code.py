"""Binary linear codes defined by a parity-check matrix."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property

from . import gf2
from .gf2 import BitMatrix


class LinearCode:
    """Nullspace of a stored parity-check matrix.

    The matrix is kept verbatim, redundant rows included: for orthogonal
    parity codes the full row set, not a basis, carries the locality.
    """

    def __init__(self, pchk: BitMatrix):
        if pchk.ncols == 0:
            raise ValueError("parity-check matrix must have at least one column")
        self.pchk = pchk
        self.n = pchk.ncols
        self.rank_h = gf2.rank(pchk)
        self.k = self.n - self.rank_h

    @cached_property
    def generator(self) -> BitMatrix:
        return gf2.nullspace_basis(self.pchk)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def contains(self, v: int) -> bool:
        return self.pchk.syndrome(v) == 0

    def in_dual(self, h: int) -> bool:
        return all((h & g).bit_count() % 2 == 0 for g in self.generator.rows)

    def min_distance(self, **kw) -> int:
        return gf2.min_distance(self, **kw)

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.k})"


def from_parity_check(H: BitMatrix) -> LinearCode:
    return LinearCode(H)


def rate(C: LinearCode) -> Fraction:
    return C.rate


@dataclass
class CodeReport:
    n: int
    k: int
    rate: str
    rate_decimal: float
    d: int | None = None
    r_claimed: int | None = None
    t_claimed: int | None = None
    mode: str | None = None
    verified: str = "unverified"
    spec: str | None = None

    @classmethod
    def for_code(cls, C: LinearCode, *, d=None, claimed=None, spec=None, verified="unverified"):
        r = t = mode = None
        if claimed is not None:
            r, t, mode = claimed
        q = C.rate
        return cls(
            n=C.n,
            k=C.k,
            rate=f"{q.numerator}/{q.denominator}",
            rate_decimal=float(q),
            d=d,
            r_claimed=r,
            t_claimed=t,
            mode=mode,
            verified=verified,
            spec=spec,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CodeReport":
        return cls(**data)
