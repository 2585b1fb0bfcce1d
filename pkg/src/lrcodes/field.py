"""Small finite fields GF(p) and GF(2^s), and MOLS built from them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import TooManySquares, UnsupportedOrder

# Fixed moduli keep constructed matrices bit-for-bit reproducible.
BINARY_MODULI = {
    2: 0b111,          # x^2 + x + 1
    3: 0b1011,         # x^3 + x + 1
    4: 0b10011,        # x^4 + x + 1
    5: 0b100101,       # x^5 + x^2 + 1
    6: 0b1000011,      # x^6 + x + 1
    7: 0b10000011,     # x^7 + x + 1
    8: 0b100011101,    # x^8 + x^4 + x^3 + x^2 + 1
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """GF(p^m) with p prime and either m == 1 or p == 2.

    Elements are ints in ``range(order)``: residues for prime fields,
    coefficient bitmasks (bit i = x^i) for binary extensions.
    """

    order: int
    characteristic: int
    degree: int
    modulus: int | None
    _mul: tuple = dc_field(repr=False, compare=False, default=())

    @property
    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.order
        return a ^ b

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return (-a) % self.order
        return a

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        row = self._mul[a]
        return row.index(1)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.order if self.degree == 1 else value)


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not a canonical element of GF({self.field.order})")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other.value
        return self.field(other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self._coerce(other)).inverse()


def _poly_mulmod(a: int, b: int, modulus: int, degree: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if (a >> degree) & 1:
            a ^= modulus
    return out


@lru_cache(maxsize=None)
def field(order: int) -> FieldDescriptor:
    """Descriptor for GF(order); order must be prime or 2^s with s <= 8."""
    if _is_prime(order):
        table = tuple(tuple((a * b) % order for b in range(order)) for a in range(order))
        return FieldDescriptor(order, order, 1, None, table)
    s = order.bit_length() - 1
    if order > 0 and order == 1 << s and s in BINARY_MODULI:
        mod = BINARY_MODULI[s]
        table = tuple(
            tuple(_poly_mulmod(a, b, mod, s) for b in range(order)) for a in range(order)
        )
        return FieldDescriptor(order, 2, s, mod, table)
    raise UnsupportedOrder(
        f"GF({order}) is not supported: orders must be prime or 2^s with 1 <= s <= 8"
    )


def mols_set(r: int, count: int) -> list[tuple[tuple[int, ...], ...]]:
    """``count`` pairwise orthogonal r x r Latin squares over symbols 1..r.

    Square ``m`` (m = 1..count, as field elements) has entry
    ``m*i + j`` at (i, j), shifted from field labels 0..r-1 to 1..r.
    """
    F = field(r)
    if count > r - 1:
        raise TooManySquares(f"at most r - 1 = {r - 1} orthogonal Latin squares of order {r}")
    squares = []
    for m in range(1, count + 1):
        squares.append(
            tuple(tuple(F.add(F.mul(m, i), j) + 1 for j in range(r)) for i in range(r))
        )
    return squares


def is_latin(square) -> bool:
    r = len(square)
    symbols = set(range(1, r + 1))
    return all(set(row) == symbols for row in square) and all(
        {square[i][j] for i in range(r)} == symbols for j in range(r)
    )


def are_orthogonal(a, b) -> bool:
    r = len(a)
    pairs = {(a[i][j], b[i][j]) for i in range(r) for j in range(r)}
    return len(pairs) == r * r
