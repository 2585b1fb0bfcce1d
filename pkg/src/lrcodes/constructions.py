"""Deterministic builders for each code family.

Row and column orders are fixed (lexicographic throughout) so the same
parameters always give a bit-identical parity-check matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import gf2
from .code import LinearCode
from .errors import InfeasibleDegreeSequence, ParameterConstraint, UnknownFixture
from .field import field, mols_set
from .gf2 import BitMatrix
from .specs import ConstructionSpec

SEQUENTIAL = "sequential"
PARALLEL = "parallel"

FIXTURES = {
    # name: (claimed r, claimed t, n, k, d)
    "eq3_14_8": (4, 3, 14, 8, 4),
    "item2_28_20": (7, 3, 28, 20, None),
    "item3_10_5": (3, 3, 10, 5, None),
}


@dataclass(frozen=True)
class Claim:
    r: int
    t: int
    mode: str


@dataclass(frozen=True)
class Expected:
    n: int
    k: int
    d: int | None = None
    d_at_least: int | None = None


@dataclass
class BuiltCode:
    code: LinearCode
    spec: ConstructionSpec
    claimed: Claim
    expected: Expected

    @property
    def H(self) -> BitMatrix:
        return self.code.pchk

    def check_parameters(self) -> bool:
        return self.code.n == self.expected.n and self.code.k == self.expected.k


# -- t = 2: graph codes ---------------------------------------------------------


def erdos_gallai_violation(degrees) -> int | None:
    """First index j (1-based) whose Erdős–Gallai inequality fails, else None."""
    d = sorted(degrees, reverse=True)
    if sum(d) % 2:
        return 0
    n = len(d)
    for j in range(1, n + 1):
        lhs = sum(d[:j])
        rhs = j * (j - 1) + sum(min(x, j) for x in d[j:])
        if lhs > rhs:
            return j
    return None


def havel_hakimi(degrees) -> list[tuple[int, int]]:
    """Realize a graphical degree sequence; edges as sorted (u, v) pairs.

    Highest remaining degree first, ties broken by node index, both for the
    node being wired and for its chosen neighbours.
    """
    left = list(degrees)
    edges = []
    while True:
        u = max(range(len(left)), key=lambda i: (left[i], -i))
        d = left[u]
        if d == 0:
            break
        others = sorted((i for i in range(len(left)) if i != u and left[i] > 0), key=lambda i: (-left[i], i))
        if len(others) < d:
            raise InfeasibleDegreeSequence(f"Havel–Hakimi stalled at node {u}")
        left[u] = 0
        for v in others[:d]:
            left[v] -= 1
            edges.append((min(u, v), max(u, v)))
    return sorted(edges)


def regular_graph_code(k: int, r: int) -> BuiltCode:
    """Edges are message symbols, nodes are parities of their incident edges."""
    if k < 1 or r < 1:
        raise ParameterConstraint("k and r must be >= 1")
    a, b = divmod(2 * k, r)
    m = a + (1 if b else 0)
    degrees = [r] * a + ([b] if b else [])
    bad = erdos_gallai_violation(degrees)
    if bad is not None:
        raise InfeasibleDegreeSequence(
            f"degree sequence {degrees} is not graphical: Erdős–Gallai fails at index {bad}", index=bad
        )
    need = r + 1 if b == 0 else r + 2
    if m < need:
        raise InfeasibleDegreeSequence(f"m = {m} nodes but at least {need} are required", index=None)
    edges = havel_hakimi(degrees)
    B = [0] * m
    for col, (u, v) in enumerate(edges):
        B[u] |= 1 << col
        B[v] |= 1 << col
    H = gf2.hstack(BitMatrix(B, k), BitMatrix.identity(m))
    spec = ConstructionSpec("regular", (("k", k), ("r", r)))
    return BuiltCode(LinearCode(H), spec, Claim(r, 2, SEQUENTIAL), Expected(k + m, k))


# -- t = 3: hypergraph code -----------------------------------------------------


def hypergraph_t3_code(beta: int) -> BuiltCode:
    """Message symbols are the beta^3 triples of a complete 3-partite 3-graph."""
    if beta < 1:
        raise ParameterConstraint("beta must be >= 1")
    k = beta**3
    B = [0] * (3 * beta)
    for col, (a, b, c) in enumerate(itertools.product(range(beta), repeat=3)):
        for row in (a, beta + b, 2 * beta + c):
            B[row] |= 1 << col
    H = gf2.hstack(BitMatrix(B, k), BitMatrix.identity(3 * beta))
    spec = ConstructionSpec("hypergraph", (("beta", beta),))
    return BuiltCode(LinearCode(H), spec, Claim(beta * beta, 3, SEQUENTIAL), Expected(k + 3 * beta, k, 4))


# -- parallel-recovery designs -------------------------------------------------


def _check_s(s: int, lo: int, hi: int | None = None):
    if s < lo or (hi is not None and s > hi):
        rng = f"{lo} <= s <= {hi}" if hi is not None else f"s >= {lo}"
        raise ParameterConstraint(f"{rng} required, got s = {s}")


def _normalized_triples(F):
    """Canonical projective points of GF(Q)^3: first nonzero coordinate is 1."""
    out = []
    for v in itertools.product(F.elements, repeat=3):
        nz = next((x for x in v if x), None)
        if nz == 1:
            out.append(v)
    return out


def projective_plane_code(s: int) -> BuiltCode:
    """Point-line incidence of PG(2, 2^s); rows are points, columns lines."""
    _check_s(s, 2, 4)
    Q = 1 << s
    F = field(Q)
    pts = _normalized_triples(F)
    lines = pts  # a line is the kernel of a normalized dual vector
    rows = [0] * len(pts)
    for j, (a, b, c) in enumerate(lines):
        for i, (x, y, z) in enumerate(pts):
            if F.add(F.add(F.mul(a, x), F.mul(b, y)), F.mul(c, z)) == 0:
                rows[i] |= 1 << j
    H = BitMatrix(rows, len(lines))
    n = Q * Q + Q + 1
    spec = ConstructionSpec("pg", (("s", s),))
    return BuiltCode(LinearCode(H), spec, Claim(Q, Q + 1, PARALLEL), Expected(n, Q * Q + Q - 3**s, Q + 2))


def affine_plane_code(s: int) -> BuiltCode:
    """Point-line incidence of AG(2, 2^s): lines y = mx + c, then x = c."""
    _check_s(s, 2, 4)
    Q = 1 << s
    F = field(Q)
    pts = list(itertools.product(F.elements, repeat=2))
    pos = {p: i for i, p in enumerate(pts)}
    rows = [0] * len(pts)
    col = 0
    for m in F.elements:
        for c in F.elements:
            for x in F.elements:
                rows[pos[(x, F.add(F.mul(m, x), c))]] |= 1 << col
            col += 1
    for c in F.elements:
        for y in F.elements:
            rows[pos[(c, y)]] |= 1 << col
        col += 1
    H = BitMatrix(rows, col)
    spec = ConstructionSpec("ag", (("s", s),))
    return BuiltCode(
        LinearCode(H), spec, Claim(Q, Q, PARALLEL), Expected(Q * Q + Q, Q * Q + Q - 3**s, None, Q + 1)
    )


def steiner_triple_code(s: int) -> BuiltCode:
    """Lines {x, y, x^y} of PG(s-1, 2); rows are the 2^s - 1 points."""
    _check_s(s, 3)
    m = (1 << s) - 1
    triples = sorted({tuple(sorted((x, y, x ^ y))) for x in range(1, m + 1) for y in range(x + 1, m + 1)})
    rows = [0] * m
    for j, tri in enumerate(triples):
        for p in tri:
            rows[p - 1] |= 1 << j
    H = BitMatrix(rows, len(triples))
    n = m * (m - 1) // 6
    spec = ConstructionSpec("sts", (("s", s),))
    r = (1 << (s - 1)) - 2
    return BuiltCode(LinearCode(H), spec, Claim(r, 3, PARALLEL), Expected(n, n - m + s, 4))


# -- r = 2 layered codes --------------------------------------------------------


def r2_chain_code(t: int, k: int) -> BuiltCode:
    """Layered parity graph for r = 2 and t in 4..7.

    Symbols are ordered I, P, Q, R, S, T, U, V; each parity contributes one
    row over itself and its two children. Indices are 1-based as defined.
    """
    if t not in (4, 5, 6, 7):
        raise ParameterConstraint(f"t must be 4, 5, 6 or 7, got {t}")
    if k % 4 or k <= 4:
        raise ParameterConstraint("k = 4l with l > 1 required")
    if t >= 5 and k % 8:
        raise ParameterConstraint("8 | k required")
    if t >= 6 and k < 16:
        raise ParameterConstraint("k ≥ 16 required")
    if t == 7 and k % 16:
        raise ParameterConstraint("16 | k required")

    layers = {"I": k, "P": k, "Q": k // 2}
    if t >= 5:
        layers["R"] = k // 8
    if t >= 6:
        layers["S"] = k // 8
        layers["T"] = k // 8
    if t == 7:
        layers["U"] = k // 16
        layers["V"] = k // 16
    col = {}
    for name, size in layers.items():
        for i in range(1, size + 1):
            col[(name, i)] = len(col)
    n = len(col)

    parities = []
    for i in range(1, k):
        parities.append((("P", i), ("I", i), ("I", i + 1)))
    parities.append((("P", k), ("I", 1), ("I", k)))
    for i in range(1, k // 2 + 1):
        parities.append((("Q", i), ("P", i), ("P", i + k // 2)))
    if t >= 5:
        for i in range(1, k // 8 + 1):
            parities.append((("R", i), ("Q", 2 * i - 1), ("Q", 2 * i - 1 + k // 4)))
    if t >= 6:
        for i in range(1, k // 8 + 1):
            parities.append((("S", i), ("Q", 2 * i), ("Q", 2 * i + k // 4)))
        for i in range(1, k // 8 + 1):
            parities.append((("T", i), ("P", 4 * i - 2), ("P", 4 * i)))
    if t == 7:
        for i in range(1, k // 16 + 1):
            parities.append((("U", i), ("T", i), ("T", i + k // 16)))
        for i in range(1, k // 16 + 1):
            parities.append((("V", i), ("S", i), ("S", i + k // 16)))

    H = BitMatrix([gf2.from_support(col[s] for s in p) for p in parities], n)
    spec = ConstructionSpec("r2chain", (("t", t), ("k", k)))
    return BuiltCode(LinearCode(H), spec, Claim(2, t, SEQUENTIAL), Expected(n, k))


# -- general t ----------------------------------------------------------------


def mols_code(r: int, t: int) -> BuiltCode:
    """[A | diag(I_r x t) | 0] over a closing row [0 | 1..1 0..0 | 1].

    A has one r-row block per square in (t-2 MOLS, row-index square,
    column-index square); row i of a block marks the cells holding
    symbol (i mod r) + 1 (i 1-based).
    """
    if t < 2:
        raise ParameterConstraint("t >= 2 required")
    squares = list(mols_set(r, t - 2))
    squares.append(tuple(tuple(a + 1 for _ in range(r)) for a in range(r)))
    squares.append(tuple(tuple(b + 1 for b in range(r)) for _ in range(r)))
    rt = r * t
    n = r * r + rt + 1
    rows = []
    for i in range(1, rt + 1):
        L = squares[(i - 1) // r]
        symbol = i % r + 1
        v = 0
        for a in range(r):
            for b in range(r):
                if L[a][b] == symbol:
                    v |= 1 << (a * r + b)
        v |= 1 << (r * r + i - 1)
        rows.append(v)
    last = gf2.from_support(range(r * r, r * r + r)) | (1 << (n - 1))
    rows.append(last)
    H = BitMatrix(rows, n)
    claim_t = t + 1 if t % 2 == 0 else t
    spec = ConstructionSpec("mols", (("r", r), ("t", t)))
    return BuiltCode(LinearCode(H), spec, Claim(r, claim_t, SEQUENTIAL), Expected(n, r * r))


def spc_code(n: int) -> BuiltCode:
    if n < 2:
        raise ParameterConstraint("n >= 2 required")
    H = BitMatrix([(1 << n) - 1], n)
    spec = ConstructionSpec("spc", (("n", n),))
    return BuiltCode(LinearCode(H), spec, Claim(n - 1, 1, SEQUENTIAL), Expected(n, n - 1, 2))


def simplex_code(m: int) -> BuiltCode:
    """[2^m - 1, m, 2^(m-1)] simplex code; its weight-3 dual words give r = 2."""
    if m < 2:
        raise ParameterConstraint("m >= 2 required")
    n = (1 << m) - 1
    G = BitMatrix([gf2.from_support(j for j in range(n) if ((j + 1) >> i) & 1) for i in range(m)], n)
    H = gf2.nullspace_basis(G)
    d = 1 << (m - 1)
    spec = ConstructionSpec("simplex", (("m", m),))
    return BuiltCode(LinearCode(H), spec, Claim(2, d - 1, SEQUENTIAL), Expected(n, m, d))


def product_code(A: BuiltCode, B: BuiltCode) -> BuiltCode:
    """Tensor product via the Kronecker product of generator matrices.

    Coordinate ``i * n_B + j`` is row i, column j of the codeword array.
    """
    G = gf2.kronecker(A.code.generator, B.code.generator)
    H = gf2.nullspace_basis(G)
    assert all(H.syndrome(g) == 0 for g in G.rows)
    r = max(A.claimed.r, B.claimed.r)
    t = (A.claimed.t + 1) * (B.claimed.t + 1) - 1
    d = A.expected.d * B.expected.d if A.expected.d and B.expected.d else None
    spec = ConstructionSpec("product", (("left", A.spec), ("right", B.spec)))
    exp = Expected(A.code.n * B.code.n, A.code.k * B.code.k, d)
    return BuiltCode(LinearCode(H), spec, Claim(r, t, SEQUENTIAL), exp)


def product_parameters(*factors) -> tuple[int, int, Fraction]:
    """(n, k, rate) of a product of codes given as BuiltCodes or (n, k) pairs."""
    n = k = 1
    for f in factors:
        fn, fk = (f.code.n, f.code.k) if isinstance(f, BuiltCode) else f
        n *= fn
        k *= fk
    return n, k, Fraction(k, n)


def eq9_code(r: int, inner: BuiltCode) -> BuiltCode:
    """r diagonal copies of the inner H (plus an empty block) over [I I ... I]."""
    if r < 1:
        raise ParameterConstraint("r >= 1 required")
    Ht = inner.code.pchk
    n1 = Ht.ncols
    top = gf2.block_diag(*([Ht] * r), BitMatrix.zeros(0, n1))
    bottom = gf2.hstack(*([BitMatrix.identity(n1)] * (r + 1)))
    H = gf2.vstack(top, bottom)
    t = inner.claimed.t
    spec = ConstructionSpec("eq9", (("r", r), ("inner", inner.spec)))
    exp = Expected((r + 1) * n1, r * inner.code.k, 2 * t + 2)
    return BuiltCode(LinearCode(H), spec, Claim(max(r, inner.claimed.r), 2 * t + 1, SEQUENTIAL), exp)


def fixture(name: str) -> BuiltCode:
    if name not in FIXTURES:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}")
    text = resources.files("lrcodes").joinpath("fixtures", f"{name}.pchk").read_text()
    H = gf2.parse_pchk(text)
    r, t, n, k, d = FIXTURES[name]
    spec = ConstructionSpec("fixture", (("name", name),))
    return BuiltCode(LinearCode(H), spec, Claim(r, t, SEQUENTIAL), Expected(n, k, d, None if d else t + 1))


_BUILDERS = {
    "regular": lambda p: regular_graph_code(p["k"], p["r"]),
    "hypergraph": lambda p: hypergraph_t3_code(p["beta"]),
    "pg": lambda p: projective_plane_code(p["s"]),
    "ag": lambda p: affine_plane_code(p["s"]),
    "sts": lambda p: steiner_triple_code(p["s"]),
    "r2chain": lambda p: r2_chain_code(p["t"], p["k"]),
    "mols": lambda p: mols_code(p["r"], p["t"]),
    "spc": lambda p: spc_code(p["n"]),
    "simplex": lambda p: simplex_code(p["m"]),
    "product": lambda p: product_code(build(p["left"]), build(p["right"])),
    "eq9": lambda p: eq9_code(p["r"], build(p["inner"])),
    "fixture": lambda p: fixture(p["name"]),
}


def build(spec: ConstructionSpec | str) -> BuiltCode:
    if isinstance(spec, str):
        from .specs import parse_spec

        spec = parse_spec(spec)
    params = dict(spec.params)
    built = _BUILDERS[spec.family](params)
    built.spec = spec
    return built
