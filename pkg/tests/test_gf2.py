import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrcodes import gf2
from lrcodes.code import LinearCode
from lrcodes.constructions import build
from lrcodes.errors import CapExceeded, EnumerationInfeasible, MatrixFormatError

from .conftest import random_code, random_matrix


def matrices(max_rows=8, max_cols=12):
    @st.composite
    def _m(draw):
        m = draw(st.integers(1, max_rows))
        n = draw(st.integers(1, max_cols))
        rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
        return gf2.BitMatrix(rows, n)

    return _m()


def numpy_rank(M):
    """Independent rank oracle: elimination on a uint8 array."""
    A = M.to_numpy().astype(np.uint8) % 2
    r = 0
    for c in range(A.shape[1]):
        piv = next((i for i in range(r, A.shape[0]) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(A.shape[0]):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


def test_bit_layout_and_strings():
    M = gf2.BitMatrix.from_strings(["1010", "0111"])
    assert M.shape == (2, 4)
    assert M[0, 0] == 1 and M[0, 1] == 0 and M[1, 3] == 1
    assert M.to_strings() == ["1010", "0111"]
    assert M.column(2) == 0b11
    assert M.transpose().to_strings() == ["10", "01", "11", "01"]
    assert M.row_weights() == [2, 3]
    assert M.col_weights() == [1, 1, 2, 1]


def test_rank_small_examples():
    assert gf2.rank(gf2.BitMatrix.identity(5)) == 5
    assert gf2.rank(gf2.BitMatrix.zeros(3, 4)) == 0
    assert gf2.rank(gf2.BitMatrix.from_strings(["110", "011", "101"])) == 2
    # the fixture matrices have full row rank
    for name, m in [("eq3_14_8", 6), ("item3_10_5", 5), ("item2_28_20", 8)]:
        assert gf2.rank(build(f"fixture:{name}").H) == m


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_agrees_with_transpose_and_oracle(M):
    r = gf2.rank(M)
    assert r == gf2.rank(M.transpose()) == numpy_rank(M)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_and_nullspace(M):
    R, pivots = gf2.rref(M)
    assert len(pivots) == gf2.rank(M)
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        assert R.column(p) == 1 << i
    assert gf2.same_row_space(R, M)
    N = gf2.nullspace_basis(M)
    assert N.nrows == M.ncols - gf2.rank(M)
    assert gf2.rank(N) == N.nrows
    for v in N.rows:
        assert M.syndrome(v) == 0


def test_kronecker_shape_and_entries():
    A = gf2.BitMatrix.from_strings(["11", "01"])
    B = gf2.BitMatrix.from_strings(["101"])
    K = gf2.kronecker(A, B)
    assert K.to_strings() == ["101101", "000101"]
    rng = random.Random(3)
    for _ in range(20):
        A, B = random_matrix(rng, 3, 4), random_matrix(rng, 2, 3)
        K = gf2.kronecker(A, B)
        expect = np.kron(A.to_numpy(), B.to_numpy()) % 2
        assert (K.to_numpy() == expect).all()


def test_stack_and_block_diag():
    A = gf2.BitMatrix.from_strings(["10", "01"])
    B = gf2.BitMatrix.from_strings(["1"])
    assert gf2.block_diag(A, B).to_strings() == ["100", "010", "001"]
    assert gf2.hstack(A, A).to_strings() == ["1010", "0101"]
    assert gf2.vstack(A, A).nrows == 4


def test_pchk_round_trip(tmp_path):
    rng = random.Random(11)
    for _ in range(10):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 20))
        assert gf2.parse_pchk(gf2.format_pchk(M)) == M
        path = tmp_path / "m.pchk"
        gf2.write_pchk(M, path)
        assert gf2.read_pchk(path) == M


@pytest.mark.parametrize("text", ["", "pchk-v1\n2 3\n101\n", "pchk-v1\n1 3\n1a1\n", "nope\n1 1\n1\n"])
def test_pchk_rejects_malformed(text):
    with pytest.raises(MatrixFormatError):
        gf2.parse_pchk(text)


def brute_min_distance(C: LinearCode) -> int:
    G = C.generator
    best = None
    for coeffs in itertools.product((0, 1), repeat=G.nrows):
        if not any(coeffs):
            continue
        v = 0
        for c, row in zip(coeffs, G.rows):
            if c:
                v ^= row
        w = v.bit_count()
        best = w if best is None else min(best, w)
    return best or 0


def test_min_distance_matches_exhaustive_oracle(backend):
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(4, 14)
        C = random_code(rng, rng.randint(1, n - 1), n)
        assert gf2.min_distance(C) == brute_min_distance(C)


def test_min_distance_known_codes():
    assert gf2.min_distance(build("fixture:eq3_14_8").code) == 4
    assert gf2.min_distance(build("simplex:m=4").code) == 8
    assert gf2.min_distance(build("spc:n=5").code) == 2
    assert gf2.min_distance(build("pg:s=2").code) == 6


def test_min_distance_threaded_matches_serial():
    C = build("hypergraph:beta=2").code
    assert gf2.min_distance(C, workers=4) == gf2.min_distance(C, workers=1) == 4


def test_min_distance_cap():
    with pytest.raises(CapExceeded):
        gf2.min_distance(build("hypergraph:beta=3").code)


def test_min_distance_upto():
    C = build("hypergraph:beta=3").code
    assert gf2.min_distance_upto(C, 3) is None
    assert gf2.min_distance_upto(C, 4) == 4


def brute_dual_words(C: LinearCode, wmax: int):
    out = []
    for w in range(1, wmax + 1):
        for S in itertools.combinations(range(C.n), w):
            v = gf2.from_support(S)
            if C.in_dual(v):
                out.append(v)
    return out


def test_dual_strategies_agree_on_small_codes():
    rng = random.Random(17)
    codes = [build(s).code for s in ("fixture:eq3_14_8", "fixture:item3_10_5", "spc:n=6", "simplex:m=4")]
    codes += [random_code(rng, rng.randint(2, 8), rng.randint(6, 20)) for _ in range(25)]
    for C in codes:
        if C.n > 20:
            continue
        for wmax in (2, 3, 4):
            a = gf2.low_weight_dual_words(C, wmax, strategy="a")
            b = gf2.low_weight_dual_words(C, wmax, strategy="b")
            assert a == b
            if C.n <= 14:
                assert sorted(a) == sorted(brute_dual_words(C, wmax))


def test_dual_words_infeasible():
    C = build("sts:s=5").code  # rank 31
    with pytest.raises(EnumerationInfeasible) as info:
        gf2.low_weight_dual_words(C, 20, support_limit=1000)
    assert info.value.rank > info.value.rank_limit
