from fractions import Fraction

import pytest

from lrcodes import gf2
from lrcodes.constructions import (
    FIXTURES,
    build,
    erdos_gallai_violation,
    havel_hakimi,
    product_parameters,
)
from lrcodes.errors import (
    InfeasibleDegreeSequence,
    ParameterConstraint,
    SpecParseError,
    TooManySquares,
    UnknownFixture,
    UnsupportedOrder,
)
from lrcodes.recovery import check_parallel
from lrcodes.specs import parse_spec


@pytest.mark.parametrize(
    "spec,n,k",
    [
        ("regular:k=6,r=3", 10, 6),
        ("regular:k=5,r=2", 10, 5),
        ("hypergraph:beta=1", 4, 1),
        ("hypergraph:beta=2", 14, 8),
        ("hypergraph:beta=3", 36, 27),
        ("hypergraph:beta=4", 76, 64),
        ("pg:s=2", 21, 11),
        ("pg:s=3", 73, 45),
        ("ag:s=2", 20, 11),
        ("sts:s=3", 7, 3),
        ("sts:s=4", 35, 24),
        ("r2chain:t=4,k=8", 20, 8),
        ("r2chain:t=5,k=8", 21, 8),
        ("r2chain:t=6,k=16", 46, 16),
        ("r2chain:t=7,k=16", 48, 16),
        ("mols:r=3,t=2", 16, 9),
        ("mols:r=5,t=4", 46, 25),
        ("spc:n=3", 3, 2),
        ("simplex:m=3", 7, 3),
        ("product:(spc:n=3)x(spc:n=3)", 9, 4),
        ("eq9:r=2,inner=(spc:n=3)", 9, 4),
        ("fixture:eq3_14_8", 14, 8),
        ("fixture:item3_10_5", 10, 5),
        ("fixture:item2_28_20", 28, 20),
    ],
)
def test_parameters(spec, n, k):
    b = build(spec)
    assert (b.code.n, b.code.k) == (n, k)
    assert b.check_parameters()


def test_determinism_and_canonical_spec():
    for spec in ("regular:k=12,r=4", "pg:s=3", "r2chain:t=6,k=16", "mols:r=4,t=3", "product:(spc:n=3)x(simplex:m=3)"):
        a, b = build(spec), build(spec)
        assert a.H == b.H
        assert build(str(a.spec)).H == a.H
        assert gf2.format_pchk(a.H) == gf2.format_pchk(b.H)


def test_projective_plane_ranks():
    for s in (2, 3):
        assert gf2.rank(build(f"pg:s={s}").H) == 3**s + 1


def test_parallel_families_structure():
    for spec, r, t in [("pg:s=2", 4, 5), ("pg:s=3", 8, 9), ("ag:s=2", 4, 4), ("sts:s=4", 6, 3), ("sts:s=5", 14, 3)]:
        b = build(spec)
        assert (b.claimed.r, b.claimed.t, b.claimed.mode) == (r, t, "parallel")
        rep = check_parallel(b.code, r, t)
        assert rep.passed, rep.issues


def test_mols_code_dimension():
    # columns of weight t over rt+1 rows, rank rt+1 leaves k = r^2
    for r, t in [(3, 2), (4, 3), (5, 4)]:
        b = build(f"mols:r={r},t={t}")
        assert b.code.k == r * r
        assert b.code.rank_h == r * t + 1


def test_regular_graph_errors():
    with pytest.raises(InfeasibleDegreeSequence):
        build("regular:k=4,r=4")
    assert erdos_gallai_violation([4, 4]) is not None
    assert erdos_gallai_violation([2, 2, 2]) is None
    edges = havel_hakimi([3, 3, 3, 3])
    assert len(edges) == 6 and len(set(edges)) == 6


@pytest.mark.parametrize(
    "spec,message",
    [
        ("r2chain:t=6,k=8", "k ≥ 16 required"),
        ("r2chain:t=5,k=12", "8 | k required"),
        ("r2chain:t=7,k=24", "16 | k required"),
        ("r2chain:t=4,k=4", "k = 4l with l > 1 required"),
        ("r2chain:t=8,k=16", "t must be 4, 5, 6 or 7"),
    ],
)
def test_r2chain_constraints(spec, message):
    with pytest.raises(ParameterConstraint, match=message.replace("|", r"\|")):
        build(spec)


def test_other_infeasible():
    with pytest.raises(UnsupportedOrder):
        build("mols:r=6,t=2")
    assert build("mols:r=5,t=6").code.k == 25  # uses all r - 1 = 4 squares
    with pytest.raises(TooManySquares):
        build("mols:r=5,t=8")
    with pytest.raises(ParameterConstraint):
        build("pg:s=1")
    with pytest.raises(UnknownFixture):
        build("fixture:nope")


@pytest.mark.parametrize("text", ["", "pg", "pg:", "pg:t=2", "pg:s=x", "pg:s=2,s=3", "product:(spc:n=3)", "zzz:a=1", "spc:n=3)"])
def test_spec_parse_errors(text):
    with pytest.raises(SpecParseError):
        parse_spec(text)


def test_spec_aliases_and_products():
    assert str(parse_spec("steiner:s=4")) == "sts:s=4"
    assert str(parse_spec("graph:k=6, r=3")) == "regular:k=6,r=3"
    three = parse_spec("product:(spc:n=3)x(spc:n=3)x(spc:n=3)")
    assert str(three) == "product:(product:(spc:n=3)x(spc:n=3))x(spc:n=3)"
    assert build(three).code.n == 27


def test_eq9_equals_product_with_parity_code():
    # stacking r copies over [I I ... I] is the product with SPC(r+1)
    for r, inner in [(2, "spc:n=3"), (2, "hypergraph:beta=1"), (3, "spc:n=4"), (2, "simplex:m=3")]:
        e = build(f"eq9:r={r},inner=({inner})")
        p = build(f"product:(spc:n={r + 1})x({inner})")
        assert gf2.same_row_space(e.H, p.H)
        assert e.code.k == p.code.k


def test_product_distances():
    b = build("product:(spc:n=3)x(spc:n=3)")
    assert gf2.min_distance(b.code) == 4 == b.expected.d
    e = build("eq9:r=2,inner=(spc:n=3)")
    assert gf2.min_distance(e.code) == 4


def test_product_rate_comparison():
    chain, simplex = build("r2chain:t=7,k=16"), build("simplex:m=3")
    n1, k1, q1 = product_parameters(chain, simplex, simplex, simplex)
    n2, k2, q2 = product_parameters(*([(3, 2)] * 9))
    assert (n1, k1) == (16464, 432)
    assert (n2, k2) == (19683, 512)
    assert round(q1, 9) == Fraction("0.026239067")
    # 512/19683 = 0.02601229...; the quoted 0.0260122 is a truncation
    assert int(q2 * 10**7) == 260122
    assert q1 > q2


def test_fixture_table():
    assert set(FIXTURES) == {"eq3_14_8", "item3_10_5", "item2_28_20"}
    for name, (r, t, n, k, d) in FIXTURES.items():
        b = build(f"fixture:{name}")
        assert (b.claimed.r, b.claimed.t) == (r, t)
        assert (b.code.n, b.code.k) == (n, k)
        assert max(b.H.row_weights()) <= r + 1
