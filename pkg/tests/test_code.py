from fractions import Fraction

from lrcodes import gf2
from lrcodes.code import CodeReport, LinearCode, from_parity_check, rate
from lrcodes.constructions import build


def test_dimension_from_rank():
    # a redundant row does not change k
    H = gf2.BitMatrix.from_strings(["1100", "0011", "1111"])
    C = LinearCode(H)
    assert (C.n, C.rank_h, C.k) == (4, 2, 2)
    assert C.rate == Fraction(1, 2) == rate(C)


def test_generator_is_orthogonal_complement():
    C = build("fixture:eq3_14_8").code
    G = C.generator
    assert G.nrows == C.k == 8
    assert gf2.rank(G) == 8
    for g in G.rows:
        assert C.contains(g)
    for h in C.pchk.rows:
        assert C.in_dual(h)


def test_from_parity_check_and_distance():
    C = from_parity_check(build("spc:n=4").H)
    assert C.k == 3 and C.min_distance() == 2


def test_report_json_round_trip():
    C = build("hypergraph:beta=2").code
    rep = CodeReport.for_code(C, d=4, claimed=(4, 3, "sequential"), spec="hypergraph:beta=2")
    assert rep.rate == "4/7"
    again = CodeReport.from_dict(__import__("json").loads(rep.to_json()))
    assert again == rep
    assert rep.to_json() == again.to_json()
