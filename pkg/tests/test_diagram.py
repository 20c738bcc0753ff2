import itertools

import pytest

from knotmoves.diagram import (Diagram, MalformedDiagram, NotRealizable, emit_dt,
                               emit_pd, parse_dt, parse_pd)
from knotmoves.gauss import to_gauss


def test_empty_code_is_unknot():
    d = parse_pd("")
    assert d.n_crossings == 0 and d.free_loops == 1
    assert d.canonical_key == "unknot"
    assert parse_dt("").canonical_key == "unknot"


def test_kink_parses():
    d = parse_pd("X(1,1,2,2)")
    assert d.n_crossings == 1
    assert d.is_planar()


def test_parse_pd_errors():
    with pytest.raises(MalformedDiagram):
        parse_pd("X(1,2,3)")
    with pytest.raises(MalformedDiagram):
        parse_pd("X(1,4,2,5) X(3,6,4,1)")  # edges 2,5 appear once
    with pytest.raises(MalformedDiagram):
        parse_pd("garbage")
    # two disjoint kinks: two components
    with pytest.raises(MalformedDiagram):
        parse_pd("X(1,1,2,2) X(3,3,4,4)")


def test_trefoil_structure(left_trefoil):
    assert left_trefoil.n_crossings == 3
    assert left_trefoil.writhe() == -3
    assert left_trefoil.is_planar()
    assert len(left_trefoil.face_walks()) == 5


def test_pd_round_trip(left_trefoil, knots):
    for d in [left_trefoil] + [k for k in knots.values() if k.crossings][:6]:
        again = parse_pd(emit_pd(d))
        assert again.canonical_key == d.canonical_key


def test_basepoint_lowest_edge():
    d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    assert d.basepoint == 1


def test_canonical_key_invariances(left_trefoil):
    # relabeling
    mapping = {e: e + 50 for e in left_trefoil.edges()}
    relabeled = left_trefoil.relabeled(mapping)
    assert relabeled.canonical_key == left_trefoil.canonical_key
    # basepoint rotation
    for e in left_trefoil.edges():
        rotated = Diagram(left_trefoil.crossings, basepoint=e, check=False)
        assert rotated.canonical_key == left_trefoil.canonical_key


def test_canonical_key_separates(left_trefoil):
    fig8 = parse_dt("4 6 8 2")
    assert fig8.canonical_key != left_trefoil.canonical_key
    assert left_trefoil.mirror().canonical_key != left_trefoil.canonical_key


def test_mirror_is_involution(knots):
    # double mirror returns the same diagram (records may be gauge-rotated)
    for d in list(knots.values())[:8]:
        dd = d.mirror().mirror()
        assert dd.canonical_key == d.canonical_key
        assert [c.rotated(2) for c in dd.crossings] == list(d.crossings)


def test_connected_sum_counts(left_trefoil, unknot):
    fig8 = parse_dt("4 6 8 2")
    s = left_trefoil.connected_sum(fig8)
    assert s.n_crossings == 7
    assert s.is_planar()
    assert unknot.connected_sum(left_trefoil).canonical_key == left_trefoil.canonical_key
    assert left_trefoil.connected_sum(unknot).canonical_key == left_trefoil.canonical_key


def test_unknot_sum_is_identity_after_simplify(knots):
    from knotmoves.moves import simplify

    unknot = Diagram.unknot()
    for name, d in knots.items():
        if d.n_crossings > 8:
            continue
        s = unknot.connected_sum(d)
        assert simplify(s).canonical_key == simplify(d).canonical_key, name


def test_dt_round_trips():
    for code in ["4 6 2", "4 6 8 2", "6 8 10 2 4", "4 8 12 2 14 6 10"]:
        d = parse_dt(code)
        assert emit_dt(d) == code
        assert d.is_planar()


def test_dt_errors():
    with pytest.raises(MalformedDiagram):
        parse_dt("3 6 2")  # odd entry
    with pytest.raises(MalformedDiagram):
        parse_dt("4 4 2")  # repeated value
    with pytest.raises(MalformedDiagram):
        parse_dt("4 6 10")  # not a permutation of 2..2n
    with pytest.raises(NotRealizable):
        parse_dt("4 10 12 16 14 2 8 6")


def test_gauss_of_trefoil(left_trefoil):
    g = to_gauss(left_trefoil)
    assert g.length == 6 and len(g.arrows) == 3
    assert len({a.sign for a in g.arrows}) == 1
    # brute check: all three chords pairwise interleaved
    for a, b in itertools.combinations(g.arrows, 2):
        pa, pb = sorted((a.over, a.under)), sorted((b.over, b.under))
        assert pa[0] < pb[0] < pa[1] < pb[1] or pb[0] < pa[0] < pb[1] < pa[1]


def test_gauss_of_unknot_and_kink(unknot):
    assert to_gauss(unknot).length == 0
    kink = parse_pd("X(1,1,2,2)")
    g = to_gauss(kink)
    assert len(g.arrows) == 1
    a = g.arrows[0]
    assert abs(a.over - a.under) == 1  # endpoints adjacent


def test_component_count(unknot, left_trefoil):
    assert unknot.component_count() == 1
    assert left_trefoil.component_count() == 1
    from knotmoves.diagram import Fragment
    # two stacked kink circles as a raw fragment
    two = Fragment(parse_pd("X(1,1,2,2)").crossings
                   + tuple(c.relabeled({1: 11, 2: 12})
                           for c in parse_pd("X(1,1,2,2)").crossings))
    assert two.component_count() == 2


def test_pd_parser_accepts_whitespace_and_brackets():
    a = parse_pd("X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)")
    b = parse_pd("X[1, 4, 2, 5]\nX[3, 6, 4, 1]\nX[5, 2, 6, 3]")
    assert a.canonical_key == b.canonical_key


def test_dt_parser_accepts_commas():
    assert parse_dt("4, 6, 2").canonical_key == parse_dt("4 6 2").canonical_key
