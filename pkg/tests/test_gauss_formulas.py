"""The frozen arrow-pattern tables against their polynomial oracles."""

import random

from knotmoves.diagram import Diagram
from knotmoves.gauss import to_gauss, v2, v3
from knotmoves.invariants import v2_conway, v2_jones, v3_jones
from knotmoves.moves import random_perturb


def test_v2_calibration_anchors(unknot, right_trefoil, left_trefoil, knots):
    assert v2(unknot) == 0
    assert v2(right_trefoil) == 1
    assert v2(left_trefoil) == 1
    assert v2(knots["4_1"]) == -1


def test_v3_calibration_anchors(unknot, right_trefoil, left_trefoil, knots):
    assert v3(unknot) == 0
    assert v3(right_trefoil) == 1
    assert v3(left_trefoil) == -1
    assert v3(knots["4_1"]) == 0  # amphichiral forces v3 = -v3


def test_v2_equals_conway_coefficient_corpus_wide(knots):
    for name, d in knots.items():
        assert v2(d) == v2_conway(d), name


def test_v3_matches_jones_derivative_corpus_wide(knots):
    for name, d in knots.items():
        assert v3(d) == v3_jones(d), name


def test_mirror_symmetries(knots):
    for name, d in knots.items():
        m = d.mirror()
        assert v2(m) == v2(d), name
        assert v3(m) == -v3(d), name


def test_additivity_under_connected_sum(knots):
    rng = random.Random(12)
    names = sorted(knots)
    for _ in range(20):
        a, b = rng.choice(names), rng.choice(names)
        s = knots[a].connected_sum(knots[b])
        assert v2(s) == v2(knots[a]) + v2(knots[b])
        assert v3(s) == v3(knots[a]) + v3(knots[b])


def test_basepoint_independence(knots):
    for name in ["3_1", "5_2", "6_2", "granny"]:
        d = knots[name]
        vals = set()
        for e in d.edges():
            dd = Diagram(d.crossings, d.free_loops, basepoint=e, check=False)
            vals.add((v2(dd), v3(dd)))
        assert len(vals) == 1, name


def test_invariance_under_perturbation(knots):
    rng = random.Random(5)
    names = sorted(knots)
    for i in range(25):
        name = names[rng.randrange(len(names))]
        d = knots[name]
        p = random_perturb(d, 12, seed=1000 + i)
        assert v2(p) == v2(d), name
        assert v3(p) == v3(d), name


def test_kinked_unknots_vanish(unknot):
    for seed in range(8):
        p = random_perturb(unknot, 10, seed=seed)
        assert v2(p) == 0 and v3(p) == 0


def test_values_on_crosschecked_routes(knots):
    for name in ["5_1", "7_1", "dt8e"]:
        d = knots[name]
        assert v2(d) == v2_jones(d), name


def test_gauss_diagram_shape(knots):
    g = to_gauss(knots["6_2"])
    assert g.length == 12
    assert sorted(s for a in g.arrows for s in (a.over, a.under)) == list(range(12))
