import json
import random

import pytest

from conftest import MODELS, load, random_character
from gkmk import gkm
from gkmk.charring import CharacterElement, one_minus

X = CharacterElement.monomial


def test_validate_fixtures():
    g, _ = load("cp1.json")
    assert gkm.validate_graph(g)
    g, _ = load("cp2.json")
    rep = gkm.validate_graph(g)
    assert rep and rep.valence == 2
    assert rep.summary().startswith("valence 2, 3 vertices")


def test_validate_pairwise_dependence():
    g, _ = load("broken_cp2.json")
    assert "PairwiseDependence" in gkm.validate_graph(g).codes()


@pytest.mark.parametrize("edges, code", [
    ([gkm.Edge("A", "A", (1,))], "SelfLoop"),
    ([gkm.Edge("A", "C", (1,))], "DanglingEndpoint"),
    ([gkm.Edge("A", "B", (0,))], "ZeroLabel"),
    ([gkm.Edge("A", "B", (1, 2))], "WrongLabelLength"),
])
def test_validate_violations(edges, code):
    g = gkm.GkmGraph(1, ("A", "B"), tuple(edges))
    assert code in gkm.validate_graph(g).codes()


def test_orient_cp1():
    g, _ = load("cp1.json")
    o = gkm.orient(g, gkm.Polarization((1,)))
    assert o.order == ("A", "B")
    assert [e.target for e in o.ascending["A"]] == ["B"]
    with pytest.raises(gkm.GenericityViolation):
        gkm.orient(g, gkm.Polarization((0,)))


def test_orient_cp2():
    g, o = MODELS["cp2"]
    assert o.order == ("P0", "P1", "P2")
    desc = o.descending["P2"]
    assert sorted((d.label, d.k) for d in desc) == [((0, -1), -2), ((1, -1), -1)]


def test_orientation_invariant_under_scaling():
    g, _ = MODELS["cp3"]
    o1 = gkm.orient(g, gkm.Polarization((1, 2, 3)))
    o2 = gkm.orient(g, gkm.Polarization((3, 6, 9)))
    assert o1.order == o2.order
    for p in o1.order:
        assert [d.label for d in o1.descending[p]] == [d.label for d in o2.descending[p]]
        assert [3 * d.k for d in o1.descending[p]] == [d.k for d in o2.descending[p]]


def test_check_class_examples():
    g, _ = MODELS["cp1"]
    assert gkm.check_class(g, gkm.KClass.constant(g, X(1, (5,)) + 2))
    assert gkm.check_class(g, gkm.KClass({"A": CharacterElement.one(1), "B": X(1, (-1,))}))
    bad = gkm.check_class(g, gkm.KClass({"A": CharacterElement.one(1), "B": X(1, (-2,)) + 1}))
    assert not bad and bad.witness is not None


def test_ascending_paths():
    g, o = MODELS["cp1"]
    paths = gkm.ascending_paths(g, o, "A", "B")
    assert len(paths) == 1 and paths[0][0].target == "B"
    g, o = MODELS["cp2"]
    paths = gkm.ascending_paths(g, o, "P0", "P2")
    assert sorted(tuple(e.target for e in p) for p in paths) == [("P1", "P2"), ("P2",)]
    assert gkm.ascending_paths(g, o, "P2", "P0") == []
    with pytest.raises(gkm.CapExceeded):
        gkm.ascending_paths(g, o, "P0", "P2", cap=1)


def test_lambda_minus():
    g, o = MODELS["cp1"]
    assert gkm.lambda_minus(g, o, "A") == 1
    assert gkm.lambda_minus(g, o, "B") == one_minus((-1,))
    g, o = MODELS["cp2"]
    assert gkm.lambda_minus(g, o, "P2") == one_minus((0, -1)) * one_minus((1, -1))


def test_generators():
    g1 = gkm.gen_cpn(1)
    assert len(g1.vertices) == 2 and g1.edges[0].label == (1,)
    g2 = gkm.gen_cpn(2)
    labels = {(e.source, e.target): e.label for e in g2.edges}
    assert labels[("P0", "P1")] == (1, 0) and labels[("P0", "P2")] == (0, 1)
    assert labels[("P1", "P2")] == (-1, 1)
    g3 = gkm.gen_cpn(3)
    rep = gkm.validate_graph(g3)
    assert rep and rep.valence == 3 and len(g3.edges) == 6
    with pytest.raises(gkm.BadParameters):
        gkm.gen_cpn(0)


def test_grassmannian_generator():
    g, circles = gkm.gen_grassmannian(1, 2)
    assert len(g.vertices) == 2 and len(g.edges) == 1
    e = g.edges[0]
    assert e.label_at("{1}") == (-1, 1)
    g, circles = gkm.gen_grassmannian(2, 4)
    rep = gkm.validate_graph(g)
    assert rep and rep.valence == 4 and len(g.edges) == 12
    for v in g.vertices:
        for e in g.incident(v):
            assert sum(a * b for a, b in zip(e.label, circles[v])) == -1
    o = gkm.orient(g, gkm.grassmannian_polarization(4, circles))
    assert all(d.k == -1 for p in o.order for d in o.descending[p])
    with pytest.raises(gkm.BadParameters):
        gkm.gen_grassmannian(0, 4)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_linear_combinations_are_classes(name):
    g, o = MODELS[name]
    rng = random.Random(7)
    # the constant class and lambda-minus indicator at the maximum generate a subring
    top = o.maximum
    t = gkm.KClass({v: gkm.lambda_minus(g, o, v) if v == top else CharacterElement.zero(g.rank) for v in g.vertices})
    one = gkm.KClass.constant(g)
    for _ in range(5):
        a, b = random_character(rng, g.rank), random_character(rng, g.rank)
        chi = t * a + one * b
        assert gkm.check_class(g, chi)
        assert gkm.check_class(g, chi * chi)


def test_json_roundtrip(tmp_path):
    g, pol = load("gr24.json")
    doc = gkm.graph_to_json(g, pol)
    g2, pol2 = gkm.graph_from_json(json.loads(json.dumps(doc)))
    assert g2 == g and pol2 == pol
    chi = gkm.KClass.constant(g, one_minus((1, -1, 0, 0)))
    for text in (False, True):
        assert gkm.class_from_json(gkm.class_to_json(chi, text=text), g) == chi


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(gkm.GraphFormatError):
        gkm.load_graph(p)
    with pytest.raises(gkm.GraphFormatError):
        gkm.graph_from_json({"rank": 1, "vertices": ["A"]})
    with pytest.raises(gkm.GraphFormatError):
        gkm.class_from_json({"A": "1"}, load("cp1.json")[0])
