import random

import pytest

from conftest import MODELS, random_character, random_class
from gkmk import canon, gkm
from gkmk.charring import CharacterElement, CohPolynomial
from gkmk.lattice import complete_to_basis
from gkmk.localindex import (
    NotTorsionFree,
    coh_lambda,
    coh_local_index,
    coh_local_index_torsion_free,
    coh_total_index,
    local_index,
    local_index_torsion_free,
    total_index,
)

X = CharacterElement.monomial


def kclass(g, **vals):
    zero = CharacterElement.zero(g.rank)
    return gkm.KClass({v: vals.get(v, zero) for v in g.vertices}, g.rank)


def test_cp1_examples():
    g, o = MODELS["cp1"]
    one = gkm.KClass.constant(g)
    assert local_index(g, o, one, "A") == 1 and local_index(g, o, one, "B") == 1
    a = kclass(g, A=CharacterElement.one(1), B=X(1, (-1,)))
    assert local_index(g, o, a, "B") == 0
    a = kclass(g, B=CharacterElement.one(1) - X(1, (-1,)))
    assert local_index(g, o, a, "B") == 1


@pytest.mark.parametrize("name", sorted(MODELS))
def test_total_index_of_one_and_zero(name):
    g, o = MODELS[name]
    assert all(v == 1 for v in total_index(g, o, gkm.KClass.constant(g)).values())
    assert not any(total_index(g, o, gkm.KClass.zero(g)).values())


def test_torsion_free_examples():
    g, circles = gkm.gen_grassmannian(1, 2)
    o = gkm.orient(g, gkm.grassmannian_polarization(2, circles))
    one = gkm.KClass.constant(g)
    assert all(local_index_torsion_free(g, o, one, p) == 1 for p in o.order)
    g, o = MODELS["gr24-vc"]
    one = gkm.KClass.constant(g)
    assert all(local_index_torsion_free(g, o, one, p) == 1 for p in o.order)
    top = o.maximum
    t = kclass(g, **{top: gkm.lambda_minus(g, o, top)})
    assert [local_index_torsion_free(g, o, t, p) for p in o.order] == [int(p == top) for p in o.order]
    with pytest.raises(NotTorsionFree):
        g2, o2 = MODELS["cp2"]
        local_index_torsion_free(g2, o2, gkm.KClass.constant(g2), "P2")


def test_torsion_free_matches_engine(bases):
    g, o = MODELS["gr24-vc"]
    rng = random.Random(11)
    for _ in range(10):
        a = random_class(rng, g, bases["gr24-vc"])
        for p in o.order:
            assert local_index_torsion_free(g, o, a, p) == local_index(g, o, a, p)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_additive_and_local(name, bases):
    g, o = MODELS[name]
    rng = random.Random(3)
    b = bases[name]
    a, c = random_class(rng, g, b), random_class(rng, g, b)
    for p in o.order:
        assert local_index(g, o, a + c, p) == local_index(g, o, a, p) + local_index(g, o, c, p)
        # only a_p matters
        other = gkm.KClass({q: a[q] if q == p else c[q] for q in g.vertices}, g.rank)
        assert local_index(g, o, other, p) == local_index(g, o, a, p)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_vanishing_below(name, bases):
    g, o = MODELS[name]
    rng = random.Random(5)
    b = bases[name]
    for pos, p in enumerate(o.order):
        a = gkm.KClass.zero(g)
        for q in o.order[pos:]:
            a = a + b[q] * random_character(rng, g.rank)
        assert not any(a[q] for q in o.order[:pos])
        assert a[p] == local_index(g, o, a, p) * gkm.lambda_minus(g, o, p)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_quotient_linearity(name, bases):
    g, o = MODELS[name]
    rng = random.Random(9)
    for _ in range(3):
        a = random_class(rng, g, bases[name])
        for p in o.order:
            B = complete_to_basis(o.xi_at(p))
            lam = [0] * g.rank
            for row in B.rows[1:]:
                c = rng.randint(-2, 2)
                lam = [x + c * y for x, y in zip(lam, row)]
            xl = X(g.rank, tuple(lam))
            assert local_index(g, o, a * xl, p) == xl * local_index(g, o, a, p)


def test_coh_examples():
    g, o = MODELS["cp1"]
    one = {v: CohPolynomial.one(1) for v in g.vertices}
    assert coh_total_index(g, o, one) == {"A": 1, "B": 0}
    a = {"A": CohPolynomial.zero(1), "B": coh_lambda(g, o, "B")}
    assert coh_local_index(g, o, a, "B") == 1
    g, o = MODELS["cp2"]
    top = o.maximum
    thom = {v: coh_lambda(g, o, v) if v == top else CohPolynomial.zero(2) for v in g.vertices}
    assert coh_total_index(g, o, thom) == {p: int(p == top) for p in o.order}


@pytest.mark.parametrize("name", ["cp1", "cp2", "cp3", "gr24-vc", "gr24-global"])
def test_k_versus_cohomology_contrast(name):
    g, o = MODELS[name]
    coh = coh_total_index(g, o, {v: CohPolynomial.one(g.rank) for v in g.vertices})
    assert coh == {p: int(p == o.minimum) for p in o.order}
    k = total_index(g, o, gkm.KClass.constant(g))
    assert all(v == 1 for v in k.values())


def test_coh_torsion_free_matches_engine():
    g, o = MODELS["gr24-vc"]
    cb = canon.coh_basis(g, o)
    for p in o.order:
        for q in o.order:
            assert coh_local_index_torsion_free(g, o, cb.classes[p], q) == coh_local_index(g, o, cb.classes[p], q)
