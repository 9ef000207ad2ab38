import random

import pytest

from orbindex.crossed import (CrossedElement, SectorError, SectorWeights, random_crossed,
                              sector_trace, twisted_trace)
from orbindex.scalars import CycloScalar, HbarSeries, cyclo_embed_root
from orbindex.symplectic import FiniteSubgroup, SymplecticMap
from orbindex.weyl import WeylElement, WeylSpace, moyal_star, random_element

Z3, Z4 = cyclo_embed_root(3, 1), cyclo_embed_root(4, 1)
SP = WeylSpace.real(1)


def _z3():
    return FiniteSubgroup.cyclic(SymplecticMap.rotations(SP, [Z3]))


def test_unit_and_delta_products():
    G = _z3()
    rng = random.Random(1)
    one = CrossedElement.unit(G)
    g = G.elements[1]
    for _ in range(10):
        x = random_crossed(G, rng)
        assert one * x == x and x * one == x
    a, b = random_element(SP, rng, 3), random_element(SP, rng, 3)
    lhs = CrossedElement.delta(G, g, a) * CrossedElement.delta(G, g, b)
    assert lhs == CrossedElement.delta(G, g @ g, moyal_star(a, g(b)))


def test_associativity_and_distributivity():
    G = _z3()
    rng = random.Random(2)
    for _ in range(10):
        x, y, z = (random_crossed(G, rng, max_degree=2) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x - x) == CrossedElement(G)


def test_group_mismatch_and_space_checks():
    G = _z3()
    H = FiniteSubgroup.cyclic(SymplecticMap.minus_one(SP))
    with pytest.raises(ValueError):
        CrossedElement.unit(G) + CrossedElement.unit(H)
    with pytest.raises(ValueError):
        CrossedElement.delta(G, G.elements[0], WeylElement.const(WeylSpace.real(2)))


def test_identity_sector_is_rejected():
    G = _z3()
    with pytest.raises(SectorError):
        SectorWeights(G, {G.elements[0]: 1})
    with pytest.raises(SectorError):
        twisted_trace(G.elements[0], WeylElement.const(SP))


def test_weights_must_be_class_functions():
    # in an abelian group every class is a singleton, so build a nonabelian one
    sp = WeylSpace.real(2)
    swap = SymplecticMap(sp, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    g = SymplecticMap.rotations(sp, [Z3, Z3.conj()])
    G = FiniteSubgroup.generated_by([g, swap])
    h = g.conjugate_by(swap)
    assert h != g
    with pytest.raises(ValueError):
        SectorWeights(G, {g: 1, h: 2})
    w = SectorWeights(G, {g: 1, h: 1})
    assert w.weight(h) == HbarSeries.const(1)


@pytest.mark.parametrize("lams", [[Z3, Z4], [Z3, CycloScalar.from_rational(-1)]])
def test_trace_is_equivariant_under_conjugation(lams):
    sp = WeylSpace.real(2)
    swap = SymplecticMap(sp, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    g = SymplecticMap.rotations(sp, lams)
    h = swap
    conj = h @ g @ h.inverse()
    rng = random.Random(3)
    for _ in range(5):
        a = random_element(sp, rng, max_degree=2, n_terms=3)
        assert twisted_trace(conj, h(a)) == twisted_trace(g, a)


def test_trace_is_invariant_under_its_own_sector():
    g = SymplecticMap.rotations(SP, [Z4])
    rng = random.Random(4)
    for _ in range(10):
        a = random_element(SP, rng, 4)
        assert twisted_trace(g, g(a)) == twisted_trace(g, a)


def test_sector_trace_is_a_trace_on_z4():
    g = SymplecticMap.rotations(SP, [Z4])
    G = FiniteSubgroup.cyclic(g)
    w = SectorWeights(G, {h: 1 for h in G.elements if h.fixed_dimension() == 0})
    rng = random.Random(5)
    for _ in range(20):
        x, y = random_crossed(G, rng), random_crossed(G, rng)
        assert sector_trace(w, x * y) == sector_trace(w, y * x)


def test_sector_trace_of_a_delta():
    g = SymplecticMap.minus_one(SP)
    G = FiniteSubgroup.cyclic(g)
    w = SectorWeights(G, {g: 3})
    # one complex normal pair with eigenvalue -1: tr(1) = (1 - (-1))^-1
    assert sector_trace(w, CrossedElement.delta(G, g)) == HbarSeries.const(CycloScalar.from_rational(3) / 2)
    assert sector_trace(w, CrossedElement.unit(G)).is_zero()
