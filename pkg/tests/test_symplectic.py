import random

import pytest

from orbindex import linalg as la
from orbindex.scalars import CycloScalar, cyclo_embed_root
from orbindex.symplectic import (FiniteSubgroup, NotSymplecticError, SymplecticMap,
                                 cayley_inverse, fixed_decomposition, l_p_census)
from orbindex.weyl import WeylElement, WeylSpace, moyal_star, random_element

SP1 = WeylSpace.real(1)
SP2 = WeylSpace.real(2)
Z3, Z4, Z6 = (cyclo_embed_root(n, 1) for n in (3, 4, 6))


def test_non_symplectic_rejected():
    with pytest.raises(NotSymplecticError):
        SymplecticMap(SP1, [[2, 0], [0, 1]])


def test_rotation_order_and_action():
    g = SymplecticMap.rotations(SP1, [Z4])
    assert g.order == 4
    p, q = WeylElement.gen(SP1, 0), WeylElement.gen(SP1, 1)
    # z = q + i p goes to i z: q -> -p, p -> q
    assert g(q) == -p and g(p) == q
    assert (g @ g) == SymplecticMap.minus_one(SP1)


def test_action_is_an_automorphism():
    rng = random.Random(3)
    g = SymplecticMap.rotations(SP2, [Z3, None])
    h = SymplecticMap.rotations(SP2, [None, Z4])
    for _ in range(10):
        a = random_element(SP2, rng, max_degree=3)
        b = random_element(SP2, rng, max_degree=3)
        assert g(moyal_star(a, b)) == moyal_star(g(a), g(b))
        assert (g @ h)(a) == g(h(a))


@pytest.mark.parametrize("lam", [-1, Z3, Z4, Z6])
def test_fixed_decomposition_diagonalizes(lam):
    lam = CycloScalar.from_rational(lam) if isinstance(lam, int) else lam
    g = SymplecticMap.rotations(SP2, [lam, None])
    form = fixed_decomposition(g)
    assert form.k == 1
    assert len(form.normal_eigenvalues) == 1
    ev = form.normal_eigenvalues[0]
    assert ev in (lam, lam.conj())
    # the map in adapted coordinates agrees with the adapted diagonal form
    rng = random.Random(5)
    for _ in range(5):
        a = random_element(SP2, rng, max_degree=3)
        assert form.to_adapted(g(a)) == form.adapted_map()(form.to_adapted(a))
        assert form.from_adapted(form.to_adapted(a)) == a


def test_fixed_decomposition_after_conjugation():
    shear = SymplecticMap(SP1, [[1, 0], [3, 1]], check=True)
    g = SymplecticMap.rotations(SP1, [Z3]).conjugate_by(shear)
    form = fixed_decomposition(g)
    assert form.k == 0 and form.normal_eigenvalues[0] in (Z3, Z3.conj())


def test_cayley_inverse():
    c = cayley_inverse(la.to_matrix([[Z4, 0], [0, Z4.conj()]]))
    assert c[0][0] == (1 + Z4.conj()) / (1 - Z4.conj())
    assert c[0][0] == -Z4
    with pytest.raises(ValueError):
        cayley_inverse(la.identity(2))


@pytest.mark.parametrize("N,expect", [(2, {0: 1, 2: 1}), (3, {0: 2, 2: 1}), (4, {0: 3, 2: 1}),
                                      (6, {0: 5, 2: 1})])
def test_census_cyclic(N, expect):
    g = SymplecticMap.rotations(SP1, [cyclo_embed_root(N, 1)])
    assert l_p_census(FiniteSubgroup.cyclic(g)) == expect


def test_census_product_group():
    a = SymplecticMap.rotations(SP2, [-1, None])
    b = SymplecticMap.rotations(SP2, [None, -1])
    G = FiniteSubgroup.generated_by([a, b])
    assert len(G) == 4
    assert l_p_census(G) == {0: 1, 2: 2, 4: 1}


def test_conjugacy_classes_nonabelian():
    # quaternion-like group of order 8 acting on one real pair: generated by i and j rotations
    i_rot = SymplecticMap.rotations(SP2, [Z4, Z4.conj()])
    swap = SymplecticMap(SP2, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    G = FiniteSubgroup.generated_by([i_rot, swap])
    classes = G.conjugacy_classes()
    assert sum(len(c) for c in classes) == len(G)
    for c in classes:
        for g in c:
            assert G.centralizer_order(g) * len(c) == len(G)
