import itertools
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from orbindex.cocycles import (TAU_HBAR_SCALE, TensorSlot, TwistedTraceData, UPoly, alpha_ij,
                               cochain_coboundary, pi_2k, simplex_integrate,
                               simplex_monomial_oracle, split_space, tau_2k, tau_2k_mono,
                               tau_twisted, tr_gamma)
from orbindex.hochschild import HochschildChain, cycle_c2k
from orbindex.scalars import CycloScalar, HbarSeries, cyclo_embed_root
from orbindex.symplectic import SymplecticMap, fixed_decomposition
from orbindex.weyl import WeylElement, WeylSpace, moyal_star, random_element

Z3, Z4 = cyclo_embed_root(3, 1), cyclo_embed_root(4, 1)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_simplex_integration_matches_closed_form(exps):
    m = len(exps)
    poly = UPoly(m, {tuple(exps): Fraction(1)})
    assert simplex_integrate(poly) == simplex_monomial_oracle(exps)


def test_simplex_volume():
    for m in range(1, 5):
        assert simplex_integrate(UPoly.const(m, 1)) == Fraction(1, factorial(m))


# -- independent route for tau_2k: apply the operator step by step -------------------

def _weight(m, i, j):
    return UPoly.var(m, i) * 2 + UPoly.var(m, j) * (-2) + UPoly.const(m, 1)


def _apply_sum(t, m):
    out = TensorSlot(t.space, t.arity, {})
    for i, j in itertools.combinations(range(t.arity), 2):
        step = alpha_ij(i, j, t)
        w = _weight(m, i, j)
        for key, poly in step.terms.items():
            out._add(out.terms, key, poly * w)
    return out


def tau_direct(k, monos):
    m = 2 * k
    t = pi_2k(TensorSlot(WeylSpace.real(k), m + 1, {(monos, 0): UPoly.const(m, 1)}), k)
    total = Fraction(0)
    M = 0
    while not t.is_zero():
        zero = tuple(0 for _ in monos[0])
        integrand = UPoly(m)
        for (ms, _), poly in t.terms.items():
            if all(x == zero for x in ms):
                integrand = integrand + poly
        val = simplex_integrate(integrand) * Fraction(TAU_HBAR_SCALE) ** M / factorial(M)
        if val:
            return val, M
        t = _apply_sum(t, m)
        M += 1
    return total, 0


@st.composite
def mono_tuples(draw, k=1, max_deg=3):
    return tuple(tuple(draw(st.integers(0, max_deg)) if draw(st.booleans()) else 0
                       for _ in range(2 * k)) for _ in range(2 * k + 1))


@given(mono_tuples())
def test_tau2_contraction_route_matches_direct_route(monos):
    c, M = tau_2k_mono(1, monos)
    d, Md = tau_direct(1, monos)
    assert c == d
    if c:
        assert M == Md


def test_tau_normalization():
    assert tau_2k(1, cycle_c2k(1)) == HbarSeries.const(1)
    assert tau_2k(2, cycle_c2k(2)) == HbarSeries.const(1)


@pytest.mark.parametrize("k", [1, 2])
def test_untwisted_cocycle(k):
    sp = WeylSpace.real(k)
    rng = random.Random(k)
    for _ in range(10 if k == 1 else 3):
        slots = [random_element(sp, rng, max_degree=3 if k == 1 else 2, n_terms=2)
                 for _ in range(2 * k + 2)]
        assert cochain_coboundary(lambda c: tau_2k(k, c), slots).is_zero()


@pytest.mark.parametrize("lam", [-1, Z3, Z4, cyclo_embed_root(6, 1)])
def test_twisted_trace_data(lam):
    lam = CycloScalar.from_rational(lam) if isinstance(lam, int) else lam
    d = TwistedTraceData((lam,))
    assert d.normalizer == (1 - lam.conj()).inverse()
    sp = d.normal_space()
    assert tr_gamma(d, WeylElement.const(sp)) == HbarSeries.const(d.normalizer)
    rng = random.Random(9)
    g = d.gamma()
    for _ in range(20):
        a, b = random_element(sp, rng, 3), random_element(sp, rng, 3)
        assert tr_gamma(d, moyal_star(a, b)) == tr_gamma(d, moyal_star(g(b), a))


def test_tr_gamma_invariance_under_centralizer():
    # an invariant quadratic generates automorphisms commuting with gamma
    d = TwistedTraceData((Z3, -1))
    sp = d.normal_space()
    rng = random.Random(4)
    zz = WeylElement.gen(sp, 0) * WeylElement.gen(sp, 2)
    for _ in range(10):
        a = random_element(sp, rng, 3)
        assert tr_gamma(d, moyal_star(zz, a) - moyal_star(a, zz)).is_zero()


def test_tr_gamma_rejects_wrong_space():
    d = TwistedTraceData((Z3,))
    with pytest.raises(ValueError):
        tr_gamma(d, WeylElement.const(WeylSpace.real(1)))
    with pytest.raises(ValueError):
        TwistedTraceData((1,))


def test_trace_from_adapted_form_of_a_real_map():
    g = SymplecticMap.rotations(WeylSpace.real(1), [Z4])
    form = fixed_decomposition(g)
    d = TwistedTraceData.from_adapted(form)
    rng = random.Random(1)
    for _ in range(10):
        a, b = (random_element(g.space, rng, 3) for _ in range(2))
        lhs = tr_gamma(d, form.to_adapted(moyal_star(a, b)))
        rhs = tr_gamma(d, form.to_adapted(moyal_star(g(b), a)))
        assert lhs == rhs


@pytest.mark.parametrize("lam", [-1, Z3])
def test_twisted_tau_on_c2(lam):
    lam = CycloScalar.from_rational(lam) if isinstance(lam, int) else lam
    d = TwistedTraceData((lam,))
    assert tau_twisted(1, d, cycle_c2k(1, split_space(1, d))) == HbarSeries.const(d.normalizer)


def test_twisted_tau_is_normalized():
    d = TwistedTraceData((Z3,))
    sp = split_space(1, d)
    rng = random.Random(8)
    one = WeylElement.const(sp)
    for _ in range(10):
        a, b = random_element(sp, rng, 3), random_element(sp, rng, 3)
        assert tau_twisted(1, d, HochschildChain.from_tensor([a, one, b])).is_zero()
        assert tau_twisted(1, d, HochschildChain.from_tensor([a, b, one])).is_zero()


def test_tau_rejects_bad_input():
    with pytest.raises(ValueError):
        tau_2k(1, cycle_c2k(2))
    d = TwistedTraceData((Z3,))
    with pytest.raises(ValueError):
        tau_twisted(1, d, cycle_c2k(1))
