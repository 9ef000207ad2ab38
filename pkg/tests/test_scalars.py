import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbindex.scalars import (CycloScalar, HbarSeries, NonInvertibleError, TruncSeries,
                              as_scalar, cyclo_embed_root, cyclotomic_poly, series_exp,
                              series_invert, series_log)

LEVELS = [1, 3, 4, 5, 8, 12]


@st.composite
def scalars(draw, levels=LEVELS):
    L = draw(st.sampled_from(levels))
    coeffs = {e: Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
              for e in range(draw(st.integers(0, 4)))}
    return CycloScalar(L, {e % L: c for e, c in coeffs.items()})


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9 * (1 + abs(a) + abs(b))


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity():
    z = cyclo_embed_root(12, 1)
    assert z ** 12 == 1 and z ** 6 == -1
    assert cyclo_embed_root(4, 1) ** 2 == -1
    assert cyclo_embed_root(6, 2) == cyclo_embed_root(3, 1)


@given(scalars(), scalars())
def test_arithmetic_matches_complex_embedding(a, b):
    assert close((a + b).to_complex(), a.to_complex() + b.to_complex())
    assert close((a * b).to_complex(), a.to_complex() * b.to_complex())
    assert close(a.conj().to_complex(), a.to_complex().conjugate())


@given(scalars())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(NonInvertibleError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(scalars(), st.sampled_from([12, 24, 60]))
def test_lift_preserves_value(a, L):
    if L % a.level == 0:
        b = a.lift(L)
        assert b == a and b.level == L
        assert b.normalized_trace() == a.normalized_trace()


def test_mixed_levels_and_hash():
    a = cyclo_embed_root(3, 1)
    b = cyclo_embed_root(4, 1)
    assert (a * b).level == 12
    assert hash(a.lift(12)) == hash(a)
    assert as_scalar(Fraction(1, 2)) == CycloScalar.from_rational(Fraction(1, 2), 5)


def test_render():
    assert CycloScalar.from_rational(Fraction(-3, 4)).render() == "-3/4"
    assert cyclo_embed_root(4, 1).render("i") == "i"
    assert (1 + 2 * cyclo_embed_root(3, 1)).render() == "1 + 2*z"


def test_hbar_series():
    h = HbarSeries.hbar()
    s = (1 + h) * (1 - h)
    assert s == HbarSeries({0: 1, 2: -1})
    assert s.render() == "1 - h^2"
    inv = (1 - h).inverse(truncation_order=3)
    assert inv.truncated and inv.terms == HbarSeries({0: 1, 1: 1, 2: 1, 3: 1}).terms
    assert HbarSeries({-1: 2}).shift(1) == HbarSeries.const(2)


def test_trunc_series_exp_log_roundtrip():
    x = TruncSeries(6, [0, 1, Fraction(1, 3), 0, 2])
    e = series_exp(x)
    assert series_log(e) == x
    assert e * series_invert(e) == TruncSeries(6, [1])
    with pytest.raises(ValueError):
        series_exp(TruncSeries(2, [1]))


def test_exp_coefficients():
    e = series_exp(TruncSeries.t(5))
    assert [e[i].coefficient(0).to_fraction() for i in range(6)] == \
        [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(1, 120)]
