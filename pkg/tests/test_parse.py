import pytest
from hypothesis import given, strategies as st

from orbindex.parse import DomainError, ParseError, parse_scalar, parse_weyl, weyl_space_for
from orbindex.scalars import CycloScalar, HbarSeries, cyclo_embed_root
from orbindex.weyl import COMPLEX, REAL, WeylElement, WeylSpace, moyal_star

SP = WeylSpace.real(2)


def test_scalar_arithmetic():
    assert parse_scalar("1/2 + 1/3") == CycloScalar.from_rational(5) / 6
    assert parse_scalar("zeta(4)^2") == -1
    assert parse_scalar("zeta(3)^-1") == cyclo_embed_root(3, 2)
    assert parse_scalar("-(2 - 3)^3") == 1


@given(st.integers(-20, 20), st.integers(1, 20), st.integers(-20, 20))
def test_scalar_rationals(a, b, c):
    assert parse_scalar(f"{a}/{b} + ({c})") == CycloScalar.from_rational(a) / b + c


def test_plain_product_is_commutative_and_star_is_not():
    p, q = WeylElement.gen(SP, 0), WeylElement.gen(SP, 2)
    assert parse_weyl("p1*q1", SP) == parse_weyl("q1*p1", SP) == p * q
    assert parse_weyl("star(p1, q1)", SP) == moyal_star(p, q)
    assert parse_weyl("star(p1, q1) - star(q1, p1)", SP) == WeylElement.from_hbar(SP, HbarSeries({1: 2}))
    assert parse_weyl("star(p1, q1, p1)", SP) == moyal_star(moyal_star(p, q), p)


def test_division_by_scalars_only():
    assert parse_weyl("p1/2", SP) == WeylElement.gen(SP, 0).scale(CycloScalar.from_rational(1) / 2)
    with pytest.raises(ParseError):
        parse_weyl("1/p1", SP)
    with pytest.raises(ParseError):
        parse_scalar("1/0")


@pytest.mark.parametrize("text, pos", [("p1 +", 4), ("(p1", 3), ("p1 $ q1", 3), ("", 0),
                                       ("p1 q1", 3), ("foo", 0), ("star(p1)", 0), ("p1^q1", 3)])
def test_parse_errors_point_at_the_problem(text, pos):
    with pytest.raises(ParseError) as e:
        parse_weyl(text, SP)
    assert e.value.position == pos
    assert e.value.pointer().splitlines()[1] == " " * pos + "^"


def test_space_inference():
    assert weyl_space_for(["p1", "q2"]) == WeylSpace.real(2)
    assert weyl_space_for(["z1*zb1", "p2"]).kinds == (COMPLEX, REAL)
    assert weyl_space_for(["1"], n=3) == WeylSpace.real(3)
    with pytest.raises(DomainError):
        weyl_space_for(["p1", "z1"])
    with pytest.raises(DomainError):
        weyl_space_for(["p3"], n=2)


def test_complex_generators():
    sp = weyl_space_for(["z1"])
    z, zb = parse_weyl("z1", sp), parse_weyl("zb1", sp)
    assert parse_weyl("star(z1, zb1) - star(zb1, z1)", sp) == moyal_star(z, zb) - moyal_star(zb, z)
    assert not (moyal_star(z, zb) - moyal_star(zb, z)).is_zero()
