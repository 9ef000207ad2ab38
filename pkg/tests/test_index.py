import copy
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbindex.index import (BundleBlock, CohomologyModel, ModelError, ModelInconsistencyError,
                            SectorData, a_hat, ahat_coefficients, algebraic_index, football_model,
                            gallery, kawasaki_index, lefschetz_oracle, load_model, model_from_dict,
                            normal_factor, pt_zn_model, sector_contribution, twisted_chern)
from orbindex.parse import DomainError
from orbindex.scalars import CycloScalar, HbarSeries, cyclo_embed_root

F = Fraction
Z4 = cyclo_embed_root(4, 1)


def _ring(top=4):
    return CohomologyModel(("a", "b"), (2, 2), top, {(2, 0): CycloScalar.from_rational(1),
                                                    (1, 1): CycloScalar.from_rational(3)})


def test_ring_truncation_and_integral():
    R = _ring()
    a, b = R.gen("a"), R.gen("b")
    assert (a * a * a).is_zero()
    assert ((a + b) * (a + b)).integral() == CycloScalar.from_rational(7)
    assert (b * b).integral() == 0  # unlisted monomials integrate to zero
    x = R.one() + a
    assert x * x.inverse() == R.one()


def test_ring_rejects_bad_generators():
    with pytest.raises(ValueError):
        CohomologyModel(("a",), (3,), 2)
    with pytest.raises(ValueError):
        CohomologyModel(("a",), (2,), 4, {(1,): CycloScalar.from_rational(1)})


def test_ahat_series():
    # coefficients of x^n in (x/2) / sinh(x/2)
    c = ahat_coefficients(5)
    assert c == (F(1), F(0), F(-1, 24), F(0), F(7, 5760), F(0))


def _sector(R, roots, **kw):
    return SectorData("s", len(roots), 1, R, tangent_roots=roots, **kw)


def test_ahat_is_multiplicative():
    R = _ring()
    a, b = R.gen("a"), R.gen("b")
    both = a_hat(_sector(R, [a, b]))
    coeffs = ahat_coefficients(3)
    assert both == a.apply_series(coeffs) * b.apply_series(coeffs)
    assert both.degree_part(4) == (a * a + b * b) * F(-1, 24)


def test_twisted_chern():
    R = _ring()
    a = R.gen("a")
    ch = twisted_chern([BundleBlock(Z4, [a]), BundleBlock(CycloScalar.from_rational(2), [R.zero(), R.zero()])], R)
    assert ch.constant() == Z4 + 4
    assert ch.degree_part(2) == a * Z4
    assert ch.degree_part(4) == a * a * (Z4 / 2)


@pytest.mark.parametrize("lam, expect", [(-1, F(1, 2)), (Z4, None)])
def test_normal_factor_on_a_point(lam, expect):
    R = CohomologyModel((), (), 0, {(): CycloScalar.from_rational(1)})
    lam = CycloScalar.from_rational(lam) if isinstance(lam, int) else lam
    s = SectorData("p", 0, 2, R, normal_blocks=[(lam, R.zero())])
    v = normal_factor(s).constant()
    assert v == (1 - lam.inverse()).inverse()
    if expect is not None:
        assert v == expect


def test_normal_eigenvalue_one_is_a_domain_error():
    R = CohomologyModel((), (), 0)
    with pytest.raises(DomainError):
        SectorData("p", 0, 1, R, normal_blocks=[(CycloScalar.from_rational(1), R.zero())])


@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 5))
def test_index_is_additive_in_the_bundle(N, i, j):
    i, j = i % N, j % N
    M = model_from_dict(pt_zn_model(N, [i]))
    s = M.sectors[-1]
    Ei = model_from_dict(pt_zn_model(N, [i])).sectors[-1].E
    Ej = model_from_dict(pt_zn_model(N, [j])).sectors[-1].E
    both = sector_contribution(s, E=Ei + Ej)
    assert both == sector_contribution(s, E=Ei) + sector_contribution(s, E=Ej)


@given(st.integers(1, 8))
def test_regular_representation_on_a_point(N):
    # the invariant part of the regular representation is one-dimensional
    M = model_from_dict(pt_zn_model(N, list(range(N))))
    assert kawasaki_index(M, check_integral=False) == 1 or N == 1


def test_sector_contributions_are_local():
    data = football_model(3, 0)
    whole = algebraic_index(model_from_dict(data))
    parts = HbarSeries()
    for s in data["sectors"]:
        one = copy.deepcopy(data)
        one["sectors"] = [s]
        parts = parts + algebraic_index(model_from_dict(one))
    assert parts == whole


@pytest.mark.parametrize("name", sorted(gallery()))
def test_gallery_matches_oracle(name):
    M = model_from_dict(gallery()[name])
    if M.oracle is None:
        assert not M.sectors and kawasaki_index(M) == 0
        return
    if M.geometric:
        assert kawasaki_index(M) == lefschetz_oracle(M.oracle)
    else:
        with pytest.raises(ModelInconsistencyError):
            kawasaki_index(M)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_football_symplectic_term(m):
    res = algebraic_index(model_from_dict(football_model(m, F(5))))
    assert res.coefficient(-1) == CycloScalar.from_rational(F(-5, m))
    assert res.coefficient(0) == 1


def test_packaged_models_load(tmp_path):
    from importlib.resources import files
    for p in files("orbindex").joinpath("models").iterdir():
        if p.name.endswith(".model"):
            load_model(str(p))


def _schema_error(data):
    with pytest.raises(ModelError) as e:
        model_from_dict(data)
    return e.value.path


def test_schema_errors_carry_paths():
    good = football_model(2, 0)
    bad = copy.deepcopy(good)
    bad["sectors"][1]["m"] = 0
    assert _schema_error(bad) == "$.sectors[1].m"
    bad = copy.deepcopy(good)
    del bad["sectors"][0]["bundles"]["E"]
    assert _schema_error(bad).startswith("$.sectors[0].bundles")
    bad = copy.deepcopy(good)
    bad["sectors"][0]["integrals"]["c1"] = "1 +"
    assert _schema_error(bad).startswith("$.sectors[0].integrals")


def test_model_with_eigenvalue_one_is_a_domain_error(tmp_path):
    data = football_model(3, 0)
    data["sectors"][-1]["normal_blocks"][0]["lambda"] = "zeta(3)^3"
    with pytest.raises(DomainError):
        model_from_dict(data)
    p = tmp_path / "x.model"
    p.write_text("{ not json")
    with pytest.raises(ModelError):
        load_model(p)


def test_packaged_models_match_the_gallery():
    import json
    from importlib.resources import files
    models = files("orbindex").joinpath("models")
    for name, data in gallery().items():
        assert json.loads(models.joinpath(f"{name}.model").read_text()) == data
