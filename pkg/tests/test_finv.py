import pytest
from hypothesis import given, strategies as st

from dipcalc.diptych import check_prediptych
from dipcalc.fincat import check_functor, check_natural, compose_functors, validate_category
from dipcalc.finv import (
    FinvArrow, TruncationError, butterfly_generators, butterfly_type, canonical_endofunctor,
    catalog_prediptych, finv_category, finv_trunc, nabla_trunc, powerset_representation,
    upsilon, upsilon_generators,
)


def test_upsilon_shape():
    u = upsilon()
    assert u.cat.objects == ("2", "1", "0")
    gens = upsilon_generators()
    d, a, w = gens["delta"], gens["alpha"], gens["omega"]
    assert (d.src, d.tgt, a.src, a.tgt, w.src, w.tgt) == ("2", "1", "1", "0", "0", "1")
    assert d in u.Ds and a in u.Ds and w in u.Di
    assert u.cat.compose(a, w) == u.cat.identity["0"]
    assert check_prediptych(u).ok


def test_butterfly_type_shape():
    b = butterfly_type()
    assert len(b.cat.objects) == 5
    g = butterfly_generators()
    monos = [k for k in ("iota_bot", "iota_top") if g[k] in b.Di]
    epis = [k for k in ("varpi_bot", "varpi_top", "delta", "delta_bar") if g[k] in b.Ds]
    assert len(monos) == 2 and len(epis) == 4
    assert g["iota_bot"].tgt == g["iota_top"].tgt  # both point inward to the middle
    assert check_prediptych(b).ok


def test_small_truncations_are_prediptychs():
    for n in (1, 2, 3):
        assert validate_category(finv_category(n)).ok
        assert check_prediptych(finv_trunc(n)).ok
        assert check_prediptych(nabla_trunc(n)).ok


def test_catalog_names():
    assert len(catalog_prediptych("ordinal", 2, "s").cat.objects) == 2
    assert catalog_prediptych("upsilon").cat.objects == ("2", "1", "0")
    with pytest.raises(TruncationError):
        finv_trunc(9)
    with pytest.raises(TruncationError):
        finv_trunc(0)


def test_powerset_of_identity():
    rep = powerset_representation(FinvArrow(1, 1, (0, 1)))
    assert len(rep) == 4 and all(k == v for k, v in rep.items())


def test_dual_of_collapse_picks_saturated_subsets():
    # the surjection {0,1} -> {0}, seen from the object with one point
    rep = powerset_representation(FinvArrow(0, 1, (0, 0)))
    assert set(rep.values()) == {frozenset(), frozenset({0, 1})}


def test_dual_of_injection_is_the_trace():
    rep = powerset_representation(FinvArrow(1, 0, (0,)))
    for A, B in rep.items():
        assert B == (frozenset({0}) if 0 in A else frozenset())


def test_powerset_rejects_foreign_arrows():
    from dipcalc.fincat import CategoryError
    with pytest.raises(CategoryError):
        powerset_representation(FinvArrow(0, 1, (3, 0)))
    with pytest.raises(CategoryError):
        powerset_representation(("not", "an", "arrow"))


def test_sigma_is_an_involution():
    pkg = canonical_endofunctor("Sigma", 3)
    S = pkg.functor
    assert check_functor(S).ok
    assert compose_functors(S, S) == pkg.identity
    assert check_natural(pkg.transformations["varsigma"]).ok


def test_delta_shifts_objects():
    pkg = canonical_endofunctor("Delta", 3)
    D = pkg.functor
    assert check_functor(D).ok
    for n in D.source.objects:
        assert D.on_object(n) == n + 1
        assert pkg.transformations["delta"].components[n].src == n + 1
    assert check_natural(pkg.transformations["delta"]).ok


def test_nabla_is_conjugate_of_delta_by_sigma():
    n = 3
    S = canonical_endofunctor("Sigma", n).functor
    S_big = canonical_endofunctor("Sigma", n + 1).functor
    D = canonical_endofunctor("Delta", n).functor
    N = canonical_endofunctor("Nabla", n).functor
    assert compose_functors(S_big, compose_functors(D, S)) == N


def test_square_package_transformations():
    pkg = canonical_endofunctor("Square", 2)
    assert check_functor(pkg.functor).ok
    for t in pkg.transformations.values():
        assert check_natural(t).ok, t.name
    assert {"iota", "varpi_bot", "varpi_top", "iota_bot", "iota_top"} <= set(pkg.transformations)


def test_truncation_too_small():
    with pytest.raises(TruncationError):
        canonical_endofunctor("Square", 3, bound=4)


FINV3 = finv_category(3)


@given(st.sampled_from(sorted(FINV3.arrows)), st.sampled_from(sorted(FINV3.arrows)))
def test_powerset_representation_is_faithful_and_functorial(f, g):
    pf, pg = powerset_representation(f), powerset_representation(g)
    if f != g and (f.src, f.tgt) == (g.src, g.tgt):
        assert pf != pg
    if g.src == f.tgt:
        pgf = powerset_representation(FINV3.compose(g, f))
        assert all(pg[pf[A]] == pgf[A] for A in pf)
