import pytest
from hypothesis import given, strategies as st

from dipcalc.butterfly import check_butterfly, check_transversality, pregroupoid_laws
from dipcalc.canonical import (
    canonical_butterfly, check_canonical_butterfly, delta_groupoid, left_translation_matches,
    nabla_groupoid,
)
from dipcalc.conjugation import conjugate_principal, gauge_groupoid
from dipcalc.corpus import corpus_groupoids, gauge_example
from dipcalc.groupoid import GroupoidError, cyclic_group, principal_groupoid, symmetric_group
from dipcalc.morphism import classify_morphism, kernel, subgroupoid

SMALL = [g for g in corpus_groupoids() if len(g.arrows) <= 6]


def test_canonical_butterfly_of_z2_counts():
    cb = canonical_butterfly(cyclic_group(2))
    assert (len(cb.DeltaG.objects), len(cb.DeltaG.arrows)) == (2, 4)
    assert (len(cb.SquareG.objects), len(cb.SquareG.arrows)) == (2, 8)


def test_division_acts_by_left_translation():
    assert left_translation_matches(canonical_butterfly(symmetric_group(3)))


def test_division_groupoid_is_kernel_of_top_projection():
    cb = canonical_butterfly(symmetric_group(3))
    assert set(kernel(cb.pi_top).N.arrows) == set(cb.iota_bot.f1.values())
    assert set(kernel(cb.pi_bot).N.arrows) == set(cb.iota_top.f1.values())


def test_canonical_butterfly_report():
    assert check_canonical_butterfly(canonical_butterfly(cyclic_group(3))).ok


def test_canonical_wings_are_transverse():
    b = canonical_butterfly(cyclic_group(2)).as_butterfly()
    assert check_transversality(b.K, b.i, b.ip)


def test_same_principal_subgroupoid_twice_is_not_transverse():
    K = principal_groupoid({0: 0, 1: 0, 2: 1, 3: 1})
    assert not check_transversality(K, K, K)
    from dipcalc.groupoid import banal
    big = banal([0, 1, 2, 3])
    R = subgroupoid(big, K.arrows)
    assert not check_transversality(big, R, R)


def test_foreign_subgroupoid_is_rejected():
    K = principal_groupoid({0: 0, 1: 0})
    with pytest.raises(GroupoidError):
        check_transversality(K, cyclic_group(2), K)


def test_gauge_pregroupoid_laws_recover_both_actions():
    h, action, points = gauge_example()
    res = gauge_groupoid(h, action, points)
    b = res.butterfly
    laws = pregroupoid_laws(b)
    assert laws.exchange and laws.decomposition
    # the structure group acts on P as given
    assert all(laws.lhd[(g, p)] == action[(g, p)] for g in h.arrows for p in points)
    # the gauge groupoid acts on P by sending x to y along the class of (y, x)
    assert all(laws.nabla[(b.rp.f1[a], b.rp.source.src(a))] == b.rp.source.tgt(a)
               for a in b.rp.source.arrows)
    assert len(b.K.arrows) == 32


def test_broken_butterfly_is_reported():
    b = canonical_butterfly(cyclic_group(2)).as_butterfly()
    swapped = type(b)(b.R, b.Rp, b.K, b.G, b.Gp, b.ip, b.i, b.q, b.qp, b.r, b.rp)
    assert not check_butterfly(swapped).ok


def test_inverse_butterfly_is_valid():
    b = canonical_butterfly(cyclic_group(3)).as_butterfly()
    assert check_butterfly(b.inverse()).ok


@given(st.sampled_from(SMALL))
def test_canonical_butterfly_on_corpus(g):
    cb = canonical_butterfly(g, verify=False)
    assert check_canonical_butterfly(cb).ok
    assert classify_morphism(cb.pi_top).s_equivalence and classify_morphism(cb.pi_bot).s_equivalence
    laws = pregroupoid_laws(cb.as_butterfly())
    assert laws is not None and laws.exchange


@given(st.sampled_from(SMALL))
def test_division_and_codivision_are_conjugate(g):
    D, d = delta_groupoid(g)
    N, dbar = nabla_groupoid(g)
    b = conjugate_principal(d)
    assert len(b.Gp.arrows) == len(g.arrows) and len(b.Rp.arrows) == len(N.arrows)
    assert classify_morphism(b.rp).actor
