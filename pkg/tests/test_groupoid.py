import pytest
from hypothesis import given, strategies as st

from dipcalc.corpus import corpus_groupoids, standard_corpus
from dipcalc.fincat import FinCategory, monoid_category
from dipcalc.morphism import subgroupoid
from dipcalc.groupoid import (
    EmptyBaseError, FinGroupoid, GroupoidError, UpsilonError, banal, check_groupoid,
    cyclic_group, extract_upsilon, find_isomorphism, godement_realize, groupoid_from_upsilon,
    identity_morphism, is_plurigroup, is_principal, isotropy, make_degenerate, null,
    opposite_groupoid, orbits, principal_groupoid, symmetric_group, transitor,
)

SMALL = [g for g in corpus_groupoids() if len(g.arrows) <= 12]
groupoids = st.sampled_from(SMALL)


def test_cyclic_group_is_a_groupoid():
    assert check_groupoid(cyclic_group(2)).ok


def test_banal_pair_is_a_groupoid():
    g = banal([0, 1])
    assert len(g.arrows) == 4 and check_groupoid(g).ok


def test_monoid_with_absorbing_element_lacks_an_inverse():
    # {1, 0} under multiplication: 0 is absorbing and has no inverse
    cat = monoid_category([1, 0], lambda a, b: a * b, 1)
    g = FinGroupoid(cat, {1: 1})
    rep = check_groupoid(g)
    assert rep.kinds() == {"missing inverse"}
    assert [v.arrows for v in rep] == [(0,)]


def test_empty_base_rejected():
    with pytest.raises(EmptyBaseError):
        FinGroupoid(FinCategory([], {}, {}, {}), {})


def test_transitor_of_banal_is_identity():
    g = banal([0, 1, 2])
    t = transitor(g)
    assert t.target.arrows == g.arrows
    assert all(t.f1[a] == a for a in g.arrows)


def test_transitor_of_a_group_is_not_injective():
    t = transitor(cyclic_group(2))
    assert len(t.target.arrows) == 1
    assert not t.injective_on_arrows()


def test_transitor_of_principal_groupoid_is_injective():
    g = principal_groupoid({0: 0, 1: 0, 2: 1, 3: 1})
    assert transitor(g).injective_on_arrows() and is_principal(g)


def test_principal_two_two_split_counts():
    g = make_degenerate("principal", q={0: "a", 1: "a", 2: "b", 3: "b"})
    assert (len(g.arrows), len(g.objects), len(orbits(g))) == (8, 4, 2)


def test_principal_requires_surjection():
    with pytest.raises(GroupoidError):
        make_degenerate("principal", base=[0, 1], q={0: "a", 1: "a"}, quotient=["a", "b"])
    with pytest.raises(GroupoidError):
        make_degenerate("principal", base=[0, 1])


def test_plurigroups():
    assert is_plurigroup(null([0, 1, 2]))
    assert not is_plurigroup(banal([0, 1]))
    assert is_plurigroup(cyclic_group(3))
    assert len(make_degenerate("null", [0, 1]).arrows) == 2


def test_godement_of_principal_groupoid_is_identity_like():
    g = principal_groupoid({0: 0, 1: 0, 2: 1})
    Q, iso = godement_realize(g)
    assert len(Q) == 2 and iso.is_iso()
    assert all(iso.f1[a] == a for a in g.arrows)


def test_godement_of_banal_is_a_point():
    Q, _ = godement_realize(banal([0, 1, 2]))
    assert len(Q) == 1


def test_godement_of_sub_equivalence_relation():
    b3 = banal([0, 1, 2])
    keep = {(y, x) for (y, x) in b3.arrows if {x, y} <= {0, 1} or x == y}
    g = subgroupoid(b3, keep)
    Q, iso = godement_realize(g)
    assert len(Q) == 2 and iso.is_iso()


def test_godement_absent_for_groups():
    assert godement_realize(cyclic_group(2)) is None


def test_upsilon_round_trip_of_z2():
    g = cyclic_group(2)
    h = groupoid_from_upsilon(extract_upsilon(g))
    assert find_isomorphism(g, h) is not None


def test_upsilon_round_trip_of_banal_three():
    h = groupoid_from_upsilon(extract_upsilon(banal([0, 1, 2])))
    assert len(h.arrows) == 9 and check_groupoid(h).ok


def test_first_projection_is_not_a_division():
    u = extract_upsilon(symmetric_group(3))
    u.delta = {(y, x): y for (y, x) in u.DeltaG}
    with pytest.raises(UpsilonError):
        groupoid_from_upsilon(u)


def test_upsilon_needs_section_of_source():
    u = extract_upsilon(banal([0, 1]))
    u.omega = {0: (1, 1), 1: (1, 1)}
    with pytest.raises(UpsilonError):
        groupoid_from_upsilon(u)


def test_inverse_iso_twice_is_identity():
    g = symmetric_group(3)
    gop, sigma = opposite_groupoid(g)
    assert sigma.is_iso()
    gg, sigma2 = opposite_groupoid(gop)
    assert all(sigma2.f1[sigma.f1[a]] == a for a in g.arrows)


def test_orbits_and_isotropy():
    assert len(orbits(banal([0, 1, 2]))) == 1
    assert len(isotropy(principal_groupoid({0: 0, 1: 0}), 0).arrows) == 1
    with pytest.raises(GroupoidError):
        isotropy(banal([0, 1]), 7)


# ---------------------------------------------------------------- properties

@given(groupoids)
def test_corpus_members_are_groupoids(g):
    assert check_groupoid(g).ok


@given(groupoids)
def test_orbit_counting_per_component(g):
    total = 0
    for orb in orbits(g):
        b = orb[0]
        arrows_here = sum(1 for a in g.arrows if g.src(a) in orb)
        assert len(isotropy(g, b).arrows) * len(orb) ** 2 == arrows_here
        total += arrows_here
    assert total == len(g.arrows)


@given(groupoids)
def test_upsilon_round_trip(g):
    h = groupoid_from_upsilon(extract_upsilon(g))
    assert find_isomorphism(g, h) is not None


@given(groupoids)
def test_godement_exactly_for_principal(g):
    res = godement_realize(g)
    assert (res is not None) == is_principal(g)
    if res is not None:
        assert len(res[0]) == len(orbits(g)) and res[1].is_iso()


@given(groupoids)
def test_identity_morphism_is_iso(g):
    assert identity_morphism(g).is_iso()


def test_standard_corpus_is_reproducible():
    a = [g.name for g in standard_corpus(0)]
    b = [g.name for g in standard_corpus(0)]
    assert a == b and len(a) == 60
