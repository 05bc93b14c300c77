import itertools

import pytest
from hypothesis import given, strategies as st

from dipcalc import oracles
from dipcalc.butterfly import check_butterfly, check_transversality, pregroupoid_laws
from dipcalc.canonical import delta_groupoid
from dipcalc.conjugation import (
    CocycleError, Cover, GroupoidSquare, NotPrincipalError, associate_action,
    build_cover_groupoid, certify_universality, cocycle_from_table, cocycle_of_sections,
    cohomologous, conjugate_principal, double_conjugation_isos, enumerate_actors,
    gauge_groupoid, homogeneous_space, mirror_square, torsor_from_cocycle,
    universal_activation,
)
from dipcalc.corpus import (
    _action, corpus_morphisms, corpus_principal_actors, cycle_cocycle, cycle_cover,
    gauge_example,
)
from dipcalc.groupoid import (
    GroupoidError, GroupoidMorphism, banal, cyclic_group, find_isomorphism,
    find_isomorphism_over, identity_morphism, null, orbits, principal_groupoid, transitor,
)
from dipcalc.morphism import (
    FlagError, classify_morphism, induced_groupoid, pullback_groupoid, subgroupoid,
)

MORPHISMS = {nm.name: nm.morphism for nm in corpus_morphisms()}
ACTORS = corpus_principal_actors()
Z2, Z3 = cyclic_group(2), cyclic_group(3)


# ---------------------------------------------------------------- conjugation

def test_conjugate_of_a_transitor():
    R = principal_groupoid({0: 0, 1: 0, 2: 1, 3: 1})
    b = conjugate_principal(transitor(R))
    assert find_isomorphism(b.Gp, banal([0, 1])) is not None
    assert find_isomorphism(b.Rp, null([0, 1, 2, 3])) is not None


def test_conjugate_of_division_is_codivision():
    g = Z2
    D, d = delta_groupoid(g)
    b = conjugate_principal(d)
    assert find_isomorphism(b.Gp, g) is not None
    assert classify_morphism(b.rp).actor


def test_non_principal_source_is_refused():
    with pytest.raises(NotPrincipalError):
        conjugate_principal(MORPHISMS["Z2->Z4"])


def test_gauge_wings():
    h, action, points = gauge_example()
    res = gauge_groupoid(h, action, points)
    assert len(res.G.arrows) == 8 and len(res.butterfly.K.arrows) == 32
    assert all(res.wings.values()) and res.butterfly.flags["transverse"]
    assert res.comparison.is_iso()


def test_gauge_with_trivial_group_is_banal():
    h = cyclic_group(1)
    pts = (0, 1, 2)
    res = gauge_groupoid(h, {(0, p): p for p in pts}, pts)
    assert find_isomorphism(res.G, banal(pts)) is not None
    assert len(res.butterfly.K.arrows) == 9


def test_torsor_over_a_point():
    res = gauge_groupoid(Z3, {(g, p): (g + p) % 3 for g in Z3.arrows for p in Z3.arrows}, (0, 1, 2))
    assert find_isomorphism(res.G, Z3) is not None
    assert len(res.S.arrows) == 9


def test_non_free_action_is_refused():
    with pytest.raises(GroupoidError):
        gauge_groupoid(Z2, {(g, p): 0 if p == 0 else 1 + (p - 1 + g) % 2
                            for g in Z2.arrows for p in (0, 1, 2)}, (0, 1, 2))


# ---------------------------------------------------------------- mirrors

def test_identity_square_mirrors_to_identity():
    D, d = delta_groupoid(Z2)
    b = conjugate_principal(d)
    sq = GroupoidSquare(identity_morphism(D), d, d, identity_morphism(Z2))
    res = mirror_square(sq, b, b)
    top, bottom = res.square.top, res.square.bottom
    assert all(top.f1[a] == a for a in top.source.arrows)
    assert all(bottom.f1[a] == a for a in bottom.source.arrows)


def test_equivalence_rows_mirror_to_an_isomorphism():
    D, d = delta_groupoid(Z2)
    H, j = induced_groupoid(Z2, {0: "*", 1: "*"})
    S, s, u = pullback_groupoid(j, d)
    res = mirror_square(GroupoidSquare(u, s, d, j))
    assert res.properties["c"] is True
    assert res.square.bottom.is_iso()


def test_mirror_refuses_non_principal_verticals():
    f = MORPHISMS["Z2->Z4"]
    with pytest.raises(GroupoidError):
        mirror_square(GroupoidSquare(identity_morphism(f.source), f, f, identity_morphism(f.target)))


LAWS = [law for G in (Z2, Z3, banal([0, 1])) for law in enumerate_actors(G, 2)]


@given(st.sampled_from(LAWS))
def test_actor_squares_mirror_to_actor_squares(law):
    from dipcalc.morphism import action_groupoid
    H, f = action_groupoid(law)
    D, d = delta_groupoid(f.target)
    S, s, u = pullback_groupoid(f, d)
    res = mirror_square(GroupoidSquare(u, s, d, f))
    assert res.properties["a"] is True and res.properties["b"] is True


@given(st.sampled_from(LAWS))
def test_double_mirror_returns_the_square(law):
    from dipcalc.morphism import action_groupoid
    H, f = action_groupoid(law)
    D, d = delta_groupoid(f.target)
    S, s, u = pullback_groupoid(f, d)
    sq = GroupoidSquare(u, s, d, f)
    bl, br = conjugate_principal(s), conjugate_principal(d)
    once = mirror_square(sq, bl, br, check_properties=False)
    twice = mirror_square(once.square, bl.inverse(), br.inverse(), check_properties=False)
    assert twice.square.top == u and twice.square.bottom == f


# ---------------------------------------------------------------- associate bundles

def test_associate_of_division():
    D, d = delta_groupoid(Z2)
    b = conjugate_principal(d)
    H2, fp = associate_action(b, d)
    assert fp.target is b.Gp and classify_morphism(fp).actor
    assert len(H2.objects) == len(D.objects)


def test_associate_bundle_of_the_gauge_example():
    h, action, points = gauge_example()
    res = gauge_groupoid(h, action, points)
    b = res.butterfly
    fibre = _action(b.G, [0, 1], lambda g, p: (p + g) % 2, "swap")
    H2, fp = associate_action(b, fibre)
    assert len(H2.objects) == 2 * len(res.B)
    assert classify_morphism(fp).actor


def test_associate_of_the_trivial_action_is_trivial():
    D, d = delta_groupoid(Z2)
    b = conjugate_principal(d)
    triv = _action(Z2, ["p"], lambda g, p: p, "trivial")
    H2, fp = associate_action(b, triv)
    assert len(H2.objects) == len(b.Gp.objects)
    assert classify_morphism(fp).actor


def test_associate_needs_an_actor_into_g():
    D, d = delta_groupoid(Z2)
    b = conjugate_principal(d)
    with pytest.raises(GroupoidError):
        associate_action(b, MORPHISMS["swap_Z2"])  # lives over another copy of Z/2


# ---------------------------------------------------------------- activation

def test_activation_of_the_unit_is_division():
    f = MORPHISMS["omega_Z3"]
    act = universal_activation(f)
    D, d = delta_groupoid(f.target)
    assert find_isomorphism_over(act.f1, d) is not None


def test_actor_activates_itself():
    act = universal_activation(MORPHISMS["rot_Z3"])
    assert act.h1.is_iso()


def test_activation_of_z2_in_z4_is_the_coset_action():
    act = universal_activation(MORPHISMS["Z2->Z4"])
    assert len(act.H1.objects) == 2 and len(act.H1.arrows) == 8
    assert classify_morphism(act.f1).actor


def test_activation_needs_i_faithful():
    Z1 = cyclic_group(1)
    collapse = GroupoidMorphism(Z2, Z1, {"*": "*"}, {0: 0, 1: 0})
    with pytest.raises(FlagError):
        universal_activation(collapse)


def test_homogeneous_spaces():
    sub = MORPHISMS["Z2->Z4"]
    Z4 = sub.target
    law = homogeneous_space(Z4, sub)
    assert len(law.E) == 2
    assert len({law.act(1, x) for x in law.E}) == 2  # the generator moves both cosets
    whole = homogeneous_space(Z4, identity_morphism(Z4))
    assert len(whole.E) == 1
    omega = MORPHISMS["omega_Z3"]
    units = homogeneous_space(omega.target, omega)
    assert len(units.E) == 3
    assert all(units.act(g, x) != x for g in (1, 2) for x in units.E)


@pytest.mark.parametrize("name", ["Z2->Z4", "omega_Z2", "b1->b2", "pr_Z2xb2", "fix_Z2"])
def test_activation_is_universal(name):
    f = MORPHISMS[name]
    act = universal_activation(f)
    n, unique = certify_universality(f, act)
    assert n > 0 and unique
    c = classify_morphism(f)
    if c.hypo_actor:
        assert classify_morphism(act.h1).i_equivalence
    if c.hyper_actor:
        assert classify_morphism(act.h1).s_equivalence
    G, H = f.target, f.source
    pts, arrows = oracles.activation_counts(dict(G.arrows), G.compose, G.inverse,
                                            dict(H.arrows), f.f0, f.f1)
    assert (pts, arrows) == (len(act.H1.objects), len(act.H1.arrows))


# ---------------------------------------------------------------- cocycles

def test_cover_groupoid_counts():
    R = build_cover_groupoid(cycle_cover())
    assert len(R.objects) == 6 and len(R.arrows) == 12


def test_twisted_cocycle_gives_a_connected_double_cover():
    res = torsor_from_cocycle(cycle_cocycle(True))
    assert len(res.P) == 6 and len(res.gauge.G.arrows) == 18
    assert not res.split


def test_flat_cocycle_splits():
    c = cycle_cocycle(False)
    res = torsor_from_cocycle(c)
    assert res.split and len(res.P) == 6
    assert cohomologous(c, c)


def test_twisted_and_flat_are_not_cohomologous():
    assert not cohomologous(cycle_cocycle(True), cycle_cocycle(False))


def test_one_piece_cover_is_always_trivial():
    cover = Cover((0, 1), ((0, 1),))
    c = cocycle_from_table(cover, Z3, {})
    res = torsor_from_cocycle(c)
    assert res.split and len(res.P) == 2 * 3


def test_cocycle_identity_violation_names_the_triple():
    cover = Cover((0,), ((0,), (0,), (0,)))
    table = {(j, i, 0): (1 if {i, j} == {0, 1} else 0) for i in range(3) for j in range(3) if i != j}
    with pytest.raises(CocycleError) as err:
        cocycle_from_table(cover, Z2, table)
    assert err.value.witness is not None and len(err.value.witness) == 4


def test_cover_must_cover():
    with pytest.raises(GroupoidError):
        Cover((0, 1, 2), ((0, 1),))


def test_sections_reproduce_the_bundle():
    h, action, points = gauge_example()
    res = gauge_groupoid(h, action, points)
    cover = Cover(res.B, tuple((b,) for b in res.B) + ((res.B[0],),))
    section = {(0, res.B[0]): 0, (1, res.B[1]): 2, (2, res.B[0]): 1}
    c = cocycle_of_sections(h, action, cover, section)
    t = torsor_from_cocycle(c)
    assert len(t.P) == len(points)
    # an equivariant bijection between the rebuilt torsor and P
    found = False
    for perm in itertools.permutations(points):
        m = dict(zip(t.P, perm))
        if all(m[t.action.act(g, p)] == action[(g, m[p])] for g in h.arrows for p in t.P):
            found = True
            break
    assert found


# ---------------------------------------------------------------- corpus properties

@pytest.mark.parametrize("nm", ACTORS, ids=lambda nm: nm.name)
def test_conjugation_properties(nm):
    b = conjugate_principal(nm.morphism)
    assert check_butterfly(b).ok
    # orbits of each wing on the shared base are the objects of the other side
    assert len(orbits(b.R)) == len(b.Gp.objects)
    assert len(orbits(b.Rp)) == len(b.G.objects)
    assert check_transversality(b.K, b.i, b.ip)
    laws = pregroupoid_laws(b)
    assert laws.exchange and laws.decomposition
    if len(orbits(b.G)) == 1:
        assert len(orbits(b.Gp)) == 1
    b2 = conjugate_principal(b.rp)
    assert find_isomorphism(b2.Gp, b.G) is not None
    dc = double_conjugation_isos(b, b2)
    assert dc.psi_G.is_iso() and dc.psi_R.is_iso()


def test_transversality_fails_for_a_non_actor():
    R = principal_groupoid({0: 0, 1: 0, 2: 1})
    b = conjugate_principal(transitor(R))
    assert not classify_morphism(b.r).actor
    assert not b.flags["transverse"]
