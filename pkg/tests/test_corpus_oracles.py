"""The brute-force references checked on hand-computed cases, plus corpus sanity."""

from dipcalc import oracles
from dipcalc.corpus import (
    MAX_ARROWS, MAX_OBJECTS, corpus_groupoids, corpus_morphisms, corpus_principal_actors,
    gauge_example, standard_corpus, table_mutations,
)
from dipcalc.groupoid import check_groupoid, cyclic_group, is_principal
from dipcalc.morphism import classify_morphism


def test_square_oracle_on_a_kernel_pair():
    # {0,1} -> {0} with itself: apex 4, projections in pair order
    ref = oracles.set_square_oracle((4, 2, 2, 1), (0, 1, 0, 1), (0, 0, 1, 1), (0, 0), (0, 0), 4)
    assert ref["gpb"] and ref["s_exact"]


def test_square_oracle_on_a_non_pullback():
    ref = oracles.set_square_oracle((1, 2, 2, 1), (0,), (0,), (0, 0), (0, 0), 3)
    assert ref["commutes"] and ref["ipb"] and not ref["pullback"] and not ref["spb"]


def test_square_oracle_non_commuting():
    ref = oracles.set_square_oracle((1, 2, 2, 2), (0,), (1,), (0, 1), (0, 1), 2)
    assert not ref["commutes"] and not ref["gpb"]


def test_axiom_oracle():
    g = cyclic_group(3)
    assert oracles.groupoid_axioms_hold(dict(g.arrows), dict(g.cat.identity), g.cat.comp, g.inverse)
    inv = dict(g.inverse)
    inv[1] = 1
    assert not oracles.groupoid_axioms_hold(dict(g.arrows), dict(g.cat.identity), g.cat.comp, inv)


def test_coset_oracle_for_z2_in_z4():
    # four points (g, *) glued by the subgroup {0, 2}: two cosets, each with four arrows
    mult = lambda a, b: (a + b) % 4  # noqa: E731
    g_arrows = {k: ("*", "*") for k in range(4)}
    pts, arrows = oracles.activation_counts(g_arrows, mult, {k: (-k) % 4 for k in range(4)},
                                            {0: ("*", "*"), 1: ("*", "*")}, {"*": "*"}, {0: 0, 1: 2})
    assert (pts, arrows) == (2, 8)


def test_torsor_oracle_on_a_trivial_table():
    mult = lambda a, b: (a + b) % 2  # noqa: E731
    assert oracles.torsor_counts([(0,)], {}, (0, 1), mult) == (2, 2)


def test_free_orbit_counts():
    h, action, points = gauge_example()
    assert oracles.free_orbit_counts(h.arrows, action, points) == {
        "base": 2, "gauge_arrows": 8, "middle_arrows": 32}


def test_cocycle_relation_oracle():
    mult = lambda a, b: (a + b) % 2  # noqa: E731
    inv = lambda a: a  # noqa: E731
    pieces = [(0,), (0,)]
    t = {(1, 0, 0): 1, (0, 1, 0): 1}
    zero = {(1, 0, 0): 0, (0, 1, 0): 0}
    assert oracles.cocycles_related(pieces, t, zero, (0, 1), mult, inv)


# ---------------------------------------------------------------- corpus

def test_corpus_size_and_bounds():
    gs = corpus_groupoids()
    assert len(gs) == 3601
    assert all(len(g.objects) <= MAX_OBJECTS and len(g.arrows) <= MAX_ARROWS for g in gs)
    assert len({g.name for g in gs}) == len(gs)


def test_seeded_subsample():
    a = [g.name for g in corpus_groupoids(seed=3, limit=10)]
    assert a == [g.name for g in corpus_groupoids(seed=3, limit=10)] and len(a) == 10


def test_standard_corpus_spread():
    gs = standard_corpus()
    assert len(gs) == 60 and all(check_groupoid(g).ok for g in gs)
    assert len({len(g.arrows) for g in gs}) >= 20
    assert sum(is_principal(g) for g in gs) > 0


def test_mutations_break_axioms():
    g = cyclic_group(3)
    muts = list(table_mutations(g, seed=1, limit=5))
    assert len(muts) == 5
    for (table, key, value), h in muts:
        assert table in ("comp", "inverse")
        assert not check_groupoid(h).ok


def test_corpus_morphisms_are_functors():
    ms = corpus_morphisms()
    assert len(ms) == 31
    assert all(nm.morphism.check().ok for nm in ms)


def test_principal_actor_corpus():
    for nm in corpus_principal_actors():
        r = nm.morphism
        assert is_principal(r.source) and r.surjective_on_objects()
        assert classify_morphism(r).actor
