import random

import pytest
from hypothesis import given, strategies as st

from dipcalc import oracles
from dipcalc.acceptance import random_set_square
from dipcalc.diptych import (
    FLAVORS, Diptych, FlavorError, Prediptych, build_square_diptych, check_diptych,
    check_prediptych, classify_square, ordinal_prediptych, set_diptych, set_prediptych,
    trivial_prediptych,
)
from dipcalc.fincat import CategoryError, FnArrow, ShapeError, Square, set_skeleton, surjective

SET3 = set_diptych(3)


def fn(src, tgt, *images):
    return FnArrow(src, tgt, tuple(images))


# ---------------------------------------------------------------- prediptychs

def test_injections_and_surjections_form_a_prediptych():
    assert check_prediptych(set_prediptych(3)).ok


def test_all_arrows_as_good_monos_breaks_axiom_i():
    rep = check_prediptych(set_prediptych(3, "corrupt"))
    assert "axiom (i)" in rep.kinds()
    witnesses = [v.arrows for v in rep if v.kind == "axiom (i)"]
    assert (fn(2, 1, 0, 0),) in witnesses


def test_trivial_structure_is_a_prediptych():
    assert check_prediptych(trivial_prediptych(set_skeleton(2))).ok


def test_unknown_variants_raise():
    with pytest.raises(CategoryError):
        set_prediptych(2, "weird")
    with pytest.raises(CategoryError):
        ordinal_prediptych(2, "x")


# ---------------------------------------------------------------- diptychs

def test_set_skeleton_is_a_diptych():
    assert check_diptych(SET3).ok


def test_split_surjections_give_a_diptych():
    assert check_diptych(set_diptych(3, "split")).ok


def test_corrupt_variant_fails_with_witness():
    rep = check_diptych(set_diptych(3, "corrupt"))
    first = next(iter(rep))
    assert first.kind == "axiom (i)" and first.arrows


@pytest.mark.parametrize("variant", ["trivial", "i"])
def test_ordinal_two_diptychs(variant):
    assert check_diptych(Diptych.with_products(ordinal_prediptych(2, variant))).ok


def test_ordinal_two_with_every_arrow_good_epi():
    # The cospan (0->1, 0->1) has pullback apex 0 but its pushout is 1, not
    # a pushout of the pullback square, so descent and axiom (vi) fail here.
    rep = check_diptych(Diptych.with_products(ordinal_prediptych(2, "s")))
    assert rep.kinds() == {"axiom (v)(b)", "axiom (vi)"}


def test_ordinal_s_arrow_is_a_good_epi():
    p = ordinal_prediptych(2, "s")
    assert (0, 1) in p.Ds and (0, 1) not in p.Di


# ---------------------------------------------------------------- squares

def test_identity_square_classification():
    e = SET3.cat.identity[2]
    k = classify_square(SET3, (e, e, e, e))
    assert k.gpb and k.ipb and k.spb and k.s_exact


def test_good_mono_top_gives_ipb():
    # 1 -> 2 injective on top, anything commuting on the left
    sq = Square(fn(1, 2, 0), fn(1, 1, 0), fn(2, 1, 0, 0), fn(1, 1, 0))
    k = classify_square(SET3, sq)
    assert k.commutes and k.ipb


def test_kernel_pair_square_is_s_exact():
    # kernel pair of {0,1} -> {0}; a 2+2 fibre split would need an 8-point apex
    d = set_diptych(4)
    sq = Square(fn(4, 2, 0, 1, 0, 1), fn(4, 2, 0, 0, 1, 1), fn(2, 1, 0, 0), fn(2, 1, 0, 0))
    k = classify_square(d, sq)
    assert k.gpb and k.s_exact


def test_non_square_rejected():
    with pytest.raises(ShapeError):
        classify_square(SET3, (fn(1, 2, 0), fn(1, 2, 0), fn(1, 2, 0), fn(1, 2, 0)))


def test_non_commuting_square_has_no_flags():
    sq = Square(fn(1, 2, 0), fn(1, 2, 1), fn(2, 2, 0, 1), fn(2, 2, 0, 1))
    k = classify_square(SET3, sq)
    assert not (k.commutes or k.ipb or k.gpb or k.spb or k.s_exact)


# ---------------------------------------------------------------- square diptychs

@pytest.mark.parametrize("flavor", FLAVORS)
def test_square_flavors_are_prediptychs(flavor):
    assert check_prediptych(build_square_diptych(set_diptych(2), flavor)).ok


def test_main_flavor_good_epis_are_spb_hs_squares():
    d = set_diptych(2)
    p = build_square_diptych(d, "main")
    for sq in p.cat.arrows:
        k = classify_square(d, sq)
        assert (sq in p.Ds) == (k.hs and k.spb)


def test_identity_squares_are_isos_in_every_flavor():
    d = set_diptych(2)
    for flavor in FLAVORS:
        p = build_square_diptych(d, flavor)
        for e in p.cat.identity.values():
            assert e in p.Di and e in p.Ds


def test_unknown_flavor():
    with pytest.raises(FlavorError):
        build_square_diptych(set_diptych(2), "sideways")


# ---------------------------------------------------------------- properties

seeds = st.integers(0, 2**32 - 1)


def _square(seed):
    return random_set_square(random.Random(seed), SET3, 3)


@given(seeds)
def test_gpb_is_ipb_and_spb(seed):
    k = classify_square(SET3, _square(seed))
    assert k.gpb == (k.ipb and k.spb)


@given(seeds)
def test_s_exact_implies_gpb_with_good_epis(seed):
    sq = _square(seed)
    k = classify_square(SET3, sq)
    if k.s_exact:
        assert k.gpb and all(a in SET3.Ds for a in sq)


@given(seeds)
def test_parallel_transfer(seed):
    sq = _square(seed)
    k = classify_square(SET3, sq)
    if k.ipb and sq.right in SET3.Di:
        assert sq.left in SET3.Di
    if k.spb and sq.right in SET3.Ds:
        assert sq.left in SET3.Ds


@given(seeds)
def test_all_good_epi_gpb_squares_are_s_exact(seed):
    sq = _square(seed)
    k = classify_square(SET3, sq)
    if k.gpb and all(a in SET3.Ds for a in sq):
        assert k.s_exact


@given(seeds)
def test_classifier_agrees_with_brute_force(seed):
    sq = _square(seed)
    k = classify_square(SET3, sq)
    ref = oracles.set_square_oracle((sq.top.src, sq.top.tgt, sq.left.tgt, sq.bottom.tgt),
                                    sq.top.images, sq.left.images, sq.right.images,
                                    sq.bottom.images, 3)
    for flag in ("commutes", "ipb", "spb", "gpb", "s_exact", "pullback"):
        assert getattr(k, flag) == ref[flag], flag


@given(st.sets(st.sampled_from(sorted(SET3.cat.arrows)), max_size=6))
def test_extra_good_monos_that_are_surjective_break_axiom_i(extra):
    c = SET3.cat
    inj = {a for a in c.arrows if len(set(a.images)) == len(a.images)}
    surj = {a for a in c.arrows if surjective(a)}
    p = Prediptych(c, inj | extra, surj)
    offending = {a for a in extra if a in surj and a not in inj}
    rep = check_prediptych(p)
    if offending:
        assert "axiom (i)" in rep.kinds()
