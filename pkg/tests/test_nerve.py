import pytest
from hypothesis import given, strategies as st

from dipcalc.corpus import corpus_groupoids, table_mutations
from dipcalc.groupoid import GroupoidError, banal, check_groupoid, cyclic_group, null, symmetric_group
from dipcalc.nerve import (
    TruncationMismatch, nerve_exactness_check, special_squares, symmetric_nerve,
)

SMALL = [g for g in corpus_groupoids() if len(g.arrows) <= 8]


def test_banal_pair_levels():
    assert symmetric_nerve(banal([0, 1])).sizes() == (2, 4, 8, 16)


def test_z2_levels():
    assert symmetric_nerve(cyclic_group(2)).sizes() == (1, 2, 4, 8)


def test_null_levels_are_constant():
    assert symmetric_nerve(null([0, 1, 2])).sizes() == (3, 3, 3, 3)


def test_null_nerve_is_exact():
    assert nerve_exactness_check(symmetric_nerve(null([0, 1, 2])))


def test_s3_nerve_is_exact():
    assert nerve_exactness_check(symmetric_nerve(symmetric_group(3)))


def test_corrupted_source_map_is_detected():
    n = symmetric_nerve(banal([0, 1]))
    e = n.levels[1][1]
    wrong = next(x for x in n.levels[0] if x != n.apply((0,), e))
    assert not nerve_exactness_check(n.corrupted((0,), e, wrong))


def test_corrupted_face_map_is_detected():
    n = symmetric_nerve(cyclic_group(3))
    e = n.levels[2][4]
    wrong = next(x for x in n.levels[1] if x != n.apply((0, 1), e))
    assert not nerve_exactness_check(n.corrupted((0, 1), e, wrong))


def test_special_squares_catalogue():
    assert len(special_squares()) == 24


def test_invalid_groupoid_is_refused_by_default():
    g = banal([0, 1])
    _, bad = next(table_mutations(g, seed=0, limit=1))
    with pytest.raises(GroupoidError):
        symmetric_nerve(bad)


def test_level_mismatch_raises():
    n = symmetric_nerve(cyclic_group(2), top=1)
    e = n.levels[1][0]
    with pytest.raises(TruncationMismatch):
        n.apply((0, 2), e)


@given(st.sampled_from(SMALL))
def test_corpus_nerves_are_exact(g):
    assert nerve_exactness_check(symmetric_nerve(g))


@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_axiom_breaking_mutations_are_not_exact(g, seed):
    for _, h in table_mutations(g, seed=seed, limit=1):
        assert not check_groupoid(h).ok
        assert not nerve_exactness_check(symmetric_nerve(h, validate=False))
