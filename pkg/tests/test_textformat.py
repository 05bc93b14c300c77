import pytest
from hypothesis import given, strategies as st

from dipcalc.canonical import canonical_butterfly, delta_groupoid
from dipcalc.corpus import corpus_groupoids, cycle_cocycle, cycle_cover
from dipcalc.diptych import set_prediptych
from dipcalc.fincat import ordinal
from dipcalc.groupoid import cyclic_group, find_isomorphism
from dipcalc.morphism import ActionLaw
from dipcalc.textformat import (
    ConversionError, Document, ParseError, decode, encode, from_document, parse, serialize,
    to_document,
)

Z2_TEXT = serialize(to_document(cyclic_group(2)))


def test_document_without_objects():
    with pytest.raises(ParseError, match="no objects"):
        parse("kind category\n[objects]\n")


def test_z2_round_trips_bit_exactly():
    assert serialize(parse(Z2_TEXT)) == Z2_TEXT


def test_dangling_arrow_is_named():
    text = Z2_TEXT.replace("1 1 0\n", "1 7 0\n")
    with pytest.raises(ParseError, match="7") as err:
        parse(text)
    assert err.value.line > 0


def test_duplicate_ids():
    with pytest.raises(ParseError, match="duplicate"):
        parse("kind groupoid\n[objects]\n*\n*\n")


def test_unknown_kind_and_syntax():
    with pytest.raises(ParseError):
        parse("kind bogus\n")
    with pytest.raises(ParseError):
        decode("(1,2")
    with pytest.raises(ParseError):
        decode("a b")


def test_comments_are_ignored():
    text = "# a comment\n" + Z2_TEXT.replace("[arrows]\n", "[arrows]  # trailing\n")
    assert serialize(parse(text)) == Z2_TEXT


def test_serialization_is_canonical_under_row_order():
    doc = to_document(cyclic_group(3))
    doc.sections["comp"] = list(reversed(doc.sections["comp"]))
    assert serialize(doc) == serialize(to_document(cyclic_group(3)))


def test_unencodable_values():
    with pytest.raises(ConversionError):
        encode(True)
    with pytest.raises(ConversionError):
        encode("two words")
    with pytest.raises(ConversionError):
        to_document(object())


def test_every_kind_round_trips():
    g = cyclic_group(2)
    law = ActionLaw(g, (0, 1), {0: "*", 1: "*"}, {(a, p): (p + a) % 2 for a in g.arrows for p in (0, 1)})
    objs = [ordinal(3), set_prediptych(2), g, delta_groupoid(g)[1], law, cycle_cover(),
            cycle_cocycle(True)]
    for obj in objs:
        text = serialize(to_document(obj))
        back = from_document(parse(text))
        assert serialize(to_document(back, getattr(obj, "name", "") or "")) == text


def test_butterfly_manifest():
    b = canonical_butterfly(cyclic_group(2)).as_butterfly()
    doc = to_document(b)
    assert doc.kind == "butterfly"
    assert {r[0] for r in doc.rows("nodes")} == {"R", "Rp", "K", "G", "Gp"}
    text = serialize(doc)
    assert serialize(parse(text)) == text


# ---------------------------------------------------------------- properties

words = st.from_regex(r"[a-z][a-z0-9_]{0,4}", fullmatch=True)
ids = st.recursive(st.integers(-50, 50) | words,
                   lambda inner: st.lists(inner, max_size=3).map(tuple), max_leaves=8)


@given(ids)
def test_token_round_trip(value):
    assert decode(encode(value)) == value


@given(st.sampled_from([g for g in corpus_groupoids() if len(g.arrows) <= 12]))
def test_groupoid_documents_round_trip(g):
    text = serialize(to_document(g))
    assert serialize(parse(text)) == text
    back = from_document(parse(text))
    assert back.arrows == g.arrows
    assert all(back.compose(b, a) == g.compose(b, a) for b, a in g.cat.composable_pairs())
    assert find_isomorphism(back, g) is not None
