import io

import pytest

from dipcalc import textformat as tf
from dipcalc.cli import COMMANDS, FALSE, INPUT_ERROR, OK, main
from dipcalc.corpus import corpus_morphisms

MORPHISMS = {nm.name: nm.morphism for nm in corpus_morphisms()}


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue()


@pytest.fixture
def doc(tmp_path):
    """Write a catalog entry or an object to a file and return its path."""
    def make(entry, *extra):
        path = tmp_path / f"{entry if isinstance(entry, str) else entry.name}.txt"
        if isinstance(entry, str):
            code, _ = run("catalog", entry, "--emit", str(path), *extra)
            assert code == OK
        else:
            path.write_text(tf.serialize(tf.to_document(entry)), encoding="utf-8")
        return str(path)
    return make


def test_validate_set_diptych(doc):
    code, out = run("validate", "--input", doc("set", "--bound", "3"))
    assert code == OK and "valid=true" in out


def test_validate_corrupt_diptych_is_false(doc):
    code, out = run("validate", "--input", doc("set-corrupt", "--bound", "2"))
    assert code == FALSE and "violation axiom (i)" in out


def test_gauge_report(doc):
    code, out = run("gauge", "--input", doc("gauge-Z2"))
    assert code == OK
    assert "arrows(G)=8" in out and "arrows(K)=32" in out and "isotropy=2,2" in out


def test_classify_canonical_division(doc):
    code, out = run("classify-morphism", "--canonical", "--input", doc("Z2"))
    assert code == OK and "actor=true" in out.splitlines()


def test_classify_morphism_lines_are_sorted(doc):
    code, out = run("classify-morphism", "--input", doc(MORPHISMS["Z2->Z4"]))
    lines = out.splitlines()
    assert code == OK and lines == sorted(lines) and "i_faithful=true" in lines


def test_classify_square():
    code, out = run("classify-square", "--bound", "3", "--square", "(1,2,(0))", "(1,1,(0))",
                    "(2,1,(0,0))", "(1,1,(0))")
    assert code == OK and "ipb=true" in out


def test_classify_square_unknown_arrow():
    code, _ = run("classify-square", "--bound", "2", "--square", "a", "b", "c", "d")
    assert code == INPUT_ERROR


def test_nerve(doc):
    code, out = run("nerve", "--input", doc("banal3"))
    assert code == OK and "level1=9" in out and "exact=true" in out
    code, out = run("nerve", "--trunc", "2", "--input", doc("banal3"))
    assert code == OK and "exact=unchecked" in out


def test_butterfly_and_conjugate(doc, tmp_path):
    emitted = tmp_path / "b.txt"
    code, out = run("butterfly", "--input", doc("S3"), "--emit", str(emitted))
    assert code == OK and "verified=true" in out
    assert tf.parse(emitted.read_text()).kind == "butterfly"
    code, out = run("conjugate", "--input", doc("delta-Z2"))
    assert code == OK and "transverse=true" in out


def test_activate(doc):
    code, out = run("activate", "--input", doc(MORPHISMS["Z2->Z4"]))
    assert code == OK and "universal=true" in out and "objects(H1)=2" in out


def test_quotient_and_kernel(doc):
    code, out = run("quotient", "--input", doc(MORPHISMS["Z2->Z4"]))
    assert code == OK and "arrows(Q)=2" in out
    code, out = run("kernel", "--input", doc(MORPHISMS["pr_Z2xb2"]))
    assert code == OK and "normal=true" in out


def test_induce(doc):
    code, out = run("induce", "--input", doc("Z2"), "--along", "0", "*", "--along", "1", "*")
    assert code == OK and "arrows(H)=8" in out
    code, _ = run("induce", "--input", doc("Z2"), "--along", "0", "nowhere")
    assert code == INPUT_ERROR


def test_cocycle(doc):
    code, out = run("cocycle", "--input", doc("cocycle-twisted"), "--input", doc("cocycle-flat"))
    assert code == OK
    assert "points=6" in out and "arrows(gauge)=18" in out and "cohomologous=false" in out


def test_catalog_listing_and_output():
    code, out = run("catalog")
    assert code == OK and "gauge-Z2" in out.splitlines()
    code, out = run("catalog", "Z2")
    assert code == OK and out.startswith("kind groupoid")
    assert run("catalog", "nope")[0] == INPUT_ERROR


def test_input_errors(tmp_path):
    assert run("frobnicate")[0] == INPUT_ERROR
    assert run("validate")[0] == INPUT_ERROR
    assert run("validate", "--input", str(tmp_path / "missing.txt"))[0] == INPUT_ERROR
    bad = tmp_path / "bad.txt"
    bad.write_text("kind category\n[objects]\n", encoding="utf-8")
    assert run("validate", "--input", str(bad))[0] == INPUT_ERROR
    assert run("gauge", "--input", str(bad))[0] == INPUT_ERROR


def test_wrong_document_kind(doc):
    assert run("gauge", "--input", doc("Z2"))[0] == INPUT_ERROR


def test_output_is_deterministic(doc):
    path = doc("S3")
    assert run("butterfly", "--input", path) == run("butterfly", "--input", path)


def test_every_command_is_wired():
    from dipcalc.cli import HANDLERS
    assert set(HANDLERS) == set(COMMANDS)
