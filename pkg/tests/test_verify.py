from __future__ import annotations

import pytest

from spectra_lab.corpus import load_corpus
from spectra_lab.errors import ConstructionError
from spectra_lab.verify import SUITES, Suite, run_suite

SMALL = {
    "ring": "zmod:1..24+products:depth2:2..4",
    "poset": "posets:4",
    "monomial": "monomial",
}


def test_registry_names():
    assert set(SUITES) == {
        "zero-dim-criteria", "mp-equivalences", "gelfand-criteria", "lessened-product", "nprime-quotient",
        "locally-lessened-mp", "purified-regular", "star-lemmas", "decompositions", "poset-duality",
        "retraction-uniqueness", "monomial-examples",
    }


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_on_small_corpora(name):
    suite = SUITES[name]
    res = run_suite(name, SMALL[suite.kinds[0]])
    assert res.ok, res.first_failure
    assert res.failed == 0 and res.passed > 0


def test_failures_are_reported_with_first_witness(monkeypatch):
    def always_wrong(s):
        return "deliberate" if s.value.n == 6 else None

    monkeypatch.setitem(SUITES, "broken", Suite("broken", "test", "zmod:1..8", always_wrong))
    res = run_suite("broken")
    assert not res.ok
    assert res.failed == 1 and res.first_failure == {"subject": "Z/6", "detail": "deliberate"}


def test_corpus_specs():
    assert [s.expr for s in load_corpus("zmod:2..4")] == ["Z/2", "Z/3", "Z/4"]
    assert [s.expr for s in load_corpus("gf:2..7")] == ["GF(2)", "GF(3)", "GF(5)", "GF(7)"]
    assert len(load_corpus("products:depth2")) == 36
    assert len(load_corpus("products:depth3:2..4")) == 10
    assert len(load_corpus("posets:3")) == 1 + 2 + 5
    assert "Z/12 / (4)" in {s.expr for s in load_corpus("quotients:zmod:12..12")}
    with pytest.raises(ConstructionError):
        load_corpus("zmod:5..2")
    with pytest.raises(ConstructionError):
        load_corpus("rings:all")


def test_quotient_expressions_rebuild():
    from spectra_lab.cli.dsl import build, parse
    from spectra_lab.ring import is_isomorphic

    for s in load_corpus("quotients:products:depth2:2..4")[:20]:
        assert is_isomorphic(build(parse(s.expr)), s.value)
