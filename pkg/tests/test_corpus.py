import pytest

from contactlab import corpus
from contactlab.classify import ALMOST_COSYMPLECTIC, COSYMPLECTIC, LC, classify, solve_s
from contactlab.expr import parse
from contactlab.fileio import entry_to_dict, structure_from_dict
from contactlab.forms import KForm, interior
from contactlab.structure import is_normal, validate


def test_names():
    assert len(corpus.names()) >= 4
    assert {"example_dim3", "product", "product_rescaled", "example_dim5", "flat5"} <= set(corpus.names())


@pytest.mark.parametrize("name", corpus.names())
def test_entry_self_verifies(name):
    entry = corpus.get(name)
    assert corpus.verify_entry(entry) == []
    assert validate(entry.structure).ok


def test_unknown_name():
    with pytest.raises(KeyError):
        corpus.get("nope")


def test_get_is_cached():
    assert corpus.get("example_dim3") is corpus.get("example_dim3")


def test_example_dim3_classifies_lc(ex1):
    rep = classify(ex1.structure)
    assert rep.tags == [LC]
    assert not rep.rigidity.proportional


def test_product_variants(product, product_rescaled):
    rep = classify(product.structure)
    assert {COSYMPLECTIC, ALMOST_COSYMPLECTIC} <= set(rep.tags)
    s2 = product_rescaled.structure
    rep2 = corpus.classify_entry(product_rescaled)
    assert LC in rep2.tags
    assert rep2.f.is_zero()
    assert rep2.omega == -KForm.dx(s2.chart, "theta")
    r = rep2.rigidity
    assert r.alpha.is_zero() and r.proportional
    assert r.h == parse("-exp(theta)", s2.chart)
    # omega(xi') eta' with xi' = exp(theta) d_theta, eta' = exp(-theta) d theta
    assert s2.eta.scale(interior(s2.xi, rep2.omega).unwrap()) == rep2.omega


def test_example_dim5_other_b():
    entry = corpus.example_dim5("z1^2 + 1")
    s = entry.structure
    rep = classify(s, f=entry.candidates.f, omega=entry.candidates.omega)
    assert LC in rep.tags
    # lambda = -b' + b (1/2 - b)
    b = parse("z1^2 + 1", s.chart)
    assert rep.lam == -b.partial("z1") + b * (parse("1/2", s.chart) - b)
    assert entry.candidates.sigma == parse("z1^3/3 + z1", s.chart)


@pytest.mark.parametrize("b", ["x", "2", "exp(z1)"])
def test_example_dim5_rejects_bad_b(b):
    with pytest.raises(ValueError):
        corpus.example_dim5(b)


def test_flat_entries():
    for n in (1, 2, 3):
        entry = corpus.flat_cosymplectic(n)
        s = entry.structure
        assert is_normal(s)
        assert solve_s(s).is_zero()
        assert classify(s).tags[0] == COSYMPLECTIC
    with pytest.raises(ValueError):
        corpus.flat_cosymplectic(0)


@pytest.mark.parametrize("name", corpus.names())
def test_dump_roundtrip(name):
    entry = corpus.get(name)
    s, cand, got_name = structure_from_dict(entry_to_dict(entry))
    assert got_name == name
    assert s == entry.structure
    assert cand == entry.candidates
    copy = corpus.CorpusEntry(name + "_copy", s, cand, entry.expected, entry.notes)
    assert corpus.verify_entry(copy) == []
