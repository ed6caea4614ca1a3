import pytest

from dimcalc.harness import (
    PROPERTIES, GeneratorConfig, generate, generate_pairs, run_suites, shrink_pair,
)
from dimcalc.model import (
    AFLeaf, BaseK, FieldLeaf, PolyExt, Pullback, iter_subterms, pullback_depth,
    tdeg, validate,
)


def test_same_seed_same_terms():
    cfg = GeneratorConfig(seed=42, count=10)
    assert list(generate(cfg)) == list(generate(cfg))


def test_different_seed_differs():
    a = list(generate(GeneratorConfig(seed=1, count=20)))
    b = list(generate(GeneratorConfig(seed=2, count=20)))
    assert a != b


def test_config_rejects_zero_depth():
    with pytest.raises(ValueError):
        GeneratorConfig(max_depth=0)


def test_depth_one_emits_leaves_and_single_pullbacks():
    for e in generate(GeneratorConfig(max_depth=1, count=300)):
        assert pullback_depth(e) <= 1
        assert validate(e) == []


def test_terms_valid_and_bounded():
    cfg = GeneratorConfig(max_depth=3, max_tdeg=8, count=500, seed=3)
    for e in generate(cfg):
        assert validate(e) == []
        assert pullback_depth(e) <= 3
        assert tdeg(e) <= 8


def test_coverage():
    seen_kinds, flags = set(), set()
    for e in generate(GeneratorConfig(count=400)):
        for sub in iter_subterms(e):
            seen_kinds.add(type(sub))
            if isinstance(sub, AFLeaf) and sub.maximal is not None:
                flags.add(sub.maximal.unique)
    assert {BaseK, FieldLeaf, AFLeaf, PolyExt, Pullback} <= seen_kinds
    assert flags == {True, False}


def test_depth_two_reaches_pullback_over_pullback():
    towers = [e for e in generate(GeneratorConfig(max_depth=2, count=500))
              if isinstance(e, Pullback) and isinstance(e.D, Pullback)]
    # the PVD-tower shape: an AF leaf glued onto a pullback over a field
    assert any(isinstance(t.T, AFLeaf) and isinstance(t.D.T, AFLeaf)
               and isinstance(t.D.D, (BaseK, FieldLeaf)) for t in towers)


def test_pairs_include_self_pairs():
    pairs = generate_pairs(GeneratorConfig(count=200))
    assert any(a == b for a, b in pairs)


def test_shrink_reaches_minimal_failure():
    cfg = GeneratorConfig(count=200, seed=5)
    start = next((a, b) for a, b in generate_pairs(cfg)
                 if isinstance(a, Pullback) and pullback_depth(a) >= 1)
    a, b = shrink_pair(*start, fails=lambda x, y: isinstance(x, Pullback))
    assert isinstance(a, Pullback)
    assert a.T.tdeg == 1 and a.D == BaseK()
    assert b == BaseK()


def test_report_carries_shrunk_counterexample():
    props = {"X pullbacks fail": lambda a, b: not isinstance(a, Pullback)}
    report = run_suites(GeneratorConfig(count=50), props)
    r = report["X"]
    assert not report.ok and r.failed > 0
    assert r.counterexample[0].startswith("(pullback :T (af :tdeg 1")


def test_small_run_core_properties():
    report = run_suites(GeneratorConfig(count=150, seed=11))
    for key in ("P1", "P2", "P4", "P5", "P6", "P7", "S", "T", "G"):
        assert report[key].failed == 0, report.render()


def test_property_names_are_stable():
    assert [n.split()[0] for n in PROPERTIES] == [
        "P1", "P2", "P3", "P3'", "P4", "P5", "P6", "P7", "S", "T", "G"]
