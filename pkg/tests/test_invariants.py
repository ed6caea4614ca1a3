import pytest
from hypothesis import given

from dimcalc.catalog import (
    AF_PULLBACK, DVR_OVER_SUBFIELD, PVD_OVER_K, PVD_TOWER, localized_line,
)
from dimcalc.invariants import (
    af_status, ht_m_poly, invariants, jaffard_status, krull_dim,
    krull_dim_traced, pullback_params, valuative_dim,
)
from dimcalc.model import (
    AFLeaf, BaseK, DimValue, FieldLeaf, HypothesisNotMet, MaximalIdealData,
    PolyExt, Pullback, TriState, exact, tdeg,
)
from strategies import terms

YES, NO = TriState.YES, TriState.NO


def test_field_bundle():
    b = invariants(FieldLeaf(2))
    assert (b.tdeg, b.krull_dim, b.valuative_dim, b.is_af) == (2, exact(0), exact(0), YES)
    assert b.is_field and b.maximal is None


def test_af_leaf_dims():
    leaf = AFLeaf(5, 3, MaximalIdealData(3, 2))
    assert krull_dim(leaf) == valuative_dim(leaf) == exact(3)


@pytest.mark.parametrize("ring, dim, vdim, af", [
    (DVR_OVER_SUBFIELD, 1, 2, NO),
    (PVD_OVER_K, 1, 2, NO),
    (PVD_TOWER, 2, 4, NO),
    (AF_PULLBACK, 2, 2, YES),
])
def test_catalog_rings(ring, dim, vdim, af):
    assert krull_dim(ring) == exact(dim)
    assert valuative_dim(ring) == exact(vdim)
    assert af_status(ring) is af


def test_non_af_pullbacks_are_not_jaffard():
    assert jaffard_status(DVR_OVER_SUBFIELD) is NO
    assert jaffard_status(AF_PULLBACK) is YES


def test_pvd_tower_maximal_ideal():
    assert invariants(PVD_TOWER).maximal == MaximalIdealData(2, 0, True)


def test_d_plus_m_over_algebraic_subfield_is_af():
    # residue field and D have the same tdeg, so r = s
    assert af_status(Pullback(localized_line(2), FieldLeaf(2))) is YES


class TestPolynomialRings:
    def test_vdim_adds_n(self):
        assert valuative_dim(PolyExt(DVR_OVER_SUBFIELD, 3)) == exact(5)

    def test_af_threshold(self):
        # r - s = 1 for the DVR over k(X)
        assert af_status(PolyExt(DVR_OVER_SUBFIELD, 1)) is YES
        assert af_status(PolyExt(PVD_TOWER, 1)) is TriState.UNKNOWN

    def test_af_threshold_not_reached(self):
        p = Pullback(localized_line(3), BaseK())  # r - s = 3
        assert af_status(PolyExt(p, 2)) is NO
        assert af_status(PolyExt(p, 3)) is YES

    def test_pullback_poly_dim(self):
        p = Pullback(localized_line(3), BaseK())
        t = krull_dim_traced(PolyExt(p, 2))
        assert t.rule == "K-poly-pullback"
        # dim k[2] + 1 + min(2, 3)
        assert t.value == exact(5)

    def test_jaffard_base_shifts_by_n(self):
        t = krull_dim_traced(PolyExt(AFLeaf(3, 2), 2))
        assert t.value == exact(4)

    def test_height_of_extended_maximal(self):
        assert ht_m_poly(AF_PULLBACK, 2) == 1
        assert ht_m_poly(PVD_OVER_K, 4) == 2

    def test_height_needs_af_t(self):
        with pytest.raises(HypothesisNotMet):
            ht_m_poly(Pullback(Pullback(localized_line(2), BaseK()), BaseK()), 1)
        with pytest.raises(HypothesisNotMet):
            ht_m_poly(FieldLeaf(1), 1)


def test_pullback_params():
    assert pullback_params(DVR_OVER_SUBFIELD) == {
        "d": 1, "dp": 0, "t": 3, "r": 2, "s": 1, "htM": 1, "unique": True}
    assert pullback_params(FieldLeaf(2)) is None


@given(terms())
def test_dim_le_vdim(e):
    k, v = krull_dim(e), valuative_dim(e)
    assert k.lo <= v.lo and k.hi <= v.hi


@given(terms())
def test_af_implies_jaffard(e):
    if af_status(e) is YES:
        assert jaffard_status(e) is YES
        assert krull_dim(e) == valuative_dim(e)


@given(terms())
def test_vdim_bounded_by_tdeg(e):
    assert valuative_dim(e).hi <= tdeg(e)


def test_interval_values_stay_ordered():
    v = valuative_dim(Pullback(PVD_TOWER, BaseK()))
    assert isinstance(v, DimValue) and v.lo <= v.hi
