import pytest
from hypothesis import given, strategies as st

from dimcalc.model import (
    AFLeaf, BaseK, DimValue, FieldLeaf, InternalConsistencyError, MaximalIdealData, PolyExt, Pullback,
    TriState, dmax, dmin, exact, flatten_poly, is_field, maximal_data,
    pullback_depth, tdeg, validate,
)
from strategies import terms

intervals = st.tuples(st.integers(0, 20), st.integers(0, 20)).map(
    lambda p: DimValue(min(p), max(p)))


class TestDimValue:
    def test_rejects_inverted_interval(self):
        with pytest.raises(ValueError):
            DimValue(3, 2)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DimValue(-1, 0)

    def test_value_of_interval_raises(self):
        with pytest.raises(ValueError):
            DimValue(1, 2).value

    def test_json_shapes(self):
        assert exact(4).to_json() == {"exact": 4}
        assert DimValue(5, 6).to_json() == {"interval": [5, 6]}

    def test_str(self):
        assert str(exact(3)) == "3"
        assert str(DimValue(5, 6)) == "[5, 6]"

    @given(intervals, intervals)
    def test_addition_is_boundwise(self, a, b):
        s = a + b
        assert (s.lo, s.hi) == (a.lo + b.lo, a.hi + b.hi)
        assert a + b == b + a

    @given(intervals, st.integers(0, 10))
    def test_add_int(self, a, n):
        assert a + n == DimValue(a.lo + n, a.hi + n)
        assert n + a == a + n

    @given(intervals, intervals)
    def test_max_min_bracket_members(self, a, b):
        hi, lo = dmax(a, b), dmin(a, b)
        for x in range(a.lo, a.hi + 1):
            for y in range(b.lo, b.hi + 1):
                assert hi.contains(max(x, y))
                assert lo.contains(min(x, y))

    @given(intervals, st.integers(0, 20))
    def test_clamp(self, a, bound):
        if bound < a.lo:
            with pytest.raises(InternalConsistencyError):
                a.clamp_hi(bound)
        else:
            assert a.clamp_hi(bound) == DimValue(a.lo, min(a.hi, bound))


def test_tristate_refuses_truthiness():
    with pytest.raises(TypeError):
        bool(TriState.UNKNOWN)


class TestValidate:
    def test_af_identity_violation(self):
        bad = AFLeaf(3, 1, MaximalIdealData(1, 1))
        assert any("AF identity" in v.message for v in validate(bad))

    def test_residue_too_small_for_d(self):
        p = Pullback(AFLeaf(2, 1, MaximalIdealData(1, 1)), FieldLeaf(2))
        assert any("exceeds residue" in v.message for v in validate(p))

    def test_t_without_maximal(self):
        assert validate(Pullback(AFLeaf(2, 1), BaseK()))

    def test_poly_zero(self):
        assert validate(PolyExt(FieldLeaf(2), 0))

    def test_height_zero_maximal(self):
        assert validate(AFLeaf(2, 1, MaximalIdealData(0, 2)))

    def test_dim_above_tdeg(self):
        assert validate(AFLeaf(1, 2))

    def test_violation_path(self):
        p = Pullback(AFLeaf(2, 1, MaximalIdealData(1, 1)), AFLeaf(1, 1, MaximalIdealData(1, 1)))
        [v] = validate(p)
        assert v.path == ("D",)

    @given(terms())
    def test_generated_terms_are_valid(self, e):
        assert validate(e) == []


class TestStructure:
    def test_tdeg_additive(self):
        assert tdeg(PolyExt(PolyExt(FieldLeaf(2), 1), 3)) == 6

    def test_flatten_poly(self):
        assert flatten_poly(PolyExt(PolyExt(BaseK(), 2), 1)) == (BaseK(), 3)

    def test_pullback_tdeg_is_tdeg_T(self):
        assert tdeg(Pullback(AFLeaf(4, 1, MaximalIdealData(1, 3)), FieldLeaf(1))) == 4

    def test_is_field(self):
        assert is_field(BaseK()) and is_field(FieldLeaf(3)) and is_field(AFLeaf(2, 0))
        assert not is_field(AFLeaf(2, 1))

    def test_maximal_through_pullback_tower(self):
        inner = Pullback(AFLeaf(2, 1, MaximalIdealData(1, 1, True)), BaseK())
        outer = Pullback(AFLeaf(4, 1, MaximalIdealData(1, 3, True)), inner)
        assert maximal_data(outer) == MaximalIdealData(2, 0, True)
        assert pullback_depth(outer) == 2

    def test_structural_equality(self):
        mk = lambda: Pullback(AFLeaf(3, 1, MaximalIdealData(1, 2, True)), FieldLeaf(1))
        assert mk() == mk() and hash(mk()) == hash(mk())
