"""Dimension calculus for k-algebras built from pullbacks and polynomial extensions."""

from .model import (
    AFLeaf, BaseK, DimValue, FieldLeaf, InvariantBundle, MaximalIdealData,
    PolyExt, Pullback, TriState, validate,
)
from .invariants import (
    af_status, ht_m_poly, invariants, jaffard_status, krull_dim, maximal_data,
    tdeg, valuative_dim,
)
from .tensor import (
    alpha_values, compute_d, pair_lower_bounds, raw_pullback_pair_formula,
    tensor_jaffard, tensor_krull_dim, tensor_valuative_dim,
)

__all__ = [
    "AFLeaf", "BaseK", "DimValue", "FieldLeaf", "InvariantBundle", "MaximalIdealData",
    "PolyExt", "Pullback", "TriState", "validate",
    "af_status", "ht_m_poly", "invariants", "jaffard_status", "krull_dim",
    "maximal_data", "tdeg", "valuative_dim",
    "alpha_values", "compute_d", "pair_lower_bounds", "raw_pullback_pair_formula",
    "tensor_jaffard", "tensor_krull_dim", "tensor_valuative_dim",
]

__version__ = "0.1.0"
