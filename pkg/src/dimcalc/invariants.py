"""Bottom-up inference of dimension invariants for pullback / polynomial towers.

The recursion rules:

* pullback R = phi^-1(D) over (T, M):
  ``dim R = max(dim T, dim D + ht M)`` and
  ``dim_v R = max(dim_v T, dim_v D + dim_v T_M + (r - s))``
  with r = t.d.(T/M), s = t.d.(D);
* R is AF exactly when T and D are AF and r = s;
* polynomial rings: ``dim_v A[n] = dim_v A + n`` always, and for a pullback
  over an AF-domain T with ht M = dim T,
  ``dim R[n] = dim D[n] + ht M + min(n, r - s)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .model import (
    AFLeaf, AlgebraExpr, BaseK, DimValue, FieldLeaf, HypothesisNotMet,
    InvariantBundle, PolyExt, Pullback, TriState,
    dmax, exact, flatten_poly, is_field, maximal_data, tdeg,
)
from .trace import Check, Trace

__all__ = [
    "tdeg", "krull_dim", "valuative_dim", "af_status", "jaffard_status",
    "maximal_data", "ht_m_poly", "invariants", "krull_dim_traced",
    "valuative_dim_traced", "pullback_params", "is_af",
]


def is_af(expr: AlgebraExpr) -> bool:
    return af_status(expr) is TriState.YES


def _excess(p: Pullback) -> int:
    """t.d.(K:D) = r - s."""
    return maximal_data(p.T).residue_tdeg - tdeg(p.D)


@lru_cache(maxsize=None)
def af_status(expr: AlgebraExpr) -> TriState:
    if isinstance(expr, (BaseK, FieldLeaf, AFLeaf)):
        return TriState.YES
    if isinstance(expr, Pullback):
        st, sd = af_status(expr.T), af_status(expr.D)
        # iff-characterisation: each failing conjunct alone refutes AF-ness
        if _excess(expr) > 0 or st is TriState.NO or sd is TriState.NO:
            return TriState.NO
        if st is TriState.YES and sd is TriState.YES:
            return TriState.YES
        return TriState.UNKNOWN
    if isinstance(expr, PolyExt):
        base, n = flatten_poly(expr)
        if af_status(base) is TriState.YES:
            return TriState.YES
        if isinstance(base, Pullback) and is_af(base.T) and is_af(base.D):
            # R[n] is AF iff n >= r - s
            return TriState.YES if n >= _excess(base) else TriState.NO
        return TriState.UNKNOWN
    raise TypeError(f"not an algebra term: {expr!r}")


@lru_cache(maxsize=None)
def krull_dim_traced(expr: AlgebraExpr) -> Trace:
    if isinstance(expr, (BaseK, FieldLeaf)):
        return Trace("K-field", exact(0))
    if isinstance(expr, AFLeaf):
        return Trace("K-leaf", exact(expr.dim))
    if isinstance(expr, Pullback):
        m = maximal_data(expr.T)
        kt, kd = krull_dim_traced(expr.T), krull_dim_traced(expr.D)
        value = dmax(kt.value, kd.value + m.height)
        return Trace("K-pullback", value, children=(kt, kd),
                     notes=(f"max{{{kt.value}, {kd.value} + {m.height}}}",))
    if isinstance(expr, PolyExt):
        return _krull_poly(expr)
    raise TypeError(f"not an algebra term: {expr!r}")


def _krull_poly(expr: PolyExt) -> Trace:
    base, n = flatten_poly(expr)
    kb = krull_dim_traced(base)
    if jaffard_status(base) is TriState.YES and kb.value.is_exact:
        return Trace("K-poly-jaffard", kb.value + n, (Check("base is Jaffard", True),),
                     children=(kb,))
    if isinstance(base, Pullback) and is_af(base.T):
        m = maximal_data(base.T)
        kt = krull_dim(base.T)
        if kt.is_exact and kt.value == m.height:
            kdn = krull_dim_traced(PolyExt(base.D, n))
            shift = min(n, _excess(base))
            return Trace(
                "K-poly-pullback", kdn.value + m.height + shift,
                (Check("T AF-certified", True), Check("ht M = dim T", True)),
                children=(kdn,),
                notes=(f"dim D[{n}] + ht M + min({n}, r - s) = "
                       f"{kdn.value} + {m.height} + {shift}",))
    if af_status(expr) is TriState.YES:
        vb = valuative_dim(base)
        if vb.is_exact:
            return Trace("K-poly-af", vb + n, (Check("polynomial ring AF-certified", True),))
    vb = valuative_dim(base)
    return Trace("K-poly-bounds", DimValue(kb.value.lo + n, vb.hi + n), children=(kb,),
                 notes=("dim A + n <= dim A[n] <= dim_v A + n",))


def krull_dim(expr: AlgebraExpr) -> DimValue:
    return krull_dim_traced(expr).value


def _vdim_localization(T: AlgebraExpr) -> DimValue:
    """dim_v T_M: exact when T is AF (its localizations are Jaffard).

    Otherwise somewhere in [ht M, dim_v T]; the top is also capped by t.d. T - r,
    since a valuation overring of T_M centred on P has dim <= t.d. T - t.d.(T/P).
    """
    m = maximal_data(T)
    if is_af(T):
        return exact(m.height)
    hi = min(valuative_dim(T).hi, tdeg(T) - m.residue_tdeg)
    return DimValue(m.height, max(m.height, hi))


@lru_cache(maxsize=None)
def valuative_dim_traced(expr: AlgebraExpr) -> Trace:
    if isinstance(expr, (BaseK, FieldLeaf)):
        return Trace("V-field", exact(0))
    if isinstance(expr, AFLeaf):
        return Trace("V-leaf", exact(expr.dim))
    if isinstance(expr, PolyExt):
        base, n = flatten_poly(expr)
        vb = valuative_dim_traced(base)
        return Trace("V-poly", vb.value + n, children=(vb,))
    if isinstance(expr, Pullback):
        vt, vd = valuative_dim_traced(expr.T), valuative_dim_traced(expr.D)
        vloc = _vdim_localization(expr.T)
        e = _excess(expr)
        value = dmax(vt.value, vd.value + vloc + e)
        return Trace("V-pullback", value, children=(vt, vd),
                     notes=(f"max{{{vt.value}, {vd.value} + {vloc} + {e}}}",))
    raise TypeError(f"not an algebra term: {expr!r}")


def valuative_dim(expr: AlgebraExpr) -> DimValue:
    return valuative_dim_traced(expr).value


def jaffard_status(expr: AlgebraExpr) -> TriState:
    if af_status(expr) is TriState.YES:
        return TriState.YES
    k, v = krull_dim(expr), valuative_dim(expr)
    if k.is_exact and v.is_exact:
        return TriState.YES if k == v else TriState.NO
    if k.hi < v.lo:
        return TriState.NO
    return TriState.UNKNOWN


def ht_m_poly(p: AlgebraExpr, n: int) -> int:
    """Height of M[n] in R[n]: ht M + min(n, r - s), valid when T_M is locally Jaffard."""
    if not isinstance(p, Pullback):
        raise HypothesisNotMet("ht M[n] needs a pullback")
    if not is_af(p.T):
        raise HypothesisNotMet("T is not AF-certified, so T_M is not known to be locally Jaffard")
    return maximal_data(p.T).height + min(n, _excess(p))


def pullback_params(p: AlgebraExpr) -> Optional[dict]:
    """The five numbers (d, d', t, r, s) of a pullback, or None if any is not exact."""
    if not isinstance(p, Pullback):
        return None
    dt, dd = krull_dim(p.T), krull_dim(p.D)
    if not (dt.is_exact and dd.is_exact):
        return None
    m = maximal_data(p.T)
    return {"d": dt.value, "dp": dd.value, "t": tdeg(p.T), "r": m.residue_tdeg,
            "s": tdeg(p.D), "htM": m.height, "unique": m.unique}


def invariants(expr: AlgebraExpr) -> InvariantBundle:
    return InvariantBundle(
        tdeg=tdeg(expr),
        krull_dim=krull_dim(expr),
        valuative_dim=valuative_dim(expr),
        is_af=af_status(expr),
        is_jaffard=jaffard_status(expr),
        is_domain=True,
        is_field=is_field(expr),
        maximal=maximal_data(expr),
    )
