"""Krull and valuative dimension of tensor products over k, with derivation traces.

``tensor_krull_dim`` tries the closed-form rules in a fixed order and returns
the first whose hypotheses hold; rules whose hypotheses fail are kept on the
trace as rejected records.  When nothing applies the result is a certified
interval.  Notation for a pullback R_i = phi_i^-1(D_i) over (T_i, M_i):
d = dim T, d' = dim D, t = t.d.(T), r = t.d.(T/M), s = t.d.(D).
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable, Optional

from .invariants import (
    ht_m_poly, is_af, jaffard_status, krull_dim, pullback_params,
    valuative_dim,
)
from .model import (
    AlgebraExpr, BaseK, DimValue, HypothesisNotMet, InternalConsistencyError,
    PreconditionViolated, Pullback, TriState, UnsupportedAlgebraClass, dmax,
    exact, is_field, maximal_data, tdeg,
)
from .trace import Check, Trace, rejected

log = logging.getLogger(__name__)

F1, F2, F3 = "F1-Sharp", "F2-Wadsworth", "F3-OneAF"
F4, F5, F6 = "F4-PullbackPair", "F5-PullbackRecursive", "F6-SelfTensor"
FB = "FB-Bounds"
IDENTITY = "I-BaseField"
V1, V2, V3 = "V1-PullbackPair", "V2-UpperBound", "V3-AFRing"
J1 = "J1-JaffardCriterion"
D_FIELD, D_AF, D_PULLBACK, D_ZERO = "D-field", "D-AF", "D-pullback", "D-zero"


# --------------------------------------------------------------------------
# D(s, d, A) = max over primes p of ht p[s] + min(s, d + t.d.(A/p))
# --------------------------------------------------------------------------


@lru_cache(maxsize=65536)
def compute_d(s: int, d: int, A: AlgebraExpr) -> Trace:
    if not (0 <= d <= s):
        raise PreconditionViolated(f"need 0 <= d <= s, got d={d}, s={s}")
    if s == 0:
        # only ht p survives; the max is dim A
        return Trace(D_ZERO, krull_dim(A), (Check("s = 0", True),))
    if is_af(A):
        # ht p[s] = ht p and t.d.(A/p) = t.d.(A) - ht p, maximised at ht p = dim A
        dim_a = krull_dim(A).value
        rule = D_FIELD if is_field(A) else D_AF
        return Trace(rule, exact(min(s + dim_a, d + tdeg(A))),
                     (Check("A AF-certified", True),),
                     notes=(f"min({s} + {dim_a}, {d} + {tdeg(A)})",))
    ok, checks = _pullback_af_checks(A, "A", need_d_af=True)
    if not ok:
        raise UnsupportedAlgebraClass(
            "D(s, d, A) is only evaluated for AF-domains and pullbacks of AF-domains "
            "with ht M = dim T")
    p = pullback_params(A)
    # primes containing M: ht M + min(s, r - s0) + min(s + ht q, d + s0), q ranging over D
    branch_m = p["d"] + min(s, p["r"] - p["s"]) + min(s + p["dp"], d + p["s"])
    # primes avoiding M: min(s + ht p, d + t); ht p <= d - 1 when M is the unique maximal ideal
    out_lo = min(s + p["d"] - 1, d + p["t"])
    out_hi = out_lo if p["unique"] else min(s + p["d"], d + p["t"])
    value = dmax(branch_m, DimValue(out_lo, out_hi))
    notes = [f"max{{{branch_m}, {DimValue(out_lo, out_hi)}}}"]
    if not p["unique"]:
        notes.append("M not known to be the unique maximal ideal: avoiding-M branch is an interval")
    return Trace(D_PULLBACK, value, tuple(checks), notes=tuple(notes))


def _pullback_af_checks(A: AlgebraExpr, name: str, need_d_af: bool) -> tuple[bool, list[Check]]:
    if not isinstance(A, Pullback):
        return False, [Check(f"{name} is a pullback", False)]
    checks = [Check(f"{name} is a pullback", True),
              Check(f"T of {name} AF-certified", is_af(A.T))]
    if need_d_af:
        checks.append(Check(f"D of {name} AF-certified", is_af(A.D)))
    dt = krull_dim(A.T)
    htm = maximal_data(A.T).height
    checks.append(Check(f"ht M = dim T for {name}", dt.is_exact and dt.value == htm))
    return all(c.passed for c in checks), checks


# --------------------------------------------------------------------------
# helpers shared by several rules
# --------------------------------------------------------------------------


def upper_bound(a1: AlgebraExpr, a2: AlgebraExpr) -> int:
    """dim_v(A1 (x) A2) <= min(dim_v A1 + t.d. A2, dim_v A2 + t.d. A1)."""
    return min(valuative_dim(a1).hi + tdeg(a2), valuative_dim(a2).hi + tdeg(a1))


def alpha_values(r1: AlgebraExpr, r2: AlgebraExpr) -> tuple[DimValue, DimValue, DimValue]:
    p1, p2 = pullback_params(r1), pullback_params(r2)
    if p1 is None or p2 is None:
        raise HypothesisNotMet("alpha values need two pullbacks with exact d, d', t, r, s")
    c = min(p1["s"] + p2["dp"], p1["dp"] + p2["s"])
    e1, e2 = p1["r"] - p1["s"], p2["r"] - p2["s"]
    a1 = p1["d"] + min(p2["t"], e1) + p2["d"] + min(p1["s"], e2) + c
    a2 = p2["d"] + min(p1["t"], e2) + p1["d"] + min(p2["s"], e1) + c
    a3 = p1["d"] + p2["d"] + min(p1["r"], p2["r"]) + c
    return exact(a1), exact(a2), exact(a3)


def pair_lower_bounds(r1: AlgebraExpr, r2: AlgebraExpr) -> tuple[DimValue, DimValue, DimValue]:
    """Lower bounds for dim(D1 (x) R2), dim(R1 (x) D2) and the value of dim(D1 (x) D2)."""
    for name, r in (("R1", r1), ("R2", r2)):
        ok, checks = _pullback_af_checks(r, name, need_d_af=True)
        if not ok:
            failed = [c.condition for c in checks if not c.passed]
            raise HypothesisNotMet("; ".join(failed))
    p1, p2 = pullback_params(r1), pullback_params(r2)
    c = min(p1["s"] + p2["dp"], p1["dp"] + p2["s"])
    a = p2["d"] + min(p1["s"], p2["r"] - p2["s"]) + c
    b = p1["d"] + min(p2["s"], p1["r"] - p1["s"]) + c
    return exact(a), exact(b), exact(c)


def raw_pullback_pair_formula(r1: AlgebraExpr, r2: AlgebraExpr) -> Trace:
    """The pullback-pair formula evaluated with no hypothesis checks at all.

    max{ ht M1[t2] + D(s1, d'1, R2), ht M2[t1] + D(s2, d'2, R1) } with
    ht Mi[n] taken as ht Mi + min(n, ri - si).
    """
    if not (isinstance(r1, Pullback) and isinstance(r2, Pullback)):
        raise HypothesisNotMet("both arguments must be pullbacks")
    branches = []
    for ri, rj in ((r1, r2), (r2, r1)):
        m = maximal_data(ri.T)
        ht = m.height + min(tdeg(rj), m.residue_tdeg - tdeg(ri.D))
        dd = krull_dim(ri.D)
        if not dd.is_exact:
            raise UnsupportedAlgebraClass("dim D is not exact")
        dt = compute_d(tdeg(ri.D), dd.value, rj)
        branches.append((ht, dt))
    value = dmax(*(ht + dt.value for ht, dt in branches))
    note = "max{" + ", ".join(f"{ht} + {dt.value}" for ht, dt in branches) + "}"
    return Trace("raw-pullback-pair", value, children=tuple(dt for _, dt in branches),
                 notes=(note, "hypotheses NOT checked"))


# --------------------------------------------------------------------------
# Krull dimension dispatcher
# --------------------------------------------------------------------------

Rule = Callable[[AlgebraExpr, AlgebraExpr], "Trace | list[Check]"]


def _rule_identity(a1, a2):
    checks = [Check("one factor is k", isinstance(a1, BaseK) or isinstance(a2, BaseK))]
    if not checks[0].passed:
        return checks
    other = a2 if isinstance(a1, BaseK) else a1
    return Trace(IDENTITY, krull_dim(other), tuple(checks))


def _rule_sharp(a1, a2):
    checks = [Check("A1 is a field", is_field(a1)), Check("A2 is a field", is_field(a2))]
    if not all(c.passed for c in checks):
        return checks
    return Trace(F1, exact(min(tdeg(a1), tdeg(a2))), tuple(checks),
                 notes=(f"min({tdeg(a1)}, {tdeg(a2)})",))


def _wadsworth(a1, a2) -> int:
    return min(krull_dim(a1).lo + tdeg(a2), krull_dim(a2).lo + tdeg(a1))


def _rule_wadsworth(a1, a2):
    checks = [Check("A1 AF-certified", is_af(a1)), Check("A2 AF-certified", is_af(a2))]
    if not all(c.passed for c in checks):
        return checks
    d1, d2, t1, t2 = krull_dim(a1).value, krull_dim(a2).value, tdeg(a1), tdeg(a2)
    return Trace(F2, exact(min(d1 + t2, d2 + t1)), tuple(checks),
                 notes=(f"min({d1} + {t2}, {d2} + {t1})",))


def one_af_formula(af_side: AlgebraExpr, other: AlgebraExpr) -> Trace:
    """dim(A (x) B) = D(t.d. A, dim A, B) for an AF-domain A and arbitrary B."""
    return compute_d(tdeg(af_side), krull_dim(af_side).value, other)


def _rule_one_af(a1, a2):
    af1, af2 = is_af(a1), is_af(a2)
    checks = [Check("exactly one factor AF-certified", af1 != af2)]
    if not checks[0].passed:
        return checks
    af_side, other = (a1, a2) if af1 else (a2, a1)
    try:
        d = one_af_formula(af_side, other)
    except UnsupportedAlgebraClass as exc:
        return checks + [Check(f"D(s, d, A) evaluable on the other factor ({exc})", False)]
    checks.append(Check("D(s, d, A) evaluable on the other factor", True))
    return Trace(F3, d.value, tuple(checks), children=(d,))


def _self_tensor_eligible(R: AlgebraExpr) -> tuple[bool, list[Check]]:
    if not isinstance(R, Pullback):
        return False, [Check("R is a pullback", False)]
    ok, checks = _pullback_af_checks(R, "R", need_d_af=False)
    checks.append(Check("D Jaffard-certified", jaffard_status(R.D) is TriState.YES))
    return all(c.passed for c in checks), checks


def self_tensor_shortcut(R: AlgebraExpr) -> Optional[int]:
    """t + dim_v R, which equals dim(R (x) R) and dim_v(R (x) R) once t.d.(K:D) <= t.d.(D)."""
    ok, _ = _self_tensor_eligible(R)
    if not ok:
        return None
    e = maximal_data(R.T).residue_tdeg - tdeg(R.D)
    if e > tdeg(R.D):
        return None
    return tdeg(R) + valuative_dim(R).value


def _rule_self_tensor(a1, a2):
    checks = [Check("A1 and A2 structurally identical", a1 == a2)]
    if not checks[0].passed:
        return checks
    ok, more = _self_tensor_eligible(a1)
    checks += more
    if not ok:
        return checks
    R = a1
    t = tdeg(R)
    ht = ht_m_poly(R, t)
    inner = tensor_krull_dim(R.D, R)
    recursive = inner.value + ht
    notes = [f"ht M[{t}] + dim(D (x) R) = {ht} + {inner.value}"]
    value = recursive
    shortcut = self_tensor_shortcut(R)
    if shortcut is not None:
        notes.append(f"t + dim_v R = {t} + {valuative_dim(R)} = {shortcut}")
        if not recursive.contains(shortcut):
            raise InternalConsistencyError(
                f"self-tensor paths disagree: recursive {recursive} vs t + dim_v R = {shortcut}")
        checks.append(Check("t.d.(K:D) <= t.d.(D): both paths agree", True))
        value = exact(shortcut)
    return Trace(F6, value, tuple(checks), children=(inner,), notes=tuple(notes))


def _rule_pullback_pair(a1, a2):
    ok1, c1 = _pullback_af_checks(a1, "R1", need_d_af=True)
    ok2, c2 = _pullback_af_checks(a2, "R2", need_d_af=True)
    if not (ok1 and ok2):
        return c1 + c2
    branches = []
    for ri, rj in ((a1, a2), (a2, a1)):
        ht = ht_m_poly(ri, tdeg(rj))
        dt = compute_d(tdeg(ri.D), krull_dim(ri.D).value, rj)
        branches.append((ht, dt))
    value = dmax(*(ht + dt.value for ht, dt in branches))
    notes = ["max{" + ", ".join(f"{ht} + {dt.value}" for ht, dt in branches) + "}"]
    w = _wadsworth(a1, a2)
    if not value.contains(w):
        notes.append(f"Wadsworth's AF formula would give min(dim R1 + t2, dim R2 + t1) = {w}, "
                     f"which is wrong here")
    return Trace(F4, value, tuple(c1 + c2), children=tuple(dt for _, dt in branches),
                 notes=tuple(notes))


def _rule_pullback_recursive(a1, a2):
    ok1, c1 = _pullback_af_checks(a1, "R1", need_d_af=False)
    ok2, c2 = _pullback_af_checks(a2, "R2", need_d_af=False)
    checks = c1 + c2
    if not (ok1 and ok2):
        return checks
    p1, p2 = maximal_data(a1.T), maximal_data(a2.T)
    s1, s2 = tdeg(a1.D), tdeg(a2.D)
    e1, e2 = p1.residue_tdeg - s1, p2.residue_tdeg - s2
    cond = s1 <= e2 or s2 <= e1
    checks.append(Check(f"s1 <= r2 - s2 or s2 <= r1 - s1 ({s1} <= {e2} or {s2} <= {e1})", cond))
    if not cond:
        return checks
    ht1, ht2 = ht_m_poly(a1, tdeg(a2)), ht_m_poly(a2, tdeg(a1))
    b1 = tensor_krull_dim(a1.D, a2)
    b2 = tensor_krull_dim(a1, a2.D)
    value = dmax(b1.value + ht1, b2.value + ht2)
    note = f"max{{{ht1} + {b1.value}, {ht2} + {b2.value}}} = {value}"
    return Trace(F5, value, tuple(checks), children=(b1, b2), notes=(note,))


def fallback_bounds(a1: AlgebraExpr, a2: AlgebraExpr) -> Trace:
    hi = upper_bound(a1, a2)
    lows = {"max(dim A1, dim A2) [flat base change]":
            max(krull_dim(a1).lo, krull_dim(a2).lo)}
    if isinstance(a1, Pullback) and isinstance(a2, Pullback):
        try:
            a, b, _ = pair_lower_bounds(a1, a2)
            lows["ht M1[t2] + lower bound of dim(D1 (x) R2)"] = ht_m_poly(a1, tdeg(a2)) + a.lo
            lows["ht M2[t1] + lower bound of dim(R1 (x) D2)"] = ht_m_poly(a2, tdeg(a1)) + b.lo
            al = alpha_values(a1, a2)
            lows["alpha1"], lows["alpha2"] = al[0].lo, al[1].lo
        except HypothesisNotMet:
            pass
    lo = max(lows.values())
    if lo > hi:
        raise InternalConsistencyError(f"lower bound {lo} exceeds upper bound {hi}")
    notes = [f"{k} = {v}" for k, v in lows.items()]
    notes.append(f"min(dim_v A1 + t2, dim_v A2 + t1) = {hi}")
    return Trace(FB, DimValue(lo, hi), notes=tuple(notes))


KRULL_RULES: list[Rule] = [
    _rule_identity,
    _rule_sharp,
    _rule_wadsworth,
    _rule_one_af,
    _rule_self_tensor,
    _rule_pullback_pair,
    _rule_pullback_recursive,
]
RULE_IDS = [IDENTITY, F1, F2, F3, F6, F4, F5]


def _finish(trace: Trace, a1, a2) -> Trace:
    bound = upper_bound(a1, a2)
    if trace.value.hi > bound:
        return trace.with_value(trace.value.clamp_hi(bound),
                                note=f"upper end clamped to dim_v bound {bound}",
                                check=Check("dim <= dim_v <= upper bound", True))
    return trace


@lru_cache(maxsize=65536)
def tensor_krull_dim(a1: AlgebraExpr, a2: AlgebraExpr) -> Trace:
    """Krull dimension of A1 (x)_k A2 with the derivation that produced it."""
    rejected_rules = []
    for rid, rule in zip(RULE_IDS, KRULL_RULES):
        out = rule(a1, a2)
        if isinstance(out, Trace):
            return _finish(out, a1, a2).with_rejected(rejected_rules)
        rejected_rules.append(rejected(rid, out))
    return fallback_bounds(a1, a2).with_rejected(rejected_rules)


def all_applicable(a1: AlgebraExpr, a2: AlgebraExpr) -> dict[str, Trace]:
    """Every rule whose hypotheses hold, keyed by rule id (consistency checking)."""
    out = {}
    for rid, rule in zip(RULE_IDS, KRULL_RULES):
        res = rule(a1, a2)
        if isinstance(res, Trace):
            out[rid] = _finish(res, a1, a2)
    return out


def rule_applies(rid: str, a1: AlgebraExpr, a2: AlgebraExpr) -> Optional[Trace]:
    rule = KRULL_RULES[RULE_IDS.index(rid)]
    res = rule(a1, a2)
    return res if isinstance(res, Trace) else None


# --------------------------------------------------------------------------
# valuative dimension
# --------------------------------------------------------------------------


def vdim_closed_form(r1: AlgebraExpr, r2: AlgebraExpr) -> int:
    p1, p2 = pullback_params(r1), pullback_params(r2)
    return (p1["t"] - p1["s"] + p2["t"] - p2["s"]
            + min(p1["s"] + p2["dp"], p1["dp"] + p2["s"]))


@lru_cache(maxsize=65536)
def tensor_valuative_dim(a1: AlgebraExpr, a2: AlgebraExpr) -> Trace:
    rej = []
    if isinstance(a1, BaseK) or isinstance(a2, BaseK):
        other = a2 if isinstance(a1, BaseK) else a1
        return Trace(IDENTITY, valuative_dim(other), (Check("one factor is k", True),))

    checks = [Check("A1 AF-certified", is_af(a1)), Check("A2 AF-certified", is_af(a2))]
    if all(c.passed for c in checks):
        k = tensor_krull_dim(a1, a2)
        return Trace(V3, k.value, tuple(checks), children=(k,),
                     notes=("a tensor product of AF-domains is an AF-ring, hence Jaffard",))
    rej.append(rejected(V3, checks))

    ok1, c1 = _pullback_af_checks(a1, "R1", need_d_af=True)
    ok2, c2 = _pullback_af_checks(a2, "R2", need_d_af=True)
    if ok1 and ok2:
        v1, v2 = valuative_dim(a1).value, valuative_dim(a2).value
        t1, t2 = tdeg(a1), tdeg(a2)
        value = min(v1 + t2, v2 + t1)
        closed = vdim_closed_form(a1, a2)
        if value != closed:
            raise InternalConsistencyError(
                f"valuative formula {value} disagrees with closed form {closed}")
        return Trace(V1, exact(value), tuple(c1 + c2),
                     notes=(f"min({v1} + {t2}, {v2} + {t1}) = {value}",
                            f"closed form t1 - s1 + t2 - s2 + min(s1 + d'2, d'1 + s2) = {closed}"),
                     rejected=tuple(rej))
    rej.append(rejected(V1, c1 + c2))

    k = tensor_krull_dim(a1, a2)
    hi = upper_bound(a1, a2)
    shortcut = self_tensor_shortcut(a1) if a1 == a2 else None
    if shortcut is not None:
        return Trace(F6, exact(shortcut), k.checks, children=(k,),
                     notes=(f"dim(R (x) R) = dim_v(R (x) R) = t + dim_v R = {shortcut}",),
                     rejected=tuple(rej))
    lo = k.value.lo
    return Trace(V2, DimValue(lo, max(lo, hi)), children=(k,),
                 notes=(f"dim(A1 (x) A2) = {k.value} <= dim_v <= {hi}",), rejected=tuple(rej))


# --------------------------------------------------------------------------
# Jaffard property of the tensor product
# --------------------------------------------------------------------------


def jaffard_criterion_checks(r1: AlgebraExpr, r2: AlgebraExpr) -> tuple[bool, list[Check]]:
    ok1, c1 = _pullback_af_checks(r1, "R1", need_d_af=True)
    ok2, c2 = _pullback_af_checks(r2, "R2", need_d_af=True)
    checks = c1 + c2
    if ok1:
        checks.append(Check("M1 unique maximal ideal of T1", maximal_data(r1.T).unique))
    if ok2:
        checks.append(Check("M2 unique maximal ideal of T2", maximal_data(r2.T).unique))
    return all(c.passed for c in checks) and ok1 and ok2, checks


def jaffard_criterion(r1: AlgebraExpr, r2: AlgebraExpr) -> bool:
    p1, p2 = pullback_params(r1), pullback_params(r2)
    e1, e2 = p1["r"] - p1["s"], p2["r"] - p2["s"]
    return ((e1 <= p2["t"] and e2 <= p1["s"])
            or (e1 <= p2["s"] and e2 <= p1["t"]))


@lru_cache(maxsize=65536)
def tensor_jaffard(a1: AlgebraExpr, a2: AlgebraExpr) -> Trace:
    ok, checks = jaffard_criterion_checks(a1, a2)
    if ok:
        p1, p2 = pullback_params(a1), pullback_params(a2)
        yes = jaffard_criterion(a1, a2)
        note = (f"(r1-s1 <= t2 and r2-s2 <= s1) or (r1-s1 <= s2 and r2-s2 <= t1) with "
                f"r1-s1={p1['r'] - p1['s']}, r2-s2={p2['r'] - p2['s']}, "
                f"s1={p1['s']}, s2={p2['s']}, t1={p1['t']}, t2={p2['t']}")
        return Trace(J1, TriState.YES if yes else TriState.NO, tuple(checks), notes=(note,))
    rej = [rejected(J1, checks)]
    k = tensor_krull_dim(a1, a2)
    v = tensor_valuative_dim(a1, a2)
    if k.value.is_exact and v.value.is_exact:
        ans = TriState.YES if k.value == v.value else TriState.NO
        note = f"dim = {k.value}, dim_v = {v.value}"
    elif k.value.hi < v.value.lo:
        ans, note = TriState.NO, f"dim <= {k.value.hi} < {v.value.lo} <= dim_v"
    else:
        ans, note = TriState.UNKNOWN, f"dim in {k.value}, dim_v in {v.value}: not certified"
    return Trace("J-compare", ans, children=(k, v), notes=(note,), rejected=tuple(rej))
