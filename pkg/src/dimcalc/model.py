"""Term language for k-algebra constructions and the value types the engine returns.

Every construction is a frozen dataclass, so structural equality is ``==`` and
terms can be hashed, cached and shared freely.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Union


class DimCalcError(Exception):
    """Base class for all engine errors."""


class HypothesisNotMet(DimCalcError):
    pass


class UnsupportedAlgebraClass(DimCalcError):
    pass


class PreconditionViolated(DimCalcError):
    pass


class InternalConsistencyError(DimCalcError):
    """Two independent derivations of the same quantity disagree."""


# --------------------------------------------------------------------------
# dimension values
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DimValue:
    """A natural number, or a closed integer interval certified to contain it."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.lo > self.hi:
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, n: int) -> "DimValue":
        return cls(n, n)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "DimValue":
        return cls(lo, hi)

    @classmethod
    def of(cls, v: "DimValue | int") -> "DimValue":
        return v if isinstance(v, DimValue) else cls(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"{self} is not exact")
        return self.lo

    def __add__(self, other: "DimValue | int") -> "DimValue":
        o = DimValue.of(other)
        return DimValue(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def contains(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def intersects(self, other: "DimValue") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def le_boundwise(self, other: "DimValue") -> bool:
        return self.lo <= other.lo and self.hi <= other.hi

    def clamp_hi(self, bound: int) -> "DimValue":
        hi = min(self.hi, bound)
        if hi < self.lo:
            raise InternalConsistencyError(f"{self} lies above certified upper bound {bound}")
        return DimValue(self.lo, hi)

    def to_json(self) -> dict:
        if self.is_exact:
            return {"exact": self.lo}
        return {"interval": [self.lo, self.hi]}

    def __str__(self) -> str:
        return str(self.lo) if self.is_exact else f"[{self.lo}, {self.hi}]"


def dmax(*values: "DimValue | int") -> DimValue:
    vs = [DimValue.of(v) for v in values]
    return DimValue(max(v.lo for v in vs), max(v.hi for v in vs))


def dmin(*values: "DimValue | int") -> DimValue:
    vs = [DimValue.of(v) for v in values]
    return DimValue(min(v.lo for v in vs), min(v.hi for v in vs))


def exact(n: int) -> DimValue:
    return DimValue(n, n)


class TriState(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __bool__(self):
        # forces callers to compare explicitly instead of truth-testing UNKNOWN
        raise TypeError("TriState has no truth value; compare against TriState.YES")

    def __str__(self) -> str:
        return self.value


# --------------------------------------------------------------------------
# algebra terms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalIdealData:
    height: int
    residue_tdeg: int
    unique: bool = False


@dataclass(frozen=True)
class BaseK:
    """The ground field k."""


@dataclass(frozen=True)
class FieldLeaf:
    """An extension field of k with the given transcendence degree."""

    tdeg: int


@dataclass(frozen=True)
class AFLeaf:
    """A declared AF-domain; AF-ness is an axiom and never re-checked."""

    tdeg: int
    dim: int
    maximal: Optional[MaximalIdealData] = None


@dataclass(frozen=True)
class PolyExt:
    base: "AlgebraExpr"
    n: int


@dataclass(frozen=True)
class Pullback:
    """R = phi^-1(D) for phi: T -> T/M at T's distinguished maximal ideal M."""

    T: "AlgebraExpr"
    D: "AlgebraExpr"


AlgebraExpr = Union[BaseK, FieldLeaf, AFLeaf, PolyExt, Pullback]
ALGEBRA_TYPES = (BaseK, FieldLeaf, AFLeaf, PolyExt, Pullback)


@dataclass(frozen=True)
class InvariantBundle:
    tdeg: int
    krull_dim: DimValue
    valuative_dim: DimValue
    is_af: TriState
    is_jaffard: TriState
    is_domain: bool
    is_field: bool
    maximal: Optional[MaximalIdealData] = None

    def to_json(self) -> dict:
        m = self.maximal
        return {
            "tdeg": self.tdeg,
            "dim": self.krull_dim.to_json(),
            "vdim": self.valuative_dim.to_json(),
            "af": self.is_af.value,
            "jaffard": self.is_jaffard.value,
            "domain": self.is_domain,
            "field": self.is_field,
            "maximal": None if m is None else {
                "height": m.height, "residueTdeg": m.residue_tdeg, "unique": m.unique},
        }

    def __str__(self) -> str:
        parts = [f"tdeg {self.tdeg}", f"dim {self.krull_dim}", f"vdim {self.valuative_dim}",
                 f"AF {self.is_af}", f"Jaffard {self.is_jaffard}"]
        if self.is_field:
            parts.append("field")
        m = self.maximal
        if m is not None:
            parts.append(f"M: ht {m.height}, res-tdeg {m.residue_tdeg}"
                         + (", unique" if m.unique else ""))
        return "{" + "; ".join(parts) + "}"


# --------------------------------------------------------------------------
# structural queries used by validation and by the invariant engine
# --------------------------------------------------------------------------


def flatten_poly(expr: AlgebraExpr) -> tuple[AlgebraExpr, int]:
    """Collapse nested polynomial extensions: (A[m])[n] -> (A, m + n)."""
    n = 0
    while isinstance(expr, PolyExt):
        n += expr.n
        expr = expr.base
    return expr, n


def tdeg(expr: AlgebraExpr) -> int:
    if isinstance(expr, BaseK):
        return 0
    if isinstance(expr, (FieldLeaf, AFLeaf)):
        return expr.tdeg
    if isinstance(expr, PolyExt):
        return tdeg(expr.base) + expr.n
    if isinstance(expr, Pullback):
        # R and T share a quotient field
        return tdeg(expr.T)
    raise TypeError(f"not an algebra term: {expr!r}")


def is_field(expr: AlgebraExpr) -> bool:
    if isinstance(expr, (BaseK, FieldLeaf)):
        return True
    # a zero-dimensional domain is a field
    return isinstance(expr, AFLeaf) and expr.dim == 0


def maximal_data(expr: AlgebraExpr) -> Optional[MaximalIdealData]:
    """The distinguished maximal ideal, if the construction carries one.

    For a pullback the maximal ideal is the preimage of D's distinguished
    maximal ideal (or of 0 when D is a field); heights add along the tower.
    """
    if isinstance(expr, AFLeaf):
        return expr.maximal
    if isinstance(expr, Pullback):
        mt = maximal_data(expr.T)
        if mt is None:
            return None
        if is_field(expr.D):
            return MaximalIdealData(mt.height, tdeg(expr.D), mt.unique)
        q = maximal_data(expr.D)
        if q is None:
            return None
        return MaximalIdealData(mt.height + q.height, q.residue_tdeg, mt.unique and q.unique)
    return None


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    path: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        where = "/".join(self.path) or "<root>"
        return f"{where}: {self.message}"


def _is_nat(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


def validate(expr: AlgebraExpr) -> list[Violation]:
    out: list[Violation] = []
    _validate(expr, (), out)
    return out


def _validate(expr, path: tuple[str, ...], out: list[Violation]) -> None:
    def bad(msg: str) -> None:
        out.append(Violation(path, msg))

    if isinstance(expr, BaseK):
        return
    if isinstance(expr, FieldLeaf):
        if not _is_nat(expr.tdeg):
            bad(f"tdeg must be a natural number, got {expr.tdeg!r}")
        return
    if isinstance(expr, AFLeaf):
        if not (_is_nat(expr.tdeg) and _is_nat(expr.dim)):
            bad("tdeg and dim must be natural numbers")
            return
        if expr.dim > expr.tdeg:
            bad(f"dim {expr.dim} exceeds tdeg {expr.tdeg}")
        m = expr.maximal
        if m is not None:
            if not (_is_nat(m.height) and _is_nat(m.residue_tdeg)):
                bad("maximal ideal height and residue tdeg must be natural numbers")
                return
            if m.height < 1:
                bad("maximal ideal of a non-field must have height >= 1")
            if m.height > expr.dim:
                bad(f"maximal height {m.height} exceeds dim {expr.dim}")
            if m.height + m.residue_tdeg != expr.tdeg:
                bad(f"AF identity fails: height {m.height} + residue tdeg "
                    f"{m.residue_tdeg} != tdeg {expr.tdeg}")
        return
    if isinstance(expr, PolyExt):
        if not (_is_nat(expr.n) and expr.n >= 1):
            bad(f"number of variables must be >= 1, got {expr.n!r}")
        _validate(expr.base, path + ("base",), out)
        return
    if isinstance(expr, Pullback):
        n_before = len(out)
        _validate(expr.T, path + ("T",), out)
        _validate(expr.D, path + ("D",), out)
        if len(out) > n_before:
            return
        m = maximal_data(expr.T)
        if m is None:
            bad("T must expose a distinguished maximal ideal")
            return
        s = tdeg(expr.D)
        if s > m.residue_tdeg:
            bad(f"tdeg(D) = {s} exceeds residue field tdeg r = {m.residue_tdeg}")
        return
    bad(f"not an algebra term: {expr!r}")


def iter_subterms(expr: AlgebraExpr) -> Iterable[AlgebraExpr]:
    yield expr
    if isinstance(expr, PolyExt):
        yield from iter_subterms(expr.base)
    elif isinstance(expr, Pullback):
        yield from iter_subterms(expr.T)
        yield from iter_subterms(expr.D)


def pullback_depth(expr: AlgebraExpr) -> int:
    if isinstance(expr, PolyExt):
        return pullback_depth(expr.base)
    if isinstance(expr, Pullback):
        return 1 + max(pullback_depth(expr.T), pullback_depth(expr.D))
    return 0
