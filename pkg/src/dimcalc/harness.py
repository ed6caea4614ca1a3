"""Random construction generator and cross-formula consistency suites.

Every check is an exact integer assertion.  Terms are generated sequentially
from one seeded ``random.Random`` so a seed always reproduces the same list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import tensor as te
from .dsl import render_expr
from .invariants import (
    is_af, krull_dim, valuative_dim,
)
from .model import (
    AFLeaf, AlgebraExpr, BaseK, DimCalcError, FieldLeaf, MaximalIdealData,
    PolyExt, Pullback, TriState, UnsupportedAlgebraClass, maximal_data, tdeg,
    validate,
)


@dataclass(frozen=True)
class GeneratorConfig:
    max_depth: int = 3
    max_tdeg: int = 8
    max_dim: int = 4
    seed: int = 42
    count: int = 1000
    self_pair_rate: float = 0.15

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.max_tdeg < 1:
            raise ValueError("max_tdeg must be >= 1")


class Generator:
    def __init__(self, config: GeneratorConfig, rng: random.Random | None = None):
        self.cfg = config
        self.rng = rng or random.Random(config.seed)

    def maximal_leaf(self, budget: int) -> AFLeaf:
        rng = self.rng
        t = rng.randint(1, budget)
        dim = rng.randint(1, min(t, self.cfg.max_dim))
        # most leaves have ht M = dim T so the closed-form rules get exercised
        ht = dim if rng.random() < 0.65 else rng.randint(1, dim)
        return AFLeaf(t, dim, MaximalIdealData(ht, t - ht, rng.random() < 0.6))

    def af_leaf(self, budget: int) -> AFLeaf:
        if budget >= 1 and self.rng.random() < 0.5:
            return self.maximal_leaf(budget)
        t = self.rng.randint(0, budget)
        return AFLeaf(t, self.rng.randint(0, min(t, self.cfg.max_dim)))

    def t_side(self, depth: int, budget: int) -> AlgebraExpr:
        if depth >= 2 and budget >= 1 and self.rng.random() < 0.25:
            for _ in range(4):
                p = self.pullback(depth - 1, budget)
                if maximal_data(p) is not None:
                    return p
        return self.maximal_leaf(budget)

    def pullback(self, depth: int, budget: int) -> Pullback:
        T = self.t_side(depth, budget)
        r = maximal_data(T).residue_tdeg
        return Pullback(T, self.domain(depth - 1, r))

    def domain(self, depth: int, budget: int) -> AlgebraExpr:
        rng = self.rng
        roll = rng.random()
        if depth >= 1 and budget >= 1 and roll < 0.3:
            return self.pullback(depth, budget)
        if roll < 0.4:
            return BaseK()
        if roll < 0.65:
            return FieldLeaf(rng.randint(0, budget))
        if roll < 0.9 or budget == 0:
            return self.af_leaf(budget)
        n = rng.randint(1, budget)
        return PolyExt(self.domain(depth, budget - n), n)

    def term(self) -> AlgebraExpr:
        depth, budget = self.cfg.max_depth, self.cfg.max_tdeg
        roll = self.rng.random()
        if roll < 0.6:
            return self.pullback(depth, budget)
        if roll < 0.72:
            return self.af_leaf(budget)
        if roll < 0.82:
            return FieldLeaf(self.rng.randint(0, budget))
        if roll < 0.85:
            return BaseK()
        n = self.rng.randint(1, budget)
        return PolyExt(self.domain(depth, budget - n), n)


def generate(config: GeneratorConfig) -> Iterator[AlgebraExpr]:
    g = Generator(config)
    for _ in range(config.count):
        yield g.term()


def generate_pairs(config: GeneratorConfig) -> list[tuple[AlgebraExpr, AlgebraExpr]]:
    g = Generator(config)
    pairs = []
    for _ in range(config.count):
        a = g.term()
        b = a if g.rng.random() < config.self_pair_rate else g.term()
        pairs.append((a, b))
    return pairs


# --------------------------------------------------------------------------
# properties: each returns None (not applicable), True (holds) or False
# --------------------------------------------------------------------------


def p1_dim_le_vdim(a, b):
    k = te.tensor_krull_dim(a, b).value
    v = te.tensor_valuative_dim(a, b).value
    return k.le_boundwise(v)


def p2_symmetry(a, b):
    return (te.tensor_krull_dim(a, b).value == te.tensor_krull_dim(b, a).value
            and te.tensor_valuative_dim(a, b).value == te.tensor_valuative_dim(b, a).value
            and te.tensor_jaffard(a, b).value is te.tensor_jaffard(b, a).value)


def _p3(a, b, with_alpha3: bool):
    f4 = te.rule_applies(te.F4, a, b)
    if f4 is None:
        return None
    a1, a2, a3 = te.alpha_values(a, b)
    la, lb, _ = te.pair_lower_bounds(a, b)
    ht1 = maximal_data(a.T).height + min(tdeg(b), maximal_data(a.T).residue_tdeg - tdeg(a.D))
    ht2 = maximal_data(b.T).height + min(tdeg(a), maximal_data(b.T).residue_tdeg - tdeg(b.D))
    alphas = (a1, a2, a3) if with_alpha3 else (a1, a2)
    lo = f4.value.lo
    return (lo >= max(x.value for x in alphas)
            and lo >= ht1 + la.value and lo >= ht2 + lb.value)


def p3_alpha_dominance(a, b):
    return _p3(a, b, with_alpha3=True)


def p3_proved_part(a, b):
    """P3 without alpha3, which is only an upper estimate inside a case split."""
    return _p3(a, b, with_alpha3=False)


def _closed_form_vdim(a, b) -> int:
    # independent arithmetic: t1 - s1 + t2 - s2 + min(s1 + d'2, d'1 + s2)
    t1, t2, s1, s2 = tdeg(a.T), tdeg(b.T), tdeg(a.D), tdeg(b.D)
    dp1, dp2 = krull_dim(a.D).value, krull_dim(b.D).value
    return t1 - s1 + t2 - s2 + min(s1 + dp2, dp1 + s2)


def p4_vdim_closed_form(a, b):
    t = te.tensor_valuative_dim(a, b)
    if t.rule != te.V1:
        return None
    return t.value.is_exact and t.value.value == _closed_form_vdim(a, b)


def p5_jaffard_agreement(a, b):
    ok, _ = te.jaffard_criterion_checks(a, b)
    if not ok:
        return None
    f4 = te.rule_applies(te.F4, a, b)
    if f4 is None or not f4.value.is_exact:
        return False
    vdim = min(valuative_dim(a).value + tdeg(b), valuative_dim(b).value + tdeg(a))
    answer = te.tensor_jaffard(a, b).value
    return answer is (TriState.YES if f4.value.value == vdim else TriState.NO)


def p6_af_pullback_match(a, b):
    f2, f4 = te.rule_applies(te.F2, a, b), te.rule_applies(te.F4, a, b)
    if f2 is None or f4 is None:
        return None
    return f2.value == f4.value


def p7_compute_d(a, b, max_s: int = 4):
    checked = False
    for A in (a, b):
        for s in range(0, max_s + 1):
            prev = None
            for d in range(0, s + 1):
                try:
                    v = te.compute_d(s, d, A).value
                except UnsupportedAlgebraClass:
                    break
                checked = True
                if s == 0 and v != krull_dim(A):
                    return False
                if prev is not None and not prev.le_boundwise(v):
                    return False
                prev = v
    return True if checked else None


def dispatch_soundness(a, b):
    rules = te.all_applicable(a, b)
    if len(rules) < 2:
        return None
    vals = list(rules.values())
    return all(x.value.intersects(y.value) for x in vals for y in vals)


def trace_integrity(a, b):
    traces = [te.tensor_krull_dim(a, b), te.tensor_valuative_dim(a, b), te.tensor_jaffard(a, b)]
    return all(t.is_sound() for t in traces)


def open_problem_guard(a, b):
    if not (isinstance(a, Pullback) and isinstance(b, Pullback)):
        return None
    if is_af(a.T) == is_af(b.T):
        return None
    t = te.tensor_krull_dim(a, b)
    if t.rule != te.FB:
        return None
    return not t.value.is_exact


PROPERTIES: dict[str, Callable] = {
    "P1 dim <= dim_v": p1_dim_le_vdim,
    "P2 symmetry": p2_symmetry,
    "P3 alpha / pair lower bounds below pullback-pair value": p3_alpha_dominance,
    "P3' alpha1 / alpha2 / pair lower bounds below pullback-pair value": p3_proved_part,
    "P4 valuative closed form": p4_vdim_closed_form,
    "P5 Jaffard criterion agreement": p5_jaffard_agreement,
    "P6 AF and pullback-pair formulas agree": p6_af_pullback_match,
    "P7 D(s, d, A) monotone in d, D(0, d, A) = dim A": p7_compute_d,
    "S dispatch soundness": dispatch_soundness,
    "T trace integrity": trace_integrity,
    "G open-problem guard": open_problem_guard,
}


def _holds(prop, a, b) -> Optional[bool]:
    try:
        return prop(a, b)
    except DimCalcError:
        return False


# --------------------------------------------------------------------------
# shrinking
# --------------------------------------------------------------------------


def _smaller_leaves(e: AlgebraExpr) -> Iterator[AlgebraExpr]:
    if isinstance(e, FieldLeaf):
        if e.tdeg > 1:
            yield FieldLeaf(e.tdeg - 1)
        yield BaseK()
    elif isinstance(e, AFLeaf):
        m = e.maximal
        if m is None:
            if e.tdeg > 0:
                yield AFLeaf(e.tdeg - 1, min(e.dim, e.tdeg - 1))
            if e.dim > 0:
                yield AFLeaf(e.tdeg, e.dim - 1)
            yield BaseK()
            return
        if m.residue_tdeg > 0:
            yield AFLeaf(e.tdeg - 1, min(e.dim, e.tdeg - 1), MaximalIdealData(
                m.height, m.residue_tdeg - 1, m.unique))
        if e.dim > m.height:
            yield AFLeaf(e.tdeg, e.dim - 1, m)
        if m.height > 1:
            yield AFLeaf(e.tdeg - 1, e.dim - 1, MaximalIdealData(
                m.height - 1, m.residue_tdeg, m.unique))
            yield AFLeaf(e.tdeg, e.dim, MaximalIdealData(
                m.height - 1, m.residue_tdeg + 1, m.unique))
        yield BaseK()


def shrink_candidates(e: AlgebraExpr) -> Iterator[AlgebraExpr]:
    """Numeric reductions first, then structural flattening."""
    yield from _smaller_leaves(e)
    if isinstance(e, PolyExt):
        if e.n > 1:
            yield PolyExt(e.base, e.n - 1)
        for b in shrink_candidates(e.base):
            yield PolyExt(b, e.n)
        yield e.base
    elif isinstance(e, Pullback):
        for t in shrink_candidates(e.T):
            yield Pullback(t, e.D)
        for d in shrink_candidates(e.D):
            yield Pullback(e.T, d)
        yield e.T
        yield e.D


def shrink_pair(a, b, fails: Callable[[AlgebraExpr, AlgebraExpr], bool], max_steps: int = 400):
    for _ in range(max_steps):
        for cand in _pair_candidates(a, b):
            if all(not validate(x) for x in cand) and fails(*cand):
                a, b = cand
                break
        else:
            break
    return a, b


def _pair_candidates(a, b):
    if a == b:
        for x in shrink_candidates(a):
            yield x, x
    for x in shrink_candidates(a):
        yield x, b
    for y in shrink_candidates(b):
        yield a, y


# --------------------------------------------------------------------------
# suite runner
# --------------------------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    passed: int = 0
    skipped: int = 0
    counterexample: Optional[tuple[str, str]] = None
    original: Optional[tuple[str, str]] = None

    @property
    def failed(self) -> int:
        return self.checked - self.passed

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "passed": self.passed,
                "failed": self.failed, "skipped": self.skipped,
                "counterexample": self.counterexample}


@dataclass
class SuiteReport:
    config: GeneratorConfig
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results)

    def __getitem__(self, prefix: str) -> PropertyResult:
        for r in self.results:
            if r.name.split()[0] == prefix:
                return r
        raise KeyError(prefix)

    def to_json(self) -> dict:
        c = self.config
        return {"seed": c.seed, "count": c.count, "depth": c.max_depth, "maxTdeg": c.max_tdeg,
                "ok": self.ok, "properties": [r.to_json() for r in self.results]}

    def render(self) -> str:
        c = self.config
        lines = [f"seed {c.seed}, {c.count} pairs, depth <= {c.max_depth}, tdeg <= {c.max_tdeg}"]
        for r in self.results:
            status = "PASS" if r.failed == 0 else "FAIL"
            lines.append(f"{status} {r.name}: {r.passed}/{r.checked} "
                         f"({r.skipped} not applicable)")
            if r.counterexample:
                lines.append(f"     shrunk counterexample: {r.counterexample[0]}")
                lines.append(f"                            {r.counterexample[1]}")
        return "\n".join(lines)


def run_suites(config: GeneratorConfig,
               properties: dict[str, Callable] | None = None) -> SuiteReport:
    properties = properties or PROPERTIES
    pairs = generate_pairs(config)
    report = SuiteReport(config)
    for name, prop in properties.items():
        res = PropertyResult(name)
        first_fail = None
        for a, b in pairs:
            outcome = _holds(prop, a, b)
            if outcome is None:
                res.skipped += 1
                continue
            res.checked += 1
            if outcome:
                res.passed += 1
            elif first_fail is None:
                first_fail = (a, b)
        if first_fail is not None:
            sa, sb = shrink_pair(*first_fail, fails=lambda x, y: _holds(prop, x, y) is False)
            res.counterexample = (render_expr(sa), render_expr(sb))
            res.original = (render_expr(first_fail[0]), render_expr(first_fail[1]))
        report.results.append(res)
    return report
