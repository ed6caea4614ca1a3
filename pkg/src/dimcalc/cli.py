"""Command line: ``dimcalc eval FILE`` and ``dimcalc check``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Optional

from .invariants import (
    af_status, invariants, jaffard_status, krull_dim, krull_dim_traced,
    valuative_dim, valuative_dim_traced,
)
from . import tensor
from .dsl import DslError, Query, SourceProgram, parse
from .model import (
    DimCalcError, InternalConsistencyError, validate,
)
from .trace import Trace, value_to_json, value_to_text

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


@dataclass
class QueryResult:
    query: Query
    value: Any
    trace: Trace

    @property
    def rule(self) -> str:
        return self.trace.rule

    def to_json(self) -> dict:
        return {
            "query": self.query.source,
            "value": value_to_json(self.value),
            "rule": self.rule,
            "hypothesisChecks": [{"condition": c.condition, "passed": c.passed}
                                 for c in self.trace.checks],
            "trace": self.trace.to_json(),
        }

    def summary(self) -> str:
        return f"{self.query.source} = {value_to_text(self.value)} [{self.rule}]"


class QueryError(DimCalcError):
    def __init__(self, message: str, query: Query):
        self.query = query
        super().__init__(f"{query.span}: {query.source}: {message}")


def _bundle_trace(e) -> Trace:
    b = invariants(e)
    k, v = krull_dim_traced(e), valuative_dim_traced(e)
    notes = (f"tdeg {b.tdeg}, dim {b.krull_dim}, vdim {b.valuative_dim}, "
             f"AF {b.is_af}, Jaffard {b.is_jaffard}",)
    return Trace("invariants", b, children=(k, v), notes=notes)


def run_query(q: Query) -> QueryResult:
    for arg, span in zip(q.args, q.arg_spans or (None,) * len(q.args)):
        problems = validate(arg)
        if problems:
            where = f" at {span}" if span else ""
            raise QueryError(f"invalid construction{where}: "
                             + "; ".join(map(str, problems)), q)
    a = q.args
    try:
        if q.kind == "invariants":
            t = _bundle_trace(a[0])
        elif q.kind == "dim":
            t = krull_dim_traced(a[0])
        elif q.kind == "vdim":
            t = valuative_dim_traced(a[0])
        elif q.kind == "jaffard":
            k, v = krull_dim(a[0]), valuative_dim(a[0])
            t = Trace("jaffard", jaffard_status(a[0]),
                      notes=(f"AF {af_status(a[0])}, dim {k}, vdim {v}",))
        elif q.kind == "tensor-dim":
            t = tensor.tensor_krull_dim(*a)
        elif q.kind == "tensor-vdim":
            t = tensor.tensor_valuative_dim(*a)
        elif q.kind == "tensor-jaffard":
            t = tensor.tensor_jaffard(*a)
        elif q.kind == "alphas":
            vals = tensor.alpha_values(*a)
            t = Trace("alphas", vals, notes=("alpha1, alpha2, alpha3",))
        elif q.kind == "raw-pullback-pair":
            t = tensor.raw_pullback_pair_formula(*a)
        else:
            raise QueryError(f"unknown query kind {q.kind!r}", q)
    except InternalConsistencyError:
        raise
    except (DslError, QueryError):
        raise
    except DimCalcError as exc:
        raise QueryError(f"{type(exc).__name__}: {exc}", q) from exc
    return QueryResult(q, t.value, t)


def execute(program: SourceProgram) -> list[QueryResult]:
    for d in program.definitions:
        problems = validate(d.expr)
        if problems:
            raise DslError(f"invalid construction for {d.name!r}: "
                           + "; ".join(map(str, problems)), d.span)
    return [run_query(q) for q in program.queries]


def format_report(results: list[QueryResult], as_json: bool, with_trace: bool) -> str:
    out = []
    for r in results:
        if as_json:
            out.append(json.dumps(r.to_json()))
        else:
            out.append(r.summary())
            if with_trace:
                out.append(r.trace.render(1))
    return "\n".join(out) + ("\n" if out else "")


def cmd_eval(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"dimcalc: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        results = execute(parse(text))
    except InternalConsistencyError as exc:
        print(f"{args.file}: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DimCalcError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(format_report(results, args.json, args.trace))
    return EXIT_OK


def cmd_check(args) -> int:
    from .harness import GeneratorConfig, run_suites

    cfg = GeneratorConfig(max_depth=args.depth, max_tdeg=args.max_tdeg,
                          seed=args.seed, count=args.count)
    report = run_suites(cfg)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.render())
    return EXIT_OK if report.ok else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dimcalc",
                                description="Dimension calculus for k-algebras built from pullbacks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate the queries in a program file")
    e.add_argument("file")
    e.add_argument("--json", action="store_true", help="one JSON object per query")
    e.add_argument("--trace", action="store_true", help="print full derivation trees")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="run the randomized consistency suites")
    c.add_argument("--seed", type=int, default=42)
    c.add_argument("--count", type=int, default=1000)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--max-tdeg", type=int, default=8)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
