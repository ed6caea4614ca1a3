"""S-expression front end.

    program := (def NAME expr)* query*
    expr    := NAME | (k) | (field NAT)
             | (af :tdeg NAT :dim NAT [:maximal (:ht NAT :res-tdeg NAT [:unique])])
             | (poly expr NAT) | (pullback :T expr :D expr)
    query   := (invariants e) | (dim e) | (vdim e) | (jaffard e)
             | (tensor-dim e e) | (tensor-vdim e e) | (tensor-jaffard e e)
             | (alphas e e) | (raw-pullback-pair e e)

``raw-thm19`` is accepted as a synonym of ``raw-pullback-pair``.

Names are bound by value: a definition is substituted wherever it is used.
``;`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .model import (
    AFLeaf, AlgebraExpr, BaseK, DimCalcError, FieldLeaf, MaximalIdealData,
    PolyExt, Pullback,
)

QUERY_ARITY = {
    "invariants": 1, "dim": 1, "vdim": 1, "jaffard": 1,
    "tensor-dim": 2, "tensor-vdim": 2, "tensor-jaffard": 2, "alphas": 2,
    "raw-pullback-pair": 2, "raw-thm19": 2,
}
QUERY_SYNONYMS = {"raw-thm19": "raw-pullback-pair"}
EXPR_HEADS = ("k", "field", "af", "poly", "pullback")


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class DslError(DimCalcError):
    def __init__(self, message: str, span: Span | None = None):
        self.span = span
        where = f"{span}: " if span else ""
        super().__init__(where + message)


class DslSyntaxError(DslError):
    def __init__(self, message: str, span: Span | None, expected: tuple[str, ...] = ()):
        self.expected = expected
        if expected:
            message += " (expected " + " | ".join(expected) + ")"
        super().__init__(message, span)


class UnboundName(DslError):
    pass


@dataclass(frozen=True)
class Definition:
    name: str
    expr: AlgebraExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Query:
    kind: str
    args: tuple[AlgebraExpr, ...]
    source: str = field(default="", compare=False)
    span: Span | None = field(default=None, compare=False)
    arg_spans: tuple[Span, ...] = field(default=(), compare=False)


Statement = Union[Definition, Query]


@dataclass(frozen=True)
class SourceProgram:
    statements: tuple[Statement, ...]

    @property
    def definitions(self) -> list[Definition]:
        return [s for s in self.statements if isinstance(s, Definition)]

    @property
    def queries(self) -> list[Query]:
        return [s for s in self.statements if isinstance(s, Query)]


# --------------------------------------------------------------------------
# reader: text -> nested lists of atoms
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<comment>;[^\n]*)|(?P<open>\()|(?P<close>\))"
                    r"|(?P<atom>[^\s();]+)")


@dataclass
class Atom:
    text: str
    span: Span


@dataclass
class SList:
    items: list
    span: Span
    source: str = ""


def _tokens(text: str):
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        kind, tok = m.lastgroup, m.group()
        start = (line, col)
        for ch in tok:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
        if kind in ("ws", "comment"):
            continue
        yield kind, tok, Span(start[0], start[1], line, col), pos
    yield "eof", "", Span(line, col, line, col), pos


def read(text: str) -> list:
    """Read all top-level forms; each node keeps its source span."""
    stack: list[tuple[list, Span, int]] = []
    top: list = []
    offsets: dict[int, tuple[int, int]] = {}
    for kind, tok, span, end in _tokens(text):
        if kind == "open":
            stack.append(([], span, end - 1))
        elif kind == "close":
            if not stack:
                raise DslSyntaxError("unexpected ')'", span, ("(",))
            items, start, start_off = stack.pop()
            node = SList(items, Span(start.line, start.col, span.end_line, span.end_col))
            offsets[id(node)] = (start_off, end)
            (stack[-1][0] if stack else top).append(node)
        elif kind == "atom":
            (stack[-1][0] if stack else top).append(Atom(tok, span))
        else:
            if stack:
                raise DslSyntaxError("unexpected end of input", span, (")",))
    for node in top:
        if isinstance(node, SList):
            s, e = offsets[id(node)]
            node.source = " ".join(text[s:e].split())
    return top


# --------------------------------------------------------------------------
# parser: forms -> program
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self):
        self.env: dict[str, AlgebraExpr] = {}

    def nat(self, node, what: str, minimum: int = 0) -> int:
        if not isinstance(node, Atom) or not node.text.isdigit():
            raise DslSyntaxError(f"{what} must be a natural number", node.span, ("NAT",))
        v = int(node.text)
        if v < minimum:
            raise DslSyntaxError(f"{what} must be >= {minimum}, got {v}", node.span,
                                 (f"NAT >= {minimum}",))
        return v

    def keyword(self, items: list, i: int, kw: str, parent: SList):
        if i >= len(items):
            raise DslSyntaxError(f"missing {kw}", parent.span, (kw,))
        node = items[i]
        if not (isinstance(node, Atom) and node.text == kw):
            raise DslSyntaxError("unexpected token", node.span, (kw,))

    def expect_len(self, node: SList, n: int, expected: str):
        if len(node.items) != n:
            span = node.items[n].span if len(node.items) > n else node.span
            raise DslSyntaxError(f"wrong number of items in ({node.items[0].text} ...)",
                                 span, (expected,))

    def expr(self, node) -> AlgebraExpr:
        if isinstance(node, Atom):
            if node.text.isdigit() or node.text.startswith(":"):
                raise DslSyntaxError("unexpected token", node.span, ("NAME", "("))
            if node.text not in self.env:
                raise UnboundName(f"unbound name {node.text!r}", node.span)
            return self.env[node.text]
        if not node.items or not isinstance(node.items[0], Atom):
            raise DslSyntaxError("empty or malformed expression", node.span, EXPR_HEADS)
        head, items = node.items[0].text, node.items
        if head == "k":
            self.expect_len(node, 1, ")")
            return BaseK()
        if head == "field":
            self.expect_len(node, 2, ")")
            return FieldLeaf(self.nat(items[1], "field tdeg"))
        if head == "af":
            return self.af(node)
        if head == "poly":
            self.expect_len(node, 3, ")")
            return PolyExt(self.expr(items[1]), self.nat(items[2], "number of variables", 1))
        if head == "pullback":
            self.expect_len(node, 5, ")")
            self.keyword(items, 1, ":T", node)
            self.keyword(items, 3, ":D", node)
            return Pullback(self.expr(items[2]), self.expr(items[4]))
        raise DslSyntaxError(f"unknown constructor {head!r}", items[0].span, EXPR_HEADS)

    def af(self, node: SList) -> AFLeaf:
        items = node.items
        if len(items) not in (5, 7):
            self.expect_len(node, 5, ":maximal or )")
        self.keyword(items, 1, ":tdeg", node)
        t = self.nat(items[2], "tdeg")
        self.keyword(items, 3, ":dim", node)
        d = self.nat(items[4], "dim")
        if len(items) == 5:
            return AFLeaf(t, d)
        self.keyword(items, 5, ":maximal", node)
        m = items[6]
        if not isinstance(m, SList) or len(m.items) not in (4, 5):
            raise DslSyntaxError("malformed maximal ideal", m.span,
                                 ("(:ht NAT :res-tdeg NAT [:unique])",))
        self.keyword(m.items, 0, ":ht", m)
        ht = self.nat(m.items[1], "height")
        self.keyword(m.items, 2, ":res-tdeg", m)
        res = self.nat(m.items[3], "residue tdeg")
        unique = False
        if len(m.items) == 5:
            self.keyword(m.items, 4, ":unique", m)
            unique = True
        return AFLeaf(t, d, MaximalIdealData(ht, res, unique))

    def statement(self, node) -> Statement:
        if not isinstance(node, SList) or not node.items or not isinstance(node.items[0], Atom):
            raise DslSyntaxError("expected a definition or a query", node.span,
                                 ("(def", *(f"({q}" for q in QUERY_ARITY)))
        head = node.items[0].text
        if head == "def":
            self.expect_len(node, 3, ")")
            name_node = node.items[1]
            if (not isinstance(name_node, Atom) or name_node.text.isdigit()
                    or name_node.text.startswith(":") or name_node.text in EXPR_HEADS):
                raise DslSyntaxError("bad definition name", name_node.span, ("NAME",))
            if name_node.text in self.env:
                raise DslError(f"redefinition of {name_node.text!r}", name_node.span)
            e = self.expr(node.items[2])
            self.env[name_node.text] = e
            return Definition(name_node.text, e, node.span)
        if head in QUERY_ARITY:
            self.expect_len(node, 1 + QUERY_ARITY[head], ")")
            args = tuple(self.expr(a) for a in node.items[1:])
            return Query(QUERY_SYNONYMS.get(head, head), args, node.source, node.span,
                         tuple(a.span for a in node.items[1:]))
        if head in EXPR_HEADS:
            # surface errors inside the term before complaining about its position
            self.expr(node)
            raise DslSyntaxError("a bare expression is not a statement", node.span,
                                 tuple(f"({q} ...)" for q in QUERY_ARITY))
        raise DslSyntaxError(f"unknown statement {head!r}", node.items[0].span,
                             ("def", *QUERY_ARITY))


def parse(text: str) -> SourceProgram:
    p = _Parser()
    return SourceProgram(tuple(p.statement(f) for f in read(text)))


# --------------------------------------------------------------------------
# rendering back to text
# --------------------------------------------------------------------------


def render_expr(e: AlgebraExpr) -> str:
    if isinstance(e, BaseK):
        return "(k)"
    if isinstance(e, FieldLeaf):
        return f"(field {e.tdeg})"
    if isinstance(e, AFLeaf):
        s = f"(af :tdeg {e.tdeg} :dim {e.dim}"
        if e.maximal is not None:
            m = e.maximal
            s += f" :maximal (:ht {m.height} :res-tdeg {m.residue_tdeg}"
            s += " :unique)" if m.unique else ")"
        return s + ")"
    if isinstance(e, PolyExt):
        return f"(poly {render_expr(e.base)} {e.n})"
    if isinstance(e, Pullback):
        return f"(pullback :T {render_expr(e.T)} :D {render_expr(e.D)})"
    raise TypeError(f"not an algebra term: {e!r}")


def render(program: SourceProgram) -> str:
    lines = []
    for st in program.statements:
        if isinstance(st, Definition):
            lines.append(f"(def {st.name} {render_expr(st.expr)})")
        else:
            lines.append(f"({st.kind} " + " ".join(render_expr(a) for a in st.args) + ")")
    return "\n".join(lines) + "\n"
