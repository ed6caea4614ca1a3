import pytest
from hypothesis import given, strategies as st

from dimcalc.catalog import DVR_OVER_SUBFIELD
from dimcalc.dsl import (
    QUERY_ARITY, Definition, DslError, DslSyntaxError, Query, UnboundName,
    parse, render, render_expr,
)
from dimcalc.model import BaseK, FieldLeaf, PolyExt
from strategies import terms

DVR_DEF = ("(def R1 (pullback :T (af :tdeg 3 :dim 1 :maximal (:ht 1 :res-tdeg 2 :unique)) "
           ":D (field 1))) (tensor-dim R1 R1)")


def test_definition_and_query():
    prog = parse(DVR_DEF)
    assert prog.definitions == [Definition("R1", DVR_OVER_SUBFIELD)]
    assert prog.queries == [Query("tensor-dim", (DVR_OVER_SUBFIELD, DVR_OVER_SUBFIELD))]


def test_names_bound_by_value():
    [q] = parse(DVR_DEF).queries
    assert q.args[0] is q.args[1] or q.args[0] == q.args[1]


def test_base_field_query():
    assert parse("(dim (k))").queries == [Query("dim", (BaseK(),))]


def test_poly_zero_is_syntax_error():
    with pytest.raises(DslSyntaxError) as exc:
        parse("(poly (field 2) 0)")
    err = exc.value
    assert (err.span.line, err.span.col) == (1, 17)
    assert ">= 1" in str(err)


def test_poly_zero_inside_query_reports_position():
    with pytest.raises(DslSyntaxError) as exc:
        parse("(def A (field 2))\n(dim (poly A 0))")
    assert (exc.value.span.line, exc.value.span.col) == (2, 14)
    assert exc.value.expected == ("NAT >= 1",)


def test_unbound_name_has_span():
    with pytest.raises(UnboundName) as exc:
        parse("(dim\n   X)")
    assert (exc.value.span.line, exc.value.span.col) == (2, 4)


def test_expected_token_set():
    with pytest.raises(DslSyntaxError) as exc:
        parse("(dim (pullback :T (k) :E (k)))")
    assert exc.value.expected == (":D",)
    with pytest.raises(DslSyntaxError) as exc:
        parse("(dim (ring 2))")
    assert "field" in exc.value.expected


@pytest.mark.parametrize("text", ["(dim (k)", ")", "(dim (k) (k))", "(frobnicate (k))",
                                  "(dim (field -1))", "(dim (af :tdeg 2 :dim 1 :maximal (:ht 1)))"])
def test_malformed(text):
    with pytest.raises(DslSyntaxError):
        parse(text)


def test_redefinition():
    with pytest.raises(DslError):
        parse("(def A (k)) (def A (field 1))")


def test_comments_and_whitespace():
    a = parse("; header\n(dim   (poly\n (field 1) 2)) ; trailing")
    assert a.queries[0].args == (PolyExt(FieldLeaf(1), 2),)
    assert a.queries[0].source == "(dim (poly (field 1) 2))"


@given(terms())
def test_expression_round_trip(e):
    assert parse(f"(dim {render_expr(e)})").queries[0].args == (e,)


@given(st.lists(terms(), min_size=1, max_size=3), st.data())
def test_program_round_trip(defs, data):
    names = [f"A{i}" for i in range(len(defs))]
    lines = [f"(def {n} {render_expr(e)})" for n, e in zip(names, defs)]
    kind = data.draw(st.sampled_from(sorted(QUERY_ARITY)))
    args = data.draw(st.lists(st.sampled_from(names), min_size=QUERY_ARITY[kind],
                              max_size=QUERY_ARITY[kind]))
    lines.append(f"({kind} {' '.join(args)})")
    prog = parse("\n".join(lines))
    assert parse(render(prog)) == prog
