"""Lowering template grammar and static validation."""

from pathlib import Path

import pytest

from semflow.errors import TemplateSyntaxError, UnboundTemplateVariable, UnknownQuery
from semflow.lowering import ForNode, InterpNode, TextNode, parse_template

FIXTURE = Path(__file__).resolve().parent / "fixtures" / "lowering" / "detector.lot"

MINIMAL = '{% output json %}\n'


def count_nodes(body, kind):
    total = 0
    for node in body:
        if isinstance(node, kind):
            total += 1
        if isinstance(node, ForNode):
            total += count_nodes(node.body, kind)
    return total


def test_literal_only_template_is_one_chunk():
    tpl = parse_template(MINIMAL + "hello world")
    assert tpl.body == (TextNode("hello world"),)
    assert tpl.output_format == "json"


def test_first_line_must_declare_output():
    with pytest.raises(TemplateSyntaxError):
        parse_template("hello {% output json %}")
    with pytest.raises(TemplateSyntaxError):
        parse_template("{% output yaml %}\n")


def test_interpolation_outside_for_block_is_unbound():
    with pytest.raises(UnboundTemplateVariable):
        parse_template(MINIMAL + "${f}")


def test_demo_detector_template_shape():
    tpl = parse_template(FIXTURE.read_text())
    assert len(tpl.queries) == 1
    assert count_nodes(tpl.body, ForNode) == 1
    assert count_nodes(tpl.body, InterpNode) == 3


def test_for_block_must_name_declared_query():
    text = MINIMAL + '{% for d in ghost sep "," %}x{% end %}'
    with pytest.raises(UnknownQuery):
        parse_template(text)


def test_interpolation_must_use_loop_scope():
    text = (MINIMAL
            + '{% query q: ?d <http://e/p> ?v %}'
            + '{% for d in q sep "" %}${x.v}{% end %}')
    with pytest.raises(UnboundTemplateVariable):
        parse_template(text)
    text2 = (MINIMAL
             + '{% query q: ?d <http://e/p> ?v %}'
             + '{% for d in q sep "" %}${d.ghost}{% end %}')
    with pytest.raises(UnboundTemplateVariable):
        parse_template(text2)


def test_unterminated_for_block():
    text = (MINIMAL
            + '{% query q: ?d <http://e/p> ?v %}'
            + '{% for d in q sep "" %}x')
    with pytest.raises(TemplateSyntaxError):
        parse_template(text)


def test_query_after_body_is_rejected():
    text = MINIMAL + 'body{% query q: ?d <http://e/p> ?v %}'
    with pytest.raises(TemplateSyntaxError):
        parse_template(text)


def test_syntax_errors_carry_positions():
    with pytest.raises(TemplateSyntaxError) as err:
        parse_template(MINIMAL + "x\n{% bogus %}")
    assert err.value.line == 3  # output line, body line, then the bad tag
    assert err.value.col == 1


def test_query_grammar_filters_and_order():
    text = (MINIMAL
            + '{% query q: ?d <http://e/flow> ?f . ?d <http://e/city> "Rennes" '
            + 'filter ?f > 8 filter ?f != 99 order by ?f %}'
            + '{% for d in q sep "" %}${d.f}{% end %}')
    tpl = parse_template(text)
    q = tpl.queries["q"]
    assert len(q.patterns) == 2
    assert [(f.var, f.op, f.operand) for f in q.filters] == [("f", ">", "8"), ("f", "!=", "99")]
    assert q.order_by == "f"


def test_typed_literal_terms_in_patterns():
    text = (MINIMAL
            + '{% query q: ?d <http://e/flow> "10"^^<xsd:integer> %}'
            + '{% for d in q sep "" %}${d.d}{% end %}')
    tpl = parse_template(text)
    obj = tpl.queries["q"].patterns[0].object
    assert obj.datatype == "http://www.w3.org/2001/XMLSchema#integer"

def test_filter_variable_must_occur_in_patterns():
    from semflow.errors import UnboundVariable

    text = (MINIMAL
            + '{% query q: ?d <http://e/p> ?v filter ?ghost > 1 %}'
            + '{% for d in q sep "" %}${d.v}{% end %}')
    with pytest.raises(UnboundVariable):
        parse_template(text)
