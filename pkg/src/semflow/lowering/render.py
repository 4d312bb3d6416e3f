"""Renders a lowering template against a graph.

Query results come from the deterministic match engine, so rendering is
byte-identical across runs and across triple insertion orders.
"""

from __future__ import annotations

import json

from semflow.lowering.model import ForNode, InterpNode, LoweringTemplate, Node, RenderedOutput, TextNode
from semflow.rdf.graph import Graph
from semflow.rdf.query import match
from semflow.rdf.terms import Term


def _escape_json(value: str) -> str:
    return json.dumps(value, ensure_ascii=False)[1:-1]


def _escape_csv(value: str) -> str:
    if any(c in value for c in ',"\r\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def render(template: LoweringTemplate, graph: Graph) -> RenderedOutput:
    results = {name: match(graph, q) for name, q in template.queries.items()}
    escape = _escape_json if template.output_format == "json" else _escape_csv
    out: list[str] = []

    def emit(nodes: tuple[Node, ...], scope: dict[str, dict[str, Term]]) -> None:
        for node in nodes:
            if isinstance(node, TextNode):
                out.append(node.text)
            elif isinstance(node, InterpNode):
                value = scope[node.loop_var][node.query_var].value
                out.append(value if node.raw else escape(value))
            else:
                rows = results[node.query_name]
                for idx, row in enumerate(rows):
                    if idx:
                        out.append(node.separator)
                    emit(node.body, {**scope, node.var: row})

    emit(template.body, {})
    return RenderedOutput("".join(out), template.output_format)
