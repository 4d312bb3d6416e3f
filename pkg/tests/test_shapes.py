"""Shape validation over typed instances."""

import json

import pytest

from semflow.graphops import load_shapes, validate
from semflow.graphops.shapes import Constraint, Shape
from semflow.rdf import RDF_TYPE, XSD_INTEGER, XSD_STRING, Graph, Triple, iri, literal

EX = "http://example.org/"
DET = EX + "TrafficDetector"

SHAPES = [Shape(DET, (
    Constraint(EX + "flow", min_count=1, datatype=XSD_INTEGER),
    Constraint(EX + "id", min_count=1, max_count=1, node_kind="literal"),
))]


def detector(node, flow=None, ids=("A",), flow_datatype=XSD_INTEGER):
    triples = [Triple(iri(EX + node), iri(RDF_TYPE), iri(DET))]
    for i in ids:
        triples.append(Triple(iri(EX + node), iri(EX + "id"), literal(i)))
    if flow is not None:
        triples.append(Triple(iri(EX + node), iri(EX + "flow"), literal(flow, flow_datatype)))
    return triples


def test_empty_graph_conforms():
    report = validate(Graph(), SHAPES)
    assert report.conforms and report.violations == []


def test_missing_required_property_names_the_node():
    report = validate(Graph(detector("d1", flow=None)), SHAPES)
    assert not report.conforms
    (violation,) = report.violations
    assert violation.kind == "MinCount"
    assert violation.focus_node == EX + "d1"
    assert violation.predicate == EX + "flow"


def test_wrong_datatype_is_reported():
    report = validate(Graph(detector("d1", flow="10", flow_datatype=XSD_STRING)), SHAPES)
    kinds = {v.kind for v in report.violations}
    assert kinds == {"Datatype"}


def test_max_count_and_node_kind():
    report = validate(Graph(detector("d1", flow="10", ids=("A", "B"))), SHAPES)
    assert {v.kind for v in report.violations} == {"MaxCount"}
    g = Graph(detector("d1", flow="10", ids=()))
    g.add(Triple(iri(EX + "d1"), iri(EX + "id"), iri(EX + "not-a-literal")))
    report = validate(g, SHAPES)
    assert {v.kind for v in report.violations} == {"NodeKind"}


def test_untyped_nodes_are_not_checked():
    g = Graph([Triple(iri(EX + "thing"), iri(EX + "id"), literal("A"))])
    assert validate(g, SHAPES).conforms


def test_violations_accumulate_monotonically_without_maxcount():
    shapes = [Shape(DET, (Constraint(EX + "flow", min_count=1, datatype=XSD_INTEGER),))]
    g = Graph(detector("d1", flow=None))
    before = validate(g, shapes).violations
    extra = Graph(detector("d2", flow="5"))
    combined = Graph(list(g) + list(extra))
    after = validate(combined, shapes).violations
    assert set(before) <= set(after)


def test_load_shapes_with_prefixes_and_report_json():
    doc = {
        "prefixes": {"e": EX},
        "shapes": [{
            "targetClass": "e:TrafficDetector",
            "constraints": [{"predicate": "e:flow", "minCount": 1, "datatype": "xsd:integer"}],
        }],
    }
    shapes = load_shapes(json.dumps(doc))
    assert shapes[0].target_class == DET
    report = validate(Graph(detector("d1", flow=None)), shapes)
    parsed = json.loads(report.to_json())
    assert parsed["conforms"] is False
    assert parsed["violations"][0]["constraintKind"] == "MinCount"


def test_constraint_bounds_are_checked():
    with pytest.raises(ValueError):
        Constraint(EX + "p", min_count=2, max_count=1)
