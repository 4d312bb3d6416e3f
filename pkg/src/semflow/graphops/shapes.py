"""Shape validation: per-class cardinality, datatype and node-kind checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from semflow.errors import MappingSyntaxError
from semflow.lifting.parser import DEFAULT_PREFIXES, expand_iri
from semflow.rdf.graph import Graph
from semflow.rdf.terms import iri


@dataclass(frozen=True)
class Constraint:
    predicate: str
    min_count: int = 0
    max_count: int | None = None
    datatype: str | None = None
    node_kind: str | None = None  # "iri" | "literal"

    def __post_init__(self):
        if self.max_count is not None and self.min_count > self.max_count:
            raise ValueError(f"minCount {self.min_count} exceeds maxCount {self.max_count}")


@dataclass(frozen=True)
class Shape:
    target_class: str
    constraints: tuple[Constraint, ...]


@dataclass(frozen=True)
class Violation:
    focus_node: str
    predicate: str
    kind: str  # MinCount | MaxCount | Datatype | NodeKind
    message: str


@dataclass
class ValidationReport:
    conforms: bool
    violations: list[Violation] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "conforms": self.conforms,
                "violations": [
                    {
                        "focusNode": v.focus_node,
                        "predicate": v.predicate,
                        "constraintKind": v.kind,
                        "message": v.message,
                    }
                    for v in self.violations
                ],
            },
            indent=2,
        )


def validate(graph: Graph, shapes: list[Shape]) -> ValidationReport:
    violations: list[Violation] = []
    for shape in shapes:
        instances = graph.subjects_of_type(iri(shape.target_class))
        for node in instances:
            for c in shape.constraints:
                values = graph.objects(node, iri(c.predicate))
                if len(values) < c.min_count:
                    violations.append(Violation(
                        node.value, c.predicate, "MinCount",
                        f"{node.value} has {len(values)} value(s) for {c.predicate}, needs at least {c.min_count}",
                    ))
                if c.max_count is not None and len(values) > c.max_count:
                    violations.append(Violation(
                        node.value, c.predicate, "MaxCount",
                        f"{node.value} has {len(values)} value(s) for {c.predicate}, allows at most {c.max_count}",
                    ))
                for value in values:
                    if c.node_kind is not None and value.kind != c.node_kind:
                        violations.append(Violation(
                            node.value, c.predicate, "NodeKind",
                            f"value of {c.predicate} on {node.value} must be a {c.node_kind}",
                        ))
                    if c.datatype is not None and (not value.is_literal or value.datatype != c.datatype):
                        violations.append(Violation(
                            node.value, c.predicate, "Datatype",
                            f"value of {c.predicate} on {node.value} must be a literal of type {c.datatype}",
                        ))
    violations.sort(key=lambda v: (v.focus_node, v.predicate, v.kind, v.message))
    return ValidationReport(conforms=not violations, violations=violations)


def load_shapes(document: str | bytes) -> list[Shape]:
    """Shapes file: {"prefixes": {...}, "shapes": [...]} or a bare list."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MappingSyntaxError(f"shapes file is not valid JSON: {exc}") from exc
    if isinstance(doc, list):
        prefixes, shape_docs = dict(DEFAULT_PREFIXES), doc
    elif isinstance(doc, dict):
        prefixes = dict(DEFAULT_PREFIXES)
        prefixes.update(doc.get("prefixes", {}))
        shape_docs = doc.get("shapes", [])
    else:
        raise MappingSyntaxError("shapes file must be a list or an object")

    shapes = []
    for sdoc in shape_docs:
        if "targetClass" not in sdoc:
            raise MappingSyntaxError("shape needs a targetClass")
        constraints = []
        for cdoc in sdoc.get("constraints", []):
            if "predicate" not in cdoc:
                raise MappingSyntaxError("constraint needs a predicate")
            datatype = cdoc.get("datatype")
            constraints.append(Constraint(
                predicate=expand_iri(cdoc["predicate"], prefixes),
                min_count=cdoc.get("minCount", 0),
                max_count=cdoc.get("maxCount"),
                datatype=expand_iri(datatype, prefixes) if datatype else None,
                node_kind=cdoc.get("nodeKind"),
            ))
        shapes.append(Shape(expand_iri(sdoc["targetClass"], prefixes), tuple(constraints)))
    return shapes
