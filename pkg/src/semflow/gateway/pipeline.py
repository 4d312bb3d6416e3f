"""Pipeline specs (lift -> graph ops -> lower) and their runner.

Steps operate on a stack of graphs: each lift pushes a graph, binary ops
(union/fuse) pop the two most recent (the earlier one is the left/
canonical side), unary ops transform the top, and the final lower step
renders the top graph. Request-scoped temporal/bbox filters are applied
to the top graph just before lowering.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Union

from semflow.errors import MappingSyntaxError, PipelineError
from semflow.graphops import BBox, LinkSpec, filter_bbox, filter_temporal, fuse, union, validate
from semflow.graphops.shapes import Shape, load_shapes
from semflow.lifting.engine import lift
from semflow.lifting.parser import DEFAULT_PREFIXES, expand_iri
from semflow.lowering.model import RenderedOutput
from semflow.lowering.render import render
from semflow.rdf.graph import Graph


@dataclass(frozen=True)
class LiftStep:
    mapping_id: str
    sources: dict[str, str]  # mapping source name -> "upstream" | "<cli name>" | "file:<path>"


@dataclass(frozen=True)
class GraphOpStep:
    op: str
    args: dict


@dataclass(frozen=True)
class LowerStep:
    template_id: str


Step = Union[LiftStep, GraphOpStep, LowerStep]

_GRAPH_OPS = {"union", "fuse", "validate", "filterTemporal", "filterBBox"}


@dataclass
class PipelineSpec:
    id: str
    steps: list[Step]
    prefixes: dict[str, str] = field(default_factory=dict)

    @property
    def lower_template_id(self) -> str | None:
        for step in self.steps:
            if isinstance(step, LowerStep):
                return step.template_id
        return None


def parse_pipeline(document: str | bytes, pipeline_id: str | None = None) -> PipelineSpec:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MappingSyntaxError(f"pipeline spec is not valid JSON: {exc}") from exc

    prefixes = dict(DEFAULT_PREFIXES)
    prefixes.update(doc.get("prefixes", {}))

    steps: list[Step] = []
    for i, sdoc in enumerate(doc.get("steps", [])):
        keys = [k for k in ("lift", "graphOp", "lower") if k in sdoc]
        if len(keys) != 1:
            raise MappingSyntaxError(f"step {i}: exactly one of lift/graphOp/lower required")
        kind = keys[0]
        body = sdoc[kind]
        if kind == "lift":
            if "mapping" not in body or "sources" not in body:
                raise MappingSyntaxError(f"step {i}: lift needs mapping and sources")
            steps.append(LiftStep(body["mapping"], dict(body["sources"])))
        elif kind == "graphOp":
            op = body.get("op")
            if op not in _GRAPH_OPS:
                raise MappingSyntaxError(f"step {i}: unknown graph op {op!r}")
            args = {k: v for k, v in body.items() if k != "op"}
            for key in ("predicate", "latPredicate", "lonPredicate",
                        "classA", "keyPropA", "classB", "keyPropB"):
                if key in args:
                    args[key] = expand_iri(args[key], prefixes)
            steps.append(GraphOpStep(op, args))
        else:
            template_id = body["template"] if isinstance(body, dict) else body
            steps.append(LowerStep(template_id))

    lower_positions = [i for i, s in enumerate(steps) if isinstance(s, LowerStep)]
    if len(lower_positions) > 1:
        raise MappingSyntaxError("a pipeline may have at most one lower step")
    if lower_positions and lower_positions[0] != len(steps) - 1:
        raise MappingSyntaxError("the lower step must be last")
    if steps and isinstance(steps[0], LowerStep):
        raise MappingSyntaxError("a pipeline cannot start with a lower step")

    return PipelineSpec(id=doc.get("id", pipeline_id or "pipeline"), steps=steps, prefixes=prefixes)


@dataclass
class ExtraFilter:
    """Request-scoped filter applied just before lowering."""
    op: str  # filterTemporal | filterBBox
    args: dict


@dataclass
class PipelineResult:
    graph: Graph
    output: RenderedOutput | None
    millis: float


def _apply_graph_op(op: str, args: dict, stack: list[Graph], registry) -> None:
    if op in ("union", "fuse"):
        if len(stack) < 2:
            raise ValueError(f"{op} needs two graphs on the stack, have {len(stack)}")
        right = stack.pop()
        left = stack.pop()
        if op == "union":
            stack.append(union(left, right))
        else:
            spec = LinkSpec(args["classA"], args["keyPropA"], args["classB"], args["keyPropB"])
            stack.append(fuse(left, right, spec))
        return
    if not stack:
        raise ValueError(f"{op} needs a graph on the stack")
    top = stack.pop()
    if op == "validate":
        shapes = _resolve_shapes(args, registry)
        report = validate(top, shapes)
        if not report.conforms:
            first = report.violations[0]
            raise ValueError(
                f"graph fails validation with {len(report.violations)} violation(s); "
                f"first: {first.kind} on {first.focus_node} / {first.predicate}")
        stack.append(top)
    elif op == "filterTemporal":
        stack.append(filter_temporal(
            top, args["predicate"],
            args.get("from", "0001-01-01T00:00:00Z"),
            args.get("to", "9999-12-31T23:59:59Z")))
    elif op == "filterBBox":
        bbox_values = args["bbox"]
        if isinstance(bbox_values, str):
            bbox_values = [float(x) for x in bbox_values.split(",")]
        stack.append(filter_bbox(
            top, args["latPredicate"], args["lonPredicate"], BBox(*bbox_values)))
    else:
        raise ValueError(f"unknown graph op {op!r}")


def _resolve_shapes(args: dict, registry) -> list[Shape]:
    ref = args.get("shapes")
    if isinstance(ref, str) and ref.startswith("file:"):
        return load_shapes(registry.read_data_file(ref[len("file:"):]))
    if isinstance(ref, (list, dict)):
        return load_shapes(json.dumps(ref))
    raise ValueError("validate needs shapes: 'file:<path>' or an inline shapes object")


def run_pipeline(
    spec: PipelineSpec,
    sources: dict[str, bytes],
    registry,
    extra_filters: list[ExtraFilter] | tuple[ExtraFilter, ...] = (),
    lower_override: str | None = None,
) -> PipelineResult:
    """Run lift + graph ops + lower; millis covers exactly that work."""
    started = time.perf_counter()
    stack: list[Graph] = []
    lower_template_id = lower_override or spec.lower_template_id

    for i, step in enumerate(spec.steps):
        if isinstance(step, LiftStep):
            label = f"step {i} (lift {step.mapping_id})"
            try:
                mapping = registry.mapping(step.mapping_id)
                source_bytes: dict[str, bytes] = {}
                for mapping_name, ref in step.sources.items():
                    if ref.startswith("file:"):
                        source_bytes[mapping_name] = registry.read_data_file(ref[len("file:"):])
                    elif ref in sources:
                        source_bytes[mapping_name] = sources[ref]
                    else:
                        raise ValueError(f"no bytes supplied for pipeline source {ref!r}")
                stack.append(lift(mapping, source_bytes, registry.lookups.get(step.mapping_id, [])))
            except Exception as exc:
                raise PipelineError(label, str(exc)) from exc
        elif isinstance(step, GraphOpStep):
            label = f"step {i} (graphOp {step.op})"
            try:
                _apply_graph_op(step.op, step.args, stack, registry)
            except Exception as exc:
                raise PipelineError(label, str(exc)) from exc
        # LowerStep handled after filters

    if not stack:
        raise PipelineError("pipeline", "no graph produced (pipeline has no lift step?)")

    for ef in extra_filters:
        label = f"request filter ({ef.op})"
        try:
            _apply_graph_op(ef.op, ef.args, stack, registry)
        except Exception as exc:
            raise PipelineError(label, str(exc)) from exc

    graph = stack[-1]
    output = None
    if lower_template_id is not None:
        label = f"lower ({lower_template_id})"
        try:
            output = render(registry.template(lower_template_id), graph)
        except Exception as exc:
            raise PipelineError(label, str(exc)) from exc

    millis = (time.perf_counter() - started) * 1000.0
    return PipelineResult(graph=graph, output=output, millis=millis)
